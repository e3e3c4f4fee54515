#pragma once

#include <limits>
#include <string>
#include <vector>

#include "ldpc/protograph.hpp"

namespace ldpc {

// Quasi-cyclic lift of a protograph: every 1-entry becomes a Z x Z circulant
// permutation (shift s maps check copy r to variable copy (r+s) mod Z),
// every 0-entry a zero block.
struct QcCode {
    Protograph base;
    int z = 1;
    std::vector<int> shifts;   // row-major over base entries; -1 on 0-entries

    int shift_at(int j, int i) const {
        return shifts[static_cast<size_t>(j) * base.cols() + i];
    }
    int lifted_rows() const { return base.rows() * z; }
    int lifted_cols() const { return base.cols() * z; }
};

// Binary parity-check matrix stored as sorted column indices per row.
struct SparseParityMatrix {
    int rows = 0, cols = 0;
    std::vector<std::vector<int>> row_cols;
};

// Progressive-edge-growth shift selection: edges are visited column by
// column; each edge takes the shift that maximizes the length of the
// shortest cycle it closes in the partial lifted graph (ties: smallest
// shift).  Deterministic for a fixed base and Z.
QcCode assign_shifts_peg(const Protograph& base, int z);

SparseParityMatrix expand(const QcCode& qc);

inline constexpr int kGirthInfinity = std::numeric_limits<int>::max();
inline constexpr int kGirthSearchCap = 12;

// Shortest cycle length.  Values up to cap are exact; cap+2 means "no cycle
// of length <= cap but the search was truncated"; kGirthInfinity means the
// graph was fully explored and is acyclic.
int girth(const SparseParityMatrix& h, int cap = kGirthSearchCap);
int girth(const Protograph& p, int cap = kGirthSearchCap);
// Same result as girth(expand(qc)) but only visits one lifted copy per base
// edge (circulant symmetry makes all copies equivalent).
int girth_qc(const QcCode& qc, int cap = kGirthSearchCap);

// Lifted bit i*z+r inherits the block of base variable node i.
BlockMapping expand_block_mapping(const BlockMapping& pi, int z);

// Text format: "ROWS COLS Z" then ROWS x COLS shift integers (-1 = zero block).
std::string format_qc(const QcCode& qc);
QcCode parse_qc(std::string_view text, const std::string& name);
QcCode load_qc(const std::string& path);
void save_qc(const QcCode& qc, const std::string& path);

}  // namespace ldpc
