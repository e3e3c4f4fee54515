#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldpc/protograph.hpp"
#include "ldpc/rng.hpp"

namespace ldpc {

enum class EntryStatus : uint8_t { Fixed0 = 0, Fixed1 = 1, Designable = 2 };

// Rate-1/2 protograph template with a frozen skeleton and a designable set.
// For n = 4q columns: info columns [0,q) (block 0) and [q,2q) (block 1),
// parity columns [2q,3q) (block 1) and [3q,4q) (block 0).  Row j targets
// variable node v_j through the fixed diagonal and anchors one opposite-block
// parity column; designable entries are restricted so every check can act as
// a (generalized) rootcheck for its target.
class ProtoTemplate {
public:
    int rows = 0, cols = 0, info_count = 0;
    std::vector<EntryStatus> status;            // row-major
    std::vector<std::pair<int, int>> designable;  // (row, col), row-major order
    BlockMapping mapping;
    std::vector<int> row_weight_rows;           // rows that need >= 1 designable 1

    EntryStatus status_at(int j, int i) const {
        return status[static_cast<size_t>(j) * cols + i];
    }
    // Index into the designable bit string, -1 if (j,i) is fixed.
    int designable_index(int j, int i) const;

    bool operator==(const ProtoTemplate&) const = default;
};

ProtoTemplate canonical_template(int n);   // n >= 8, divisible by 4

// Designable assignment over a template.  bits[d] belongs to designable[d].
struct Candidate {
    const ProtoTemplate* tmpl = nullptr;   // non-owning; caller keeps it alive
    std::vector<uint8_t> bits;

    bool operator==(const Candidate&) const = default;
};

Protograph instantiate(const Candidate& c);

// Ensures each constrained row has at least one designable 1.  With an rng
// the added entry is drawn uniformly, otherwise the first designable is used.
void repair_row_weight(Candidate& c, Rng* rng);

Candidate sample_family(const ProtoTemplate& t, double density, Rng& rng);

struct TemplateCheck {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Structural audit: fixed diagonal present, rows 0 and q are unconditional
// rootchecks, every possibly-set entry is opposite-block or an earlier
// same-block info column, constrained rows have designable entries.
TemplateCheck validate_structure(const ProtoTemplate& t);

// Column groups used by the genetic operators: 0 = block-0 info, 1 = block-1
// info, 2 = block-1 parity, 3 = block-0 parity.
int column_group(const ProtoTemplate& t, int col);
// Row group = fading block of the row's target variable node.
int row_group(const ProtoTemplate& t, int row);

// Text format: "ROWS COLS", rows of {0,1,?}, "PI ...", "RWROWS j1 j2 j3 j4".
std::string format_template(const ProtoTemplate& t);
ProtoTemplate parse_template(std::string_view text, const std::string& name);
ProtoTemplate load_template(const std::string& path);
void save_template(const ProtoTemplate& t, const std::string& path);

}  // namespace ldpc
