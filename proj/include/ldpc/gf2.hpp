#pragma once

#include <cstdint>
#include <vector>

namespace ldpc {

// Dense binary matrix, bit-packed by rows (64 columns per word).
class Gf2Matrix {
public:
    Gf2Matrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const {
        return (words_[static_cast<size_t>(r) * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(int r, int c, bool v) {
        uint64_t& w = words_[static_cast<size_t>(r) * wpr_ + (c >> 6)];
        uint64_t m = 1ULL << (c & 63);
        if (v) w |= m; else w &= ~m;
    }

    void xor_row(int dst, int src);   // row[dst] ^= row[src]
    void swap_rows(int a, int b);

    bool row_is_zero(int r) const;
    bool operator==(const Gf2Matrix&) const = default;

private:
    int rows_, cols_, wpr_;           // wpr_: words per row
    std::vector<uint64_t> words_;
};

// Rank over GF(2) by Gaussian elimination (works on a copy).
int rank_gf2(Gf2Matrix m);

}  // namespace ldpc
