#include "ldpc/gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace ldpc {

Gf2Matrix::Gf2Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("Gf2Matrix: negative dimensions");
    wpr_ = (cols + 63) / 64;
    if (wpr_ == 0) wpr_ = 1;
    words_.assign(static_cast<size_t>(rows_) * wpr_, 0);
}

void Gf2Matrix::xor_row(int dst, int src) {
    uint64_t* d = &words_[static_cast<size_t>(dst) * wpr_];
    const uint64_t* s = &words_[static_cast<size_t>(src) * wpr_];
    for (int w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void Gf2Matrix::swap_rows(int a, int b) {
    if (a == b) return;
    uint64_t* ra = &words_[static_cast<size_t>(a) * wpr_];
    uint64_t* rb = &words_[static_cast<size_t>(b) * wpr_];
    for (int w = 0; w < wpr_; ++w) std::swap(ra[w], rb[w]);
}

bool Gf2Matrix::row_is_zero(int r) const {
    const uint64_t* row = &words_[static_cast<size_t>(r) * wpr_];
    for (int w = 0; w < wpr_; ++w)
        if (row[w]) return false;
    return true;
}

int rank_gf2(Gf2Matrix m) {
    int rank = 0;
    for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
        int pivot = -1;
        for (int r = rank; r < m.rows(); ++r)
            if (m.get(r, c)) { pivot = r; break; }
        if (pivot < 0) continue;
        m.swap_rows(rank, pivot);
        for (int r = 0; r < m.rows(); ++r)
            if (r != rank && m.get(r, c)) m.xor_row(r, rank);
        ++rank;
    }
    return rank;
}

}  // namespace ldpc
