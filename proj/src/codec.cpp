#include "ldpc/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldpc {

bool syndrome_zero(const TannerGraph& g, std::span<const uint8_t> word) {
    if (static_cast<int>(word.size()) != g.num_vn)
        throw std::invalid_argument("syndrome_zero: word length mismatch");
    for (int j = 0; j < g.num_cn; ++j) {
        unsigned parity = 0;
        for (int e : g.cn_edges[static_cast<size_t>(j)])
            parity ^= word[static_cast<size_t>(g.edges[static_cast<size_t>(e)].vn)];
        if (parity & 1u) return false;
    }
    return true;
}

MinSumDecoder::MinSumDecoder(TannerGraph g, DecoderConfig cfg)
    : g_(std::move(g)), cfg_(cfg) {
    if (cfg_.max_iterations < 1)
        throw std::invalid_argument("MinSumDecoder: max_iterations must be >= 1");
    if (cfg_.alpha <= 0.0 || cfg_.alpha > 1.0)
        throw std::invalid_argument("MinSumDecoder: alpha must be in (0, 1]");
    v2c_.resize(g_.edges.size());
    c2v_.assign(g_.edges.size(), 0.0);
    post_.resize(static_cast<size_t>(g_.num_vn));
    word_.resize(static_cast<size_t>(g_.num_vn));
}

DecodeResult MinSumDecoder::decode(std::span<const double> llr) {
    if (static_cast<int>(llr.size()) != g_.num_vn)
        throw std::invalid_argument("decode: LLR length mismatch");

    for (size_t e = 0; e < g_.edges.size(); ++e)
        v2c_[e] = llr[static_cast<size_t>(g_.edges[e].vn)];
    std::fill(c2v_.begin(), c2v_.end(), 0.0);

    int iter = 0;
    for (iter = 1; iter <= cfg_.max_iterations; ++iter) {
        // check pass: sign product and two smallest magnitudes give every
        // extrinsic output in one sweep
        for (int j = 0; j < g_.num_cn; ++j) {
            const auto& es = g_.cn_edges[static_cast<size_t>(j)];
            double min1 = std::numeric_limits<double>::infinity();
            double min2 = min1;
            int argmin = -1;
            unsigned neg = 0;
            for (int e : es) {
                double v = v2c_[static_cast<size_t>(e)];
                if (v < 0.0) neg ^= 1u;
                double mag = std::fabs(v);
                if (mag < min1) { min2 = min1; min1 = mag; argmin = e; }
                else if (mag < min2) min2 = mag;
            }
            for (int e : es) {
                double v = v2c_[static_cast<size_t>(e)];
                unsigned s = neg ^ (v < 0.0 ? 1u : 0u);
                double mag = (e == argmin) ? min2 : min1;
                c2v_[static_cast<size_t>(e)] = cfg_.alpha * (s ? -mag : mag);
            }
        }
        // variable pass
        for (int v = 0; v < g_.num_vn; ++v) {
            const auto& es = g_.vn_edges[static_cast<size_t>(v)];
            double total = llr[static_cast<size_t>(v)];
            for (int e : es) total += c2v_[static_cast<size_t>(e)];
            post_[static_cast<size_t>(v)] = total;
            for (int e : es)
                v2c_[static_cast<size_t>(e)] = total - c2v_[static_cast<size_t>(e)];
            word_[static_cast<size_t>(v)] = total < 0.0 ? 1 : 0;   // tie decides 0
        }
        if (cfg_.early_termination && syndrome_zero(g_, word_))
            return {word_, iter, true};
    }
    return {word_, cfg_.max_iterations, syndrome_zero(g_, word_)};
}

Encoder::Encoder(const SparseParityMatrix& h, int info_len) : h_(h), k_(info_len) {
    r_ = h.rows;
    int n = h.cols;
    if (k_ < 1 || k_ >= n) throw std::invalid_argument("Encoder: info length out of range");
    if (n - k_ != r_)
        throw std::invalid_argument("Encoder: parity submatrix is not square (rows != cols - info)");
    words_ = (r_ + 63) / 64;

    // packed parity submatrix (columns k_..n-1) alongside a unit matrix
    std::vector<uint64_t> a(static_cast<size_t>(r_) * words_, 0);
    inv_.assign(static_cast<size_t>(r_) * words_, 0);
    auto abit = [&](int r, int c) -> bool {
        return (a[static_cast<size_t>(r) * words_ + (c >> 6)] >> (c & 63)) & 1u;
    };
    for (int j = 0; j < r_; ++j) {
        for (int c : h.row_cols[static_cast<size_t>(j)]) {
            if (c < 0 || c >= n) throw std::invalid_argument("Encoder: column index out of range");
            if (c >= k_)
                a[static_cast<size_t>(j) * words_ + ((c - k_) >> 6)] |= 1ULL << ((c - k_) & 63);
        }
        inv_[static_cast<size_t>(j) * words_ + (j >> 6)] |= 1ULL << (j & 63);
    }

    perm_.resize(static_cast<size_t>(r_));
    for (int i = 0; i < r_; ++i) perm_[static_cast<size_t>(i)] = i;

    auto swap_rows = [&](std::vector<uint64_t>& m, int x, int y) {
        if (x == y) return;
        for (int w = 0; w < words_; ++w)
            std::swap(m[static_cast<size_t>(x) * words_ + w], m[static_cast<size_t>(y) * words_ + w]);
    };
    auto xor_rows = [&](std::vector<uint64_t>& m, int dst, int src) {
        for (int w = 0; w < words_; ++w)
            m[static_cast<size_t>(dst) * words_ + w] ^= m[static_cast<size_t>(src) * words_ + w];
    };

    // Gauss-Jordan; pivots may hop to a later parity column (tracked in perm_)
    for (int d = 0; d < r_; ++d) {
        int prow = -1, pcol = -1;
        for (int c = d; c < r_ && prow < 0; ++c)
            for (int r = d; r < r_; ++r)
                if (abit(r, perm_[static_cast<size_t>(c)])) { prow = r; pcol = c; break; }
        if (prow < 0)
            throw std::runtime_error("Encoder: parity submatrix is singular; "
                                     "the design admits no systematic encoder");
        std::swap(perm_[static_cast<size_t>(d)], perm_[static_cast<size_t>(pcol)]);
        swap_rows(a, d, prow);
        swap_rows(inv_, d, prow);
        int col = perm_[static_cast<size_t>(d)];
        for (int r = 0; r < r_; ++r) {
            if (r == d || !abit(r, col)) continue;
            xor_rows(a, r, d);
            xor_rows(inv_, r, d);
        }
    }
}

std::vector<uint8_t> Encoder::encode(std::span<const uint8_t> info) const {
    if (static_cast<int>(info.size()) != k_)
        throw std::invalid_argument("encode: info length mismatch");
    int n = h_.cols;
    std::vector<uint8_t> cw(static_cast<size_t>(n), 0);
    for (int i = 0; i < k_; ++i) {
        if (info[static_cast<size_t>(i)] > 1)
            throw std::invalid_argument("encode: info bits must be 0 or 1");
        cw[static_cast<size_t>(i)] = info[static_cast<size_t>(i)];
    }

    // syndrome of the info part, packed
    std::vector<uint64_t> s(static_cast<size_t>(words_), 0);
    for (int j = 0; j < r_; ++j) {
        unsigned parity = 0;
        for (int c : h_.row_cols[static_cast<size_t>(j)])
            if (c < k_) parity ^= cw[static_cast<size_t>(c)];
        if (parity & 1u) s[static_cast<size_t>(j >> 6)] |= 1ULL << (j & 63);
    }

    // parity = inverse * syndrome, undone through the column permutation
    for (int d = 0; d < r_; ++d) {
        const uint64_t* row = &inv_[static_cast<size_t>(d) * words_];
        uint64_t acc = 0;
        for (int w = 0; w < words_; ++w) acc ^= row[w] & s[static_cast<size_t>(w)];
        unsigned bit = static_cast<unsigned>(std::popcount(acc)) & 1u;
        cw[static_cast<size_t>(k_ + perm_[static_cast<size_t>(d)])] = static_cast<uint8_t>(bit);
    }
    return cw;
}

}  // namespace ldpc
