#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ldpc/lift.hpp"
#include "ldpc/protograph.hpp"

namespace ldpc {

struct DecoderConfig {
    int max_iterations = 50;
    double alpha = 0.75;            // check-node normalization factor
    bool early_termination = true;  // stop once the hard decision is a codeword
};

struct DecodeResult {
    std::vector<uint8_t> word;
    int iterations = 0;
    bool syndrome_zero = false;
};

bool syndrome_zero(const TannerGraph& g, std::span<const uint8_t> word);

// Flooding normalized min-sum.  Positive LLR means bit 0; a zero posterior
// decides 0.  Not reentrant: give each thread its own instance.
class MinSumDecoder {
public:
    MinSumDecoder(TannerGraph g, DecoderConfig cfg);

    DecodeResult decode(std::span<const double> llr);
    const std::vector<double>& posteriors() const { return post_; }
    const TannerGraph& graph() const { return g_; }
    const DecoderConfig& config() const { return cfg_; }

private:
    TannerGraph g_;
    DecoderConfig cfg_;
    std::vector<double> v2c_, c2v_, post_;
    std::vector<uint8_t> word_;
};

// Systematic encoder: codeword = (info, parity) with the parity solved
// through a precomputed GF(2) inverse of the parity submatrix.  Column
// pivoting stays inside the parity columns; construction throws
// std::runtime_error if that submatrix is singular.
class Encoder {
public:
    Encoder(const SparseParityMatrix& h, int info_len);

    std::vector<uint8_t> encode(std::span<const uint8_t> info) const;

    int n() const { return h_.cols; }
    int k() const { return k_; }
    const SparseParityMatrix& h() const { return h_; }

private:
    SparseParityMatrix h_;
    int k_, r_, words_;
    std::vector<int> perm_;          // parity-column permutation
    std::vector<uint64_t> inv_;      // bit-packed inverse, r_ rows
};

}  // namespace ldpc
