#pragma once

#include <vector>

#include "ldpc/protograph.hpp"

namespace ldpc {

// Reciprocal-channel density evolution with a one-dimensional state: every
// message is the mean of a consistent Gaussian LLR density N(m, 2m).
// Variable nodes add means; check nodes go through the capacity dual
// C(m) + C(reciprocal(m)) = 1 of the binary-input AWGN channel.

// Mutual information of a BI-AWGN-consistent N(m, 2m) LLR, in bits.
// Strictly increasing, 0 at m = 0, approaches 1 as m grows.
double biawgn_capacity_of_mean(double m);

// Inverse of the above by bisection on the exact quadrature.
double biawgn_mean_for_capacity(double c);

// Channel LLR mean of transmitted BPSK at Eb/N0 given the code rate:
// sigma^2 = 1/(2 R 10^(db/10)) per real dimension and m = 2/sigma^2.
double channel_llr_mean(double eb_n0_db, double rate);

// Smallest Eb/N0 [dB] at which BI-AWGN capacity reaches the rate.
double shannon_limit_db(double rate);

// Monotone capacity<->mean lookup shared by all reciprocal evaluations.
// 4096 knots on capacity, clustered towards both ends so saturated messages
// map to finite means beyond the convergence target; linear interpolation
// in (capacity, mean) makes reciprocal an exact involution on the grid range.
// Inputs outside the range clamp to the closest knot (m = 0 saturates).
class ReciprocalMap {
public:
    ReciprocalMap();

    double cap_of_mean(double m) const;
    double mean_of_cap(double c) const;
    double reciprocal(double m) const { return mean_of_cap(1.0 - cap_of_mean(m)); }

    double mean_floor() const { return mean_.front(); }
    double mean_ceil() const { return mean_.back(); }

    static const ReciprocalMap& instance();

private:
    std::vector<double> cap_, mean_;   // both strictly increasing
};

inline double reciprocal(double m) { return ReciprocalMap::instance().reciprocal(m); }

struct ChannelParam {
    double eb_n0_db = 0.0;
    double rate = 0.5;
    std::vector<uint8_t> punctured;   // per-VN flag; empty = none

    double llr_mean(int vn) const;
};

inline constexpr double kDeTargetMean = 100.0;
inline constexpr int kDeMaxIterations = 2000;
inline constexpr double kDefaultPrecisionDb = 0.001;
inline constexpr double kThresholdLoDb = -2.0;
inline constexpr double kThresholdHiDb = 10.0;

struct DeResult {
    bool converged = false;
    int iterations = 0;
};

// Runs the per-edge recursion until every VN posterior mean reaches
// target_mean, the means stall at a fixed point, or max_iter passes.
DeResult de_iterate(const Protograph& p, const ChannelParam& ch,
                    int max_iter = kDeMaxIterations,
                    double target_mean = kDeTargetMean);

struct ThresholdResult {
    double gamma_th_db = 0.0;        // +inf when DE never converges by 10 dB
    double gap_db = 0.0;             // gamma_th_db - shannon_limit_db(rate)
    int iterations_at_threshold = 0;
    bool converged = false;
};

ThresholdResult threshold(const Protograph& p, double rate,
                          const std::vector<uint8_t>& punctured = {},
                          double precision_db = kDefaultPrecisionDb);

}  // namespace ldpc
