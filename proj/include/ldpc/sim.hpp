#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ldpc/codec.hpp"
#include "ldpc/protograph.hpp"
#include "ldpc/rng.hpp"

namespace ldpc {

enum class ChannelKind { bfc, awgn };

// Block-fading / AWGN channel for BPSK (bit 0 -> +1, bit 1 -> -1).
// bfc draws one Rayleigh gain a = |h|, h ~ CN(0,1), per fading block and
// trial; awgn is the same path with a = 1.  LLR out: 2 a y / sigma^2.
struct ChannelConfig {
    ChannelKind kind = ChannelKind::awgn;
    int blocks = 2;
    double snr_db = 0.0;            // Eb/N0 in dB
    double rate = 0.5;
    BlockMapping mapping;           // per transmitted bit; required for bfc
    bool noiseless = false;         // sigma^2 -> 0 limit, for sanity runs

    double noise_variance() const;
};

std::vector<double> transmit(std::span<const uint8_t> codeword,
                             const ChannelConfig& cfg, Rng& rng);

struct SimRecord {
    double snr_db = 0.0;
    uint64_t trials = 0;
    uint64_t bit_errors = 0;
    uint64_t block_errors = 0;
    uint64_t bits_per_trial = 0;    // info bits counted per trial
    uint64_t seed = 0;
    uint64_t config_digest = 0;

    double ber() const;
    double bler() const;

    // Counter additivity: records from disjoint trial ranges of the same
    // (seed, config) sum into the record of the union.
    void merge(const SimRecord& o);

    bool operator==(const SimRecord&) const = default;
};

struct StopRule {
    uint64_t min_block_errors = 100;
    uint64_t max_trials = 1000000;
};

struct SimSetup {
    const Encoder* encoder = nullptr;
    DecoderConfig decoder;
    ChannelConfig channel;
    bool count_full_codeword = false;   // default: errors on info bits only
};

uint64_t sim_config_digest(const SimSetup& s);

// Fixed trial range [t0, t1); every trial reseeds from (seed, trial index),
// so any partition of the range reproduces the same counters.
SimRecord run_trial_range(const SimSetup& s, uint64_t seed, uint64_t t0, uint64_t t1);

// Runs trials 0,1,2,... until the stop rule fires: the prefix of trials is
// cut at the first trial whose inclusion reaches min_block_errors (or at
// max_trials).  Worker count never changes the result.
SimRecord run_montecarlo(const SimSetup& s, const StopRule& stop, uint64_t seed,
                         int jobs = 1);

struct SlopeEstimate {
    double d = 0.0;            // diversity slope: -10 * dlog10(BLER)/dsnr_db
    double window_lo = 0.0, window_hi = 0.0;
    double residual = 0.0;     // rms residual of the log-linear fit
    int points = 0;
};

// Least squares of log10(BLER) against snr_db/10 over records inside the
// window with at least one block error.  Needs two usable points.
SlopeEstimate estimate_slope(std::span<const SimRecord> records,
                             double window_lo_db, double window_hi_db);

// CSV with header: snr_db,trials,bit_errors,block_errors,ber,bler,seed
std::string format_records_csv(std::span<const SimRecord> records);
void write_records_csv(const std::string& path, std::span<const SimRecord> records);
// Read-back keeps the counters; ber/bler are recomputed from them.
std::vector<SimRecord> read_records_csv(const std::string& path);

}  // namespace ldpc
