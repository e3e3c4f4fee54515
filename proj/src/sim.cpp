#include "ldpc/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ldpc/io.hpp"
#include "ldpc/parallel.hpp"

namespace ldpc {

namespace {

constexpr double kNoiselessLlr = 1e12;
constexpr uint64_t kScanChunk = 1024;  // trials scheduled per parallel batch

uint64_t fnv1a(uint64_t h, const void* data, size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

uint64_t fnv1a_u64(uint64_t h, uint64_t v) { return fnv1a(h, &v, sizeof v); }

uint64_t fnv1a_f64(uint64_t h, double v) {
    return fnv1a_u64(h, std::bit_cast<uint64_t>(v));
}

struct TrialOutcome {
    uint32_t bit_errors = 0;
    uint8_t block_error = 0;
};

TrialOutcome one_trial(const SimSetup& s, MinSumDecoder& dec,
                       std::vector<uint8_t>& info, uint64_t seed, uint64_t t) {
    Rng rng(derive_seed(seed, "trial", t));
    for (auto& b : info) b = static_cast<uint8_t>(rng.bernoulli(0.5));
    const std::vector<uint8_t> cw = s.encoder->encode(info);
    const std::vector<double> llr = transmit(cw, s.channel, rng);
    const DecodeResult res = dec.decode(llr);
    const size_t span = s.count_full_codeword ? cw.size() : info.size();
    TrialOutcome out;
    for (size_t i = 0; i < span; ++i)
        out.bit_errors += res.word[i] != cw[i];
    out.block_error = out.bit_errors > 0;
    return out;
}

}  // namespace

double ChannelConfig::noise_variance() const {
    if (noiseless) return 0.0;
    return 1.0 / (2.0 * rate * std::pow(10.0, snr_db / 10.0));
}

std::vector<double> transmit(std::span<const uint8_t> codeword,
                             const ChannelConfig& cfg, Rng& rng) {
    const size_t n = codeword.size();
    std::vector<double> gains;
    if (cfg.kind == ChannelKind::bfc) {
        if (cfg.mapping.size() != static_cast<int>(n))
            throw std::invalid_argument("transmit: mapping does not cover codeword");
        if (cfg.mapping.block_count != cfg.blocks)
            throw std::invalid_argument("transmit: mapping/channel block mismatch");
        gains.resize(static_cast<size_t>(cfg.blocks));
        for (double& a : gains) {
            const double x = rng.normal(), y = rng.normal();
            a = std::sqrt(0.5 * (x * x + y * y));
        }
    }
    std::vector<double> llr(n);
    const double var = cfg.noise_variance();
    const double sigma = std::sqrt(var);
    for (size_t i = 0; i < n; ++i) {
        const double s = codeword[i] ? -1.0 : 1.0;
        const double a = gains.empty() ? 1.0 : gains[static_cast<size_t>(
                                                   cfg.mapping(static_cast<int>(i)))];
        if (cfg.noiseless) {
            llr[i] = a > 0.0 ? s * kNoiselessLlr : 0.0;
        } else {
            const double y = a * s + sigma * rng.normal();
            llr[i] = 2.0 * a * y / var;
        }
    }
    return llr;
}

double SimRecord::ber() const {
    const double bits = static_cast<double>(trials) * static_cast<double>(bits_per_trial);
    return bits > 0.0 ? static_cast<double>(bit_errors) / bits : 0.0;
}

double SimRecord::bler() const {
    return trials ? static_cast<double>(block_errors) / static_cast<double>(trials) : 0.0;
}

void SimRecord::merge(const SimRecord& o) {
    if (snr_db != o.snr_db || seed != o.seed || config_digest != o.config_digest ||
        bits_per_trial != o.bits_per_trial)
        throw std::invalid_argument("merge: records come from different runs");
    trials += o.trials;
    bit_errors += o.bit_errors;
    block_errors += o.block_errors;
}

uint64_t sim_config_digest(const SimSetup& s) {
    uint64_t h = 1469598103934665603ULL;
    h = fnv1a_u64(h, s.channel.kind == ChannelKind::bfc ? 1 : 2);
    h = fnv1a_u64(h, static_cast<uint64_t>(s.channel.blocks));
    h = fnv1a_f64(h, s.channel.snr_db);
    h = fnv1a_f64(h, s.channel.rate);
    h = fnv1a_u64(h, s.channel.noiseless);
    for (int m : s.channel.mapping.assignment)
        h = fnv1a_u64(h, static_cast<uint64_t>(m));
    h = fnv1a_u64(h, static_cast<uint64_t>(s.decoder.max_iterations));
    h = fnv1a_f64(h, s.decoder.alpha);
    h = fnv1a_u64(h, s.decoder.early_termination);
    h = fnv1a_u64(h, s.count_full_codeword);
    if (s.encoder) {
        h = fnv1a_u64(h, static_cast<uint64_t>(s.encoder->n()));
        h = fnv1a_u64(h, static_cast<uint64_t>(s.encoder->k()));
    }
    return h;
}

SimRecord run_trial_range(const SimSetup& s, uint64_t seed, uint64_t t0, uint64_t t1) {
    if (!s.encoder) throw std::invalid_argument("simulation needs an encoder");
    const SparseParityMatrix& h = s.encoder->h();
    MinSumDecoder dec(TannerGraph::from_row_adjacency(h.cols, h.row_cols), s.decoder);
    std::vector<uint8_t> info(static_cast<size_t>(s.encoder->k()));
    SimRecord rec;
    rec.snr_db = s.channel.snr_db;
    rec.seed = seed;
    rec.config_digest = sim_config_digest(s);
    rec.bits_per_trial = static_cast<uint64_t>(
        s.count_full_codeword ? s.encoder->n() : s.encoder->k());
    for (uint64_t t = t0; t < t1; ++t) {
        const TrialOutcome out = one_trial(s, dec, info, seed, t);
        ++rec.trials;
        rec.bit_errors += out.bit_errors;
        rec.block_errors += out.block_error;
    }
    return rec;
}

SimRecord run_montecarlo(const SimSetup& s, const StopRule& stop, uint64_t seed,
                         int jobs) {
    if (!s.encoder) throw std::invalid_argument("simulation needs an encoder");
    if (jobs < 1) jobs = default_jobs();
    const SparseParityMatrix& hm = s.encoder->h();
    const TannerGraph graph = TannerGraph::from_row_adjacency(hm.cols, hm.row_cols);

    SimRecord rec;
    rec.snr_db = s.channel.snr_db;
    rec.seed = seed;
    rec.config_digest = sim_config_digest(s);
    rec.bits_per_trial = static_cast<uint64_t>(
        s.count_full_codeword ? s.encoder->n() : s.encoder->k());

    std::vector<TrialOutcome> outcomes;
    for (uint64_t base = 0; base < stop.max_trials; base += kScanChunk) {
        const uint64_t count = std::min(kScanChunk, stop.max_trials - base);
        outcomes.assign(static_cast<size_t>(count), {});
        parallel_for_chunks(static_cast<size_t>(count), jobs, [&](size_t b, size_t e) {
            MinSumDecoder dec(graph, s.decoder);
            std::vector<uint8_t> info(static_cast<size_t>(s.encoder->k()));
            for (size_t idx = b; idx < e; ++idx)
                outcomes[idx] = one_trial(s, dec, info, seed, base + idx);
        });
        // the prefix cut depends only on trial order, never on the worker split
        for (uint64_t idx = 0; idx < count; ++idx) {
            ++rec.trials;
            rec.bit_errors += outcomes[static_cast<size_t>(idx)].bit_errors;
            rec.block_errors += outcomes[static_cast<size_t>(idx)].block_error;
            if (rec.block_errors >= stop.min_block_errors) return rec;
        }
    }
    return rec;
}

SlopeEstimate estimate_slope(std::span<const SimRecord> records,
                             double window_lo_db, double window_hi_db) {
    std::vector<std::pair<double, double>> pts;  // (snr_db/10, log10 bler)
    double lo = 0.0, hi = 0.0;
    for (const SimRecord& r : records) {
        if (r.snr_db < window_lo_db || r.snr_db > window_hi_db) continue;
        if (r.trials == 0 || r.block_errors == 0) continue;
        if (pts.empty()) {
            lo = hi = r.snr_db;
        } else {
            lo = std::min(lo, r.snr_db);
            hi = std::max(hi, r.snr_db);
        }
        pts.emplace_back(r.snr_db / 10.0, std::log10(r.bler()));
    }
    if (pts.size() < 2)
        throw std::invalid_argument(
            "slope fit needs at least two points with block errors in the window");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double det = n * sxx - sx * sx;
    if (det <= 0.0)
        throw std::invalid_argument("slope fit needs distinct SNR points");
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / n;
    double ss = 0.0;
    for (auto [x, y] : pts) {
        const double r = y - (intercept + slope * x);
        ss += r * r;
    }
    SlopeEstimate est;
    est.d = -slope;
    est.window_lo = lo;
    est.window_hi = hi;
    est.residual = std::sqrt(ss / n);
    est.points = static_cast<int>(pts.size());
    return est;
}

std::string format_records_csv(std::span<const SimRecord> records) {
    std::ostringstream os;
    os << "snr_db,trials,bit_errors,block_errors,ber,bler,seed\n";
    char buf[64];
    for (const SimRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%.6g", r.snr_db);
        os << buf << ',' << r.trials << ',' << r.bit_errors << ',' << r.block_errors;
        std::snprintf(buf, sizeof buf, "%.8g", r.ber());
        os << ',' << buf;
        std::snprintf(buf, sizeof buf, "%.8g", r.bler());
        os << ',' << buf << ',' << r.seed << '\n';
    }
    return os.str();
}

void write_records_csv(const std::string& path, std::span<const SimRecord> records) {
    write_text_file(path, format_records_csv(records));
}

std::vector<SimRecord> read_records_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(path, 1, 1, "empty simulation file");
    if (line.rfind("snr_db,", 0) != 0)
        throw ParseError(path, 1, 1, "missing simulation CSV header");
    std::vector<SimRecord> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream is(line);
        SimRecord r;
        double ber_ignored, bler_ignored;
        if (!(is >> r.snr_db >> r.trials >> r.bit_errors >> r.block_errors >>
              ber_ignored >> bler_ignored >> r.seed))
            throw ParseError(path, line_no, 1, "malformed simulation CSV row");
        out.push_back(r);
    }
    return out;
}

}  // namespace ldpc
