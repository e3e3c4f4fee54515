#include "ldpc/rcade.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ldpc {

namespace {

constexpr int kQuadratureNodes = 61;
constexpr double kInvSqrtPi = 0.5641895835477562869480794515608;

// Gauss-Hermite abscissas/weights for integral exp(-x^2) f(x) dx.
// Newton iteration on the recurrence of the orthonormal Hermite polynomials.
// Weights are renormalized to sum to sqrt(pi) exactly, so a constant-1
// integrand maps to capacity 1 without a quadrature bias floor.
struct Hermite {
    double x[kQuadratureNodes];
    double w[kQuadratureNodes];

    Hermite() {
        const int n = kQuadratureNodes;
        const double eps = 3e-14;
        const int m = (n + 1) / 2;
        double z = 0.0, pp = 0.0;
        for (int i = 0; i < m; ++i) {
            if (i == 0) z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -1.0 / 6.0);
            else if (i == 1) z -= 1.14 * std::pow(n, 0.426) / z;
            else if (i == 2) z = 1.86 * z - 0.86 * x[0];
            else if (i == 3) z = 1.91 * z - 0.91 * x[1];
            else z = 2.0 * z - x[i - 2];
            for (int it = 0; it < 200; ++it) {
                double p1 = 0.7511255444649425;   // pi^(-1/4)
                double p2 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p3 = p2;
                    p2 = p1;
                    p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
                }
                pp = std::sqrt(2.0 * n) * p2;
                double z1 = z;
                z = z1 - p1 / pp;
                if (std::abs(z - z1) <= eps) break;
            }
            x[i] = z;
            x[n - 1 - i] = -z;
            w[i] = 2.0 / (pp * pp);
            w[n - 1 - i] = w[i];
        }
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += w[i];
        const double norm = 1.0 / (s * kInvSqrtPi);
        for (int i = 0; i < n; ++i) w[i] *= norm;
    }
};

const Hermite& hermite() {
    static const Hermite h;
    return h;
}

// phi(L) = 1 - log2(1 + exp(-L)), evaluated without cancellation near L = 0.
inline double phi_bits(double l) {
    return -std::log1p(0.5 * std::expm1(-l)) * 1.4426950408889634073599246810019;
}

}  // namespace

double biawgn_capacity_of_mean(double m) {
    if (m < 0.0) throw std::invalid_argument("biawgn_capacity_of_mean: negative mean");
    if (m == 0.0) return 0.0;
    // L ~ N(m, 2m): L = m + 2 sqrt(m) x with x the Hermite variable
    const Hermite& h = hermite();
    double s = 2.0 * std::sqrt(m);
    double acc = 0.0;
    for (int i = 0; i < kQuadratureNodes; ++i)
        acc += h.w[i] * phi_bits(m + s * h.x[i]);
    double c = acc * kInvSqrtPi;
    if (c < 0.0) c = 0.0;
    if (c >= 1.0) c = std::nextafter(1.0, 0.0);
    return c;
}

double biawgn_mean_for_capacity(double c) {
    if (c < 0.0 || c >= 1.0)
        throw std::invalid_argument("biawgn_mean_for_capacity: capacity must be in [0, 1)");
    if (c == 0.0) return 0.0;
    double lo = 0.0, hi = 1e-12;
    while (biawgn_capacity_of_mean(hi) < c) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9)
            throw std::runtime_error("biawgn_mean_for_capacity: bracket search failed");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (biawgn_capacity_of_mean(mid) < c) lo = mid;
        else hi = mid;
        if (hi - lo <= 1e-13 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double channel_llr_mean(double eb_n0_db, double rate) {
    // sigma^2 = 1/(2 R Eb/N0), LLR = 2 y / sigma^2 => mean 2/sigma^2
    double gamma = std::pow(10.0, eb_n0_db / 10.0);
    return 4.0 * rate * gamma;
}

double shannon_limit_db(double rate) {
    if (rate <= 0.0 || rate >= 1.0)
        throw std::invalid_argument("shannon_limit_db: rate must be in (0, 1)");
    auto ok = [&](double db) {
        return biawgn_capacity_of_mean(channel_llr_mean(db, rate)) >= rate;
    };
    double lo = -10.0, hi = 0.0;
    while (!ok(hi)) {
        lo = hi;
        hi += 5.0;
        if (hi > 60.0) throw std::runtime_error("shannon_limit_db: bracket search failed");
    }
    while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        if (ok(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

ReciprocalMap::ReciprocalMap() {
    // capacity knots log-spaced towards both ends; the symmetric layout makes
    // c -> 1-c land on knots, so the dual identity is exact there.  The edge
    // stays within what the quadrature resolves as a complement against 1, so
    // every knot gets a finite mean and the dual of a saturated message is a
    // mean beyond the convergence target rather than an infinity.
    constexpr int kKnots = 4096;
    constexpr double kEdge = 1e-12;                    // closest approach to 0 and 1
    const double lambda = std::log(0.5 / kEdge);
    cap_.resize(kKnots);
    mean_.resize(kKnots);
    for (int i = 0; i < kKnots; ++i) {
        double t = (i + 0.5) / kKnots;
        double c = t < 0.5 ? 0.5 * std::exp(-lambda * (1.0 - 2.0 * t))
                           : 1.0 - 0.5 * std::exp(-lambda * (2.0 * t - 1.0));
        cap_[static_cast<size_t>(i)] = c;
    }
    double prev = 0.0;
    for (int i = 0; i < kKnots; ++i) {
        // capacity is increasing, so the previous mean brackets from below
        double lo = prev;
        double hi = std::max(prev * 1.0625, 1e-16);
        while (biawgn_capacity_of_mean(hi) < cap_[static_cast<size_t>(i)]) {
            lo = hi;
            hi *= 2.0;
        }
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (biawgn_capacity_of_mean(mid) < cap_[static_cast<size_t>(i)]) lo = mid;
            else hi = mid;
            if (hi - lo <= 1e-13 * hi) break;
        }
        mean_[static_cast<size_t>(i)] = 0.5 * (lo + hi);
        prev = mean_[static_cast<size_t>(i)];
    }
}

const ReciprocalMap& ReciprocalMap::instance() {
    static const ReciprocalMap map;
    return map;
}

namespace {
// piecewise-linear evaluation with clamping at the knot range
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    size_t lo = 0, hi = xs.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (xs[mid] <= x) lo = mid;
        else hi = mid;
    }
    double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}
}  // namespace

double ReciprocalMap::cap_of_mean(double m) const { return interp(mean_, cap_, m); }
double ReciprocalMap::mean_of_cap(double c) const { return interp(cap_, mean_, c); }

double ChannelParam::llr_mean(int vn) const {
    if (!punctured.empty() && punctured[static_cast<size_t>(vn)]) return 0.0;
    return channel_llr_mean(eb_n0_db, rate);
}

DeResult de_iterate(const Protograph& p, const ChannelParam& ch, int max_iter,
                    double target_mean) {
    if (!ch.punctured.empty() && ch.punctured.size() != static_cast<size_t>(p.cols()))
        throw std::invalid_argument("de_iterate: puncturing mask length mismatch");
    auto vdeg = p.vn_degrees();
    for (int i = 0; i < p.cols(); ++i)
        if (vdeg[static_cast<size_t>(i)] == 0)
            throw std::invalid_argument("de_iterate: variable node " + std::to_string(i) +
                                        " has degree 0");

    const ReciprocalMap& rm = ReciprocalMap::instance();
    TannerGraph g = TannerGraph::from_protograph(p);

    std::vector<double> mch(static_cast<size_t>(p.cols()));
    for (int v = 0; v < p.cols(); ++v) mch[static_cast<size_t>(v)] = ch.llr_mean(v);

    std::vector<double> v2c(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e)
        v2c[e] = mch[static_cast<size_t>(g.edges[e].vn)];
    std::vector<double> c2v(g.edges.size(), 0.0);
    std::vector<double> rec(g.edges.size(), 0.0);

    double prev_min_post = -1.0;
    for (int it = 1; it <= max_iter; ++it) {
        // check pass through the capacity dual
        for (int j = 0; j < g.num_cn; ++j) {
            const auto& es = g.cn_edges[static_cast<size_t>(j)];
            double sum = 0.0;
            for (int e : es) {
                rec[static_cast<size_t>(e)] = rm.reciprocal(v2c[static_cast<size_t>(e)]);
                sum += rec[static_cast<size_t>(e)];
            }
            for (int e : es) {
                double extr = sum - rec[static_cast<size_t>(e)];
                if (extr < 0.0) extr = 0.0;
                c2v[static_cast<size_t>(e)] = rm.reciprocal(extr);
            }
        }
        // variable pass; posteriors checked against the target
        double min_post = std::numeric_limits<double>::infinity();
        for (int v = 0; v < g.num_vn; ++v) {
            const auto& es = g.vn_edges[static_cast<size_t>(v)];
            double total = mch[static_cast<size_t>(v)];
            for (int e : es) total += c2v[static_cast<size_t>(e)];
            for (int e : es)
                v2c[static_cast<size_t>(e)] = total - c2v[static_cast<size_t>(e)];
            min_post = std::min(min_post, total);
        }
        if (min_post >= target_mean) return {true, it};
        // means are non-decreasing; once the weakest posterior stalls the
        // recursion sits in a finite fixed point and will never converge
        if (min_post - prev_min_post <= 1e-10 * (1.0 + min_post) && it > 1)
            return {false, it};
        prev_min_post = min_post;
    }
    return {false, max_iter};
}

ThresholdResult threshold(const Protograph& p, double rate,
                          const std::vector<uint8_t>& punctured, double precision_db) {
    if (precision_db <= 0.0)
        throw std::invalid_argument("threshold: precision must be positive");
    ThresholdResult res;
    double shannon = shannon_limit_db(rate);

    auto vdeg = p.vn_degrees();
    for (int d : vdeg)
        if (d == 0) {   // no extrinsic gain possible, DE cannot converge
            res.gamma_th_db = std::numeric_limits<double>::infinity();
            res.gap_db = std::numeric_limits<double>::infinity();
            return res;
        }

    int last_iters = 0;
    auto converges = [&](double db) {
        DeResult r = de_iterate(p, {db, rate, punctured});
        if (r.converged) last_iters = r.iterations;
        return r.converged;
    };

    if (!converges(kThresholdHiDb)) {
        res.gamma_th_db = std::numeric_limits<double>::infinity();
        res.gap_db = std::numeric_limits<double>::infinity();
        return res;
    }
    double lo = kThresholdLoDb, hi = kThresholdHiDb;
    if (converges(lo)) {
        res.gamma_th_db = lo;   // converges across the whole bracket
        res.gap_db = lo - shannon;
        res.iterations_at_threshold = last_iters;
        res.converged = true;
        return res;
    }
    while (hi - lo > precision_db) {
        double mid = 0.5 * (lo + hi);
        if (converges(mid)) hi = mid;
        else lo = mid;
    }
    converges(hi);   // refresh iteration count at the returned point
    res.gamma_th_db = hi;
    res.gap_db = hi - shannon;
    res.iterations_at_threshold = last_iters;
    res.converged = true;
    return res;
}

}  // namespace ldpc
