#include "ldpc/dive.hpp"

#include <bit>
#include <stdexcept>

#include "ldpc/codec.hpp"

namespace ldpc {

BoolFunc var_function(int block, int blocks) { return BoolFunc::var(block, blocks); }

int diversity_order(const BoolFunc& f) {
    int best = f.blocks() + 1;   // no falsifying assignment: never in outage
    for (uint32_t a = 0; a < f.table_size(); ++a)
        if (!f.bit(a))
            best = std::min(best, f.blocks() - std::popcount(a));
    return best;
}

bool is_full_diversity(const BoolFunc& f) { return diversity_order(f) >= f.blocks(); }

namespace {
void check_pair(const Protograph& p, const BlockMapping& pi) {
    if (pi.size() != p.cols())
        throw std::invalid_argument("block mapping length does not match column count");
    if (pi.block_count < 1 || pi.block_count > 16)
        throw std::invalid_argument("block count must be in [1, 16]");
}
}  // namespace

DiveEngine::DiveEngine(const Protograph& p, const BlockMapping& pi)
    : g_(TannerGraph::from_protograph(p)), pi_(pi) {
    check_pair(p, pi);
    int m = pi_.block_count;
    channel_.reserve(static_cast<size_t>(g_.num_vn));
    for (int v = 0; v < g_.num_vn; ++v)
        channel_.push_back(BoolFunc::var(pi_(v), m));
    v2c_.reserve(g_.edges.size());
    for (const auto& e : g_.edges)
        v2c_.push_back(channel_[static_cast<size_t>(e.vn)]);
    v2c_prev_ = v2c_;
    c2v_.assign(g_.edges.size(), BoolFunc::zero(m));
    post_ = channel_;   // before any sweep the posterior is the channel alone
}

bool DiveEngine::step() {
    int m = pi_.block_count;
    v2c_prev_ = v2c_;

    // check-node sweep: AND of the extrinsic inputs; a check with no other
    // neighbor pins its variable (empty AND = constant 1)
    for (int j = 0; j < g_.num_cn; ++j) {
        for (int e : g_.cn_edges[static_cast<size_t>(j)]) {
            BoolFunc acc = BoolFunc::one(m);
            for (int e2 : g_.cn_edges[static_cast<size_t>(j)])
                if (e2 != e) acc &= v2c_prev_[static_cast<size_t>(e2)];
            c2v_[static_cast<size_t>(e)] = std::move(acc);
        }
    }

    // variable-node sweep: channel OR extrinsic inputs; posterior ORs all
    bool changed = false;
    for (int v = 0; v < g_.num_vn; ++v) {
        BoolFunc total = channel_[static_cast<size_t>(v)];
        for (int e : g_.vn_edges[static_cast<size_t>(v)])
            total |= c2v_[static_cast<size_t>(e)];
        if (!(total == post_[static_cast<size_t>(v)])) {
            post_[static_cast<size_t>(v)] = total;
            changed = true;
        }
        for (int e : g_.vn_edges[static_cast<size_t>(v)]) {
            BoolFunc out = channel_[static_cast<size_t>(v)];
            for (int e2 : g_.vn_edges[static_cast<size_t>(v)])
                if (e2 != e) out |= c2v_[static_cast<size_t>(e2)];
            if (!(out == v2c_[static_cast<size_t>(e)])) {
                v2c_[static_cast<size_t>(e)] = std::move(out);
                changed = true;
            }
        }
    }
    ++ell_;
    return changed;
}

DiveReport dive_run(const Protograph& p, const BlockMapping& pi, int l_max) {
    if (l_max < 1) throw std::invalid_argument("dive_run: l_max must be >= 1");
    DiveEngine eng(p, pi);

    DiveReport rep;
    rep.first_full.assign(static_cast<size_t>(p.cols()), -1);
    for (int v = 0; v < p.cols(); ++v)
        if (is_full_diversity(eng.posteriors()[static_cast<size_t>(v)]))
            rep.first_full[static_cast<size_t>(v)] = 0;   // channel alone (M = 1)

    for (int ell = 1; ell <= l_max; ++ell) {
        bool changed = eng.step();
        for (int v = 0; v < p.cols(); ++v)
            if (rep.first_full[static_cast<size_t>(v)] < 0 &&
                is_full_diversity(eng.posteriors()[static_cast<size_t>(v)]))
                rep.first_full[static_cast<size_t>(v)] = ell;
        if (!changed) {
            rep.converged = true;
            rep.iterations = ell - 1;   // state was already stable
            break;
        }
        rep.iterations = ell;
    }
    rep.posterior = eng.posteriors();
    rep.order.reserve(static_cast<size_t>(p.cols()));
    for (int v = 0; v < p.cols(); ++v)
        rep.order.push_back(diversity_order(rep.posterior[static_cast<size_t>(v)]));
    return rep;
}

std::vector<BoolFunc> fading_msd(const Protograph& p, const BlockMapping& pi, int l_max) {
    if (l_max < 1) throw std::invalid_argument("fading_msd: l_max must be >= 1");
    check_pair(p, pi);
    int m = pi.block_count;

    // plain min-sum, fixed iteration count, posteriors thresholded at 1/2
    MinSumDecoder dec(TannerGraph::from_protograph(p),
                      {l_max, 1.0, /*early_termination=*/false});
    std::vector<BoolFunc> tables(static_cast<size_t>(p.cols()), BoolFunc::zero(m));
    std::vector<double> llr(static_cast<size_t>(p.cols()));
    for (uint32_t a = 0; a < (1u << m); ++a) {
        for (int v = 0; v < p.cols(); ++v)
            llr[static_cast<size_t>(v)] = ((a >> pi(v)) & 1u) ? 1.0 : 0.0;
        dec.decode(llr);
        for (int v = 0; v < p.cols(); ++v)
            if (dec.posteriors()[static_cast<size_t>(v)] > 0.5)
                tables[static_cast<size_t>(v)].set_bit(a, true);
    }
    return tables;
}

bool is_rootcheck(const Protograph& p, const BlockMapping& pi, int j, int i) {
    check_pair(p, pi);
    if (j < 0 || j >= p.rows() || i < 0 || i >= p.cols())
        throw std::out_of_range("is_rootcheck: index out of range");
    if (!p.at(j, i))
        throw std::invalid_argument("is_rootcheck: (j,i) is not an edge");
    int witness = -1;
    bool any = false;
    for (int u : p.neighbors_of_cn(j)) {
        if (u == i) continue;
        any = true;
        if (witness < 0) witness = pi(u);
        else if (pi(u) != witness) return false;
    }
    return any && witness != pi(i);
}

bool is_generalized_rootcheck(const DiveEngine& eng, int j, int i) {
    if (eng.iteration() < 1)
        throw std::invalid_argument("is_generalized_rootcheck: needs iteration >= 1");
    const TannerGraph& g = eng.graph();
    if (j < 0 || j >= g.num_cn || i < 0 || i >= g.num_vn)
        throw std::out_of_range("is_generalized_rootcheck: index out of range");
    if (g.find_edge(j, i) < 0)
        throw std::invalid_argument("is_generalized_rootcheck: (j,i) is not an edge");

    int m = eng.mapping().block_count;
    BoolFunc full = BoolFunc::full_sum(m);
    int witness = -1;   // common block of the non-full single-indicator inputs
    bool any = false;
    for (int e : g.cn_edges[static_cast<size_t>(j)]) {
        int u = g.edges[static_cast<size_t>(e)].vn;
        if (u == i) continue;
        any = true;
        const BoolFunc& msg = eng.v2c_previous(e);
        if (msg == full) continue;
        bool matched = false;
        for (int n = 0; n < m; ++n) {
            if (n == eng.mapping()(i)) continue;
            if (witness >= 0 && n != witness) continue;
            if (msg == BoolFunc::var(n, m)) {
                witness = n;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    if (!any) return false;   // no witness block without other neighbors
    // all-full inputs: any block other than v_i's works
    return witness >= 0 || m >= 2;
}

CertifyResult certify_full_diversity(const Protograph& p, const BlockMapping& pi, int l_max) {
    DiveReport rep = dive_run(p, pi, l_max);
    CertifyResult res;
    res.certified = true;
    res.iterations = 0;
    for (int v = 0; v < p.info_count(); ++v) {
        int ff = rep.first_full[static_cast<size_t>(v)];
        if (ff < 0) {
            res.certified = false;
            res.iterations = rep.iterations;
            return res;
        }
        res.iterations = std::max(res.iterations, ff);
    }
    return res;
}

}  // namespace ldpc
