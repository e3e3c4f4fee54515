#pragma once

#include <vector>

#include "ldpc/bool_func.hpp"
#include "ldpc/protograph.hpp"

namespace ldpc {

// Boolean diversity evolution over a two-or-more-block fading channel.
// Messages are boolean fading functions: a check node ANDs its extrinsic
// inputs, a variable node ORs its channel indicator with its extrinsic
// inputs.  All updates are monotone, so messages only ever gain states and
// the iteration reaches a fixed point.

BoolFunc var_function(int block, int blocks);

// Minimum number of faded blocks over the falsifying assignments of f.
// A function that is never 0 returns blocks+1 ("never in outage").
int diversity_order(const BoolFunc& f);

// Order >= M, i.e. the function is the OR of all block indicators (or the
// degenerate never-in-outage constant fed by a degree-1 check).
bool is_full_diversity(const BoolFunc& f);

// Default iteration budgets: cols/4 (rounded up) suffices to certify codes
// built from the constrained template; 4*cols is a hard cap for general runs.
inline int certify_iteration_budget(int cols) { return (cols + 3) / 4; }
inline int dive_iteration_cap(int cols) { return 4 * cols; }

class DiveEngine {
public:
    DiveEngine(const Protograph& p, const BlockMapping& pi);

    // One check-node plus variable-node sweep.  Returns false once nothing
    // changed (fixed point); the state is then stable under further steps.
    bool step();

    int iteration() const { return ell_; }
    const TannerGraph& graph() const { return g_; }
    const BlockMapping& mapping() const { return pi_; }

    const BoolFunc& v2c(int edge) const { return v2c_[static_cast<size_t>(edge)]; }
    // Variable-to-check messages of the previous iteration (the ones the
    // current check-node sweep consumed).
    const BoolFunc& v2c_previous(int edge) const { return v2c_prev_[static_cast<size_t>(edge)]; }
    const BoolFunc& c2v(int edge) const { return c2v_[static_cast<size_t>(edge)]; }
    const std::vector<BoolFunc>& posteriors() const { return post_; }

private:
    TannerGraph g_;
    BlockMapping pi_;
    std::vector<BoolFunc> channel_, v2c_, v2c_prev_, c2v_, post_;
    int ell_ = 0;
};

struct DiveReport {
    std::vector<BoolFunc> posterior;   // per VN, at the final iteration
    std::vector<int> order;            // diversity order per VN
    std::vector<int> first_full;       // first iteration a VN reached full
                                       // diversity, -1 if it never did
    bool converged = false;            // fixed point reached within l_max
    int iterations = 0;                // sweeps actually run
};

DiveReport dive_run(const Protograph& p, const BlockMapping& pi, int l_max);

// Numerical cross-check: enumerate all 2^M fading states, run plain min-sum
// with channel magnitudes 1 (clear) / 0 (faded), and mark a VN recovered when
// its posterior exceeds 1/2.  Agrees with dive_run once both are past the
// fixed point.
std::vector<BoolFunc> fading_msd(const Protograph& p, const BlockMapping& pi, int l_max);

// c_j is a rootcheck for v_i when all its other neighbors live in one block
// different from v_i's.  A check with no other neighbor has no witness block.
bool is_rootcheck(const Protograph& p, const BlockMapping& pi, int j, int i);

// Relaxed, iteration-dependent version: every other neighbor's previous
// message is either a single opposite-block indicator A_n (one common n) or
// already the OR of all indicators.
bool is_generalized_rootcheck(const DiveEngine& e, int j, int i);

struct CertifyResult {
    bool certified = false;
    int iterations = 0;   // max first-full iteration over info VNs if certified
};

CertifyResult certify_full_diversity(const Protograph& p, const BlockMapping& pi, int l_max);

}  // namespace ldpc
