#include "ldpc/ga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ldpc/dive.hpp"
#include "ldpc/gf2.hpp"
#include "ldpc/parallel.hpp"

namespace ldpc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int ones(const Candidate& c) {
    return static_cast<int>(std::count(c.bits.begin(), c.bits.end(), uint8_t{1}));
}

// Ranking order: threshold, then sparser, then lexicographic bits.
bool better(const ScoredCandidate& a, const ScoredCandidate& b) {
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    const int oa = ones(a.candidate), ob = ones(b.candidate);
    if (oa != ob) return oa < ob;
    return a.candidate.bits < b.candidate.bits;
}

int certify_budget(const ProtoTemplate& t, const GaConfig& cfg) {
    return cfg.certify_l_max > 0 ? cfg.certify_l_max
                                 : certify_iteration_budget(t.cols);
}

double threshold_fitness(const Candidate& c, const GaConfig& cfg) {
    const ProtoTemplate& t = *c.tmpl;
    const Protograph p = instantiate(c);
    const double rate = static_cast<double>(t.info_count) / t.cols;
    const ThresholdResult th = threshold(p, rate, {}, cfg.de_precision_db);
    return th.converged ? th.gamma_th_db : kInf;
}

}  // namespace

ValidityReport validity_check(const Protograph& p, const BlockMapping& pi,
                              int l_max) {
    ValidityReport rep;
    rep.rank_full = rank(p) == p.rows();

    // A design is only usable when its parity submatrix supports the
    // systematic parity solve; circulant lifting cannot repair a parity part
    // that is already singular in the base (x = 1 divides x^Z - 1 for all Z).
    const int pc = p.cols() - p.info_count();
    Gf2Matrix parity(p.rows(), pc);
    for (int j = 0; j < p.rows(); ++j)
        for (int i = 0; i < pc; ++i)
            if (p.at(j, p.info_count() + i)) parity.set(j, i, true);
    rep.parity_invertible = rank_gf2(std::move(parity)) == p.rows();

    const std::vector<int> vdeg = p.vn_degrees();
    rep.degree_one_rule = true;
    for (int i = 0; i < p.info_count(); ++i) {
        bool has_clean_check = false;
        for (int j : p.neighbors_of_vn(i)) {
            bool clean = true;
            for (int v : p.neighbors_of_cn(j))
                if (vdeg[static_cast<size_t>(v)] == 1) {
                    clean = false;
                    break;
                }
            if (clean) {
                has_clean_check = true;
                break;
            }
        }
        if (!has_clean_check) rep.degree_one_rule = false;
    }

    const DiveReport dive = dive_run(p, pi, l_max);
    rep.certified = true;
    for (int i = 0; i < p.info_count(); ++i) {
        const int ff = dive.first_full[static_cast<size_t>(i)];
        if (ff < 0) {
            rep.certified = false;
            rep.failing_info_vns.push_back(i);
        } else {
            rep.certified_iterations = std::max(rep.certified_iterations, ff);
        }
    }
    if (!rep.certified) rep.certified_iterations = 0;
    return rep;
}

ScoredCandidate evaluate(const Candidate& c, const GaConfig& cfg) {
    const ProtoTemplate& t = *c.tmpl;
    ScoredCandidate sc;
    sc.candidate = c;
    const ValidityReport rep =
        validity_check(instantiate(c), t.mapping, certify_budget(t, cfg));
    sc.valid = rep.ok();
    sc.certified_iterations = rep.certified_iterations;
    sc.fitness = sc.valid ? threshold_fitness(c, cfg) : kInf;
    return sc;
}

std::vector<Candidate> crossover_vn(const Candidate& a, const Candidate& b) {
    if (a.tmpl != b.tmpl || a.tmpl == nullptr)
        throw std::invalid_argument("crossover needs candidates of one template");
    const ProtoTemplate& t = *a.tmpl;
    static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                         {1, 2}, {1, 3}, {2, 3}};
    std::vector<Candidate> children;
    children.reserve(6);
    for (const auto& pair : kPairs) {
        Candidate child{&t, b.bits};
        for (size_t d = 0; d < t.designable.size(); ++d) {
            const int g = column_group(t, t.designable[d].second);
            if (g == pair[0] || g == pair[1]) child.bits[d] = a.bits[d];
        }
        repair_row_weight(child, nullptr);
        children.push_back(std::move(child));
    }
    return children;
}

std::vector<Candidate> crossover_cn(const Candidate& a, const Candidate& b) {
    if (a.tmpl != b.tmpl || a.tmpl == nullptr)
        throw std::invalid_argument("crossover needs candidates of one template");
    const ProtoTemplate& t = *a.tmpl;
    std::vector<Candidate> children;
    children.reserve(2);
    for (int take = 0; take < 2; ++take) {
        // child 0 takes a's rows targeting block 0, child 1 the complement
        Candidate child{&t, b.bits};
        for (size_t d = 0; d < t.designable.size(); ++d)
            if (row_group(t, t.designable[d].first) == take)
                child.bits[d] = a.bits[d];
        repair_row_weight(child, nullptr);
        children.push_back(std::move(child));
    }
    return children;
}

Candidate mutate(const Candidate& c, Rng& rng, bool* changed) {
    Candidate out = c;
    std::vector<int> set_idx, clear_idx;
    for (int d = 0; d < static_cast<int>(out.bits.size()); ++d)
        (out.bits[static_cast<size_t>(d)] ? set_idx : clear_idx).push_back(d);

    const int first = static_cast<int>(rng.below(3));
    for (int off = 0; off < 3; ++off) {
        const int action = (first + off) % 3;
        if (action == 0 && !clear_idx.empty()) {          // add
            out.bits[static_cast<size_t>(
                clear_idx[static_cast<size_t>(rng.below(clear_idx.size()))])] = 1;
            break;
        }
        if (action == 1 && !set_idx.empty()) {            // delete
            out.bits[static_cast<size_t>(
                set_idx[static_cast<size_t>(rng.below(set_idx.size()))])] = 0;
            break;
        }
        if (action == 2 && !set_idx.empty() && !clear_idx.empty()) {  // swap
            out.bits[static_cast<size_t>(
                set_idx[static_cast<size_t>(rng.below(set_idx.size()))])] = 0;
            out.bits[static_cast<size_t>(
                clear_idx[static_cast<size_t>(rng.below(clear_idx.size()))])] = 1;
            break;
        }
    }
    repair_row_weight(out, &rng);
    if (changed) *changed = out.bits != c.bits;
    return out;
}

GaResult run_ga(const ProtoTemplate& t, const GaConfig& cfg) {
    const int pairs = cfg.elite_count * (cfg.elite_count - 1) / 2;
    if (cfg.elite_count < 2 || cfg.population_size < cfg.elite_count + 8 * pairs)
        throw std::invalid_argument(
            "need elite_count >= 2 and population_size >= elites + 8*C(T,2)");

    const int l_max = certify_budget(t, cfg);
    const double rate = static_cast<double>(t.info_count) / t.cols;

    // fitness of already-admitted candidates, evaluated in parallel by index
    auto score_batch = [&](const std::vector<Candidate>& cands) {
        std::vector<ScoredCandidate> out(cands.size());
        parallel_for_chunks(
            static_cast<int64_t>(cands.size()), cfg.jobs,
            [&](int64_t b, int64_t e) {
                for (int64_t i = b; i < e; ++i) {
                    const Candidate& c = cands[static_cast<size_t>(i)];
                    ScoredCandidate& sc = out[static_cast<size_t>(i)];
                    sc.candidate = c;
                    const ValidityReport rep =
                        validity_check(instantiate(c), t.mapping, l_max);
                    sc.valid = rep.ok();
                    sc.certified_iterations = rep.certified_iterations;
                    if (!sc.valid) {
                        sc.fitness = kInf;
                        continue;
                    }
                    const ThresholdResult th =
                        threshold(instantiate(c), rate, {}, cfg.de_precision_db);
                    sc.fitness = th.converged ? th.gamma_th_db : kInf;
                }
            });
        return out;
    };

    // admission filter: only candidates passing the validity gate enter the
    // population, so sampling keeps drawing until the quota is met
    Rng sample_rng(derive_seed(cfg.seed, "init", 0));
    auto sample_admitted = [&](int quota, std::vector<Candidate>* out) {
        constexpr long long kDrawCap = 2000000;
        long long draws = 0;
        while (quota > 0) {
            Candidate c = sample_family(t, cfg.init_density, sample_rng);
            if (++draws > kDrawCap)
                throw std::runtime_error(
                    "sampling found too few valid candidates; loosen the template");
            if (!validity_check(instantiate(c), t.mapping, l_max).ok()) continue;
            out->push_back(std::move(c));
            --quota;
        }
    };

    GaResult result{GaTrace{}, ScoredCandidate{}, {}, 0, false};

    std::vector<Candidate> fresh;
    fresh.reserve(static_cast<size_t>(cfg.population_size));
    sample_admitted(cfg.population_size, &fresh);
    std::vector<ScoredCandidate> pop = score_batch(fresh);
    std::sort(pop.begin(), pop.end(), better);

    auto record = [&](int gen, int vn_children, int cn_children) {
        GenerationStats st;
        st.generation = gen;
        st.best_db = pop.front().fitness;
        const size_t n = pop.size();
        st.median_db = n % 2 ? pop[n / 2].fitness
                             : 0.5 * (pop[n / 2 - 1].fitness + pop[n / 2].fitness);
        st.vn_children = vn_children;
        st.cn_children = cn_children;
        result.trace.generations.push_back(st);
        result.trace.best_per_generation.push_back(pop.front().candidate);
    };
    record(0, 0, 0);

    Rng mut_rng(derive_seed(cfg.seed, "mut", 0));
    double best_seen = pop.front().fitness;
    int since_improved = 0;
    bool stagnated = false;
    int gen = 0;
    while (gen < cfg.max_generations && !stagnated) {
        ++gen;
        std::vector<Candidate> offspring;
        int vn_children = 0, cn_children = 0;
        for (int a = 0; a < cfg.elite_count; ++a)
            for (int b = a + 1; b < cfg.elite_count; ++b) {
                const Candidate& pa = pop[static_cast<size_t>(a)].candidate;
                const Candidate& pb = pop[static_cast<size_t>(b)].candidate;
                for (Candidate& c : crossover_vn(pa, pb)) {
                    offspring.push_back(std::move(c));
                    ++vn_children;
                }
                for (Candidate& c : crossover_cn(pa, pb)) {
                    offspring.push_back(std::move(c));
                    ++cn_children;
                }
            }
        for (Candidate& c : offspring)  // elites themselves are never mutated
            if (mut_rng.bernoulli(cfg.mutation_probability)) c = mutate(c, mut_rng);

        std::vector<Candidate> next;
        next.reserve(static_cast<size_t>(cfg.population_size));
        for (const Candidate& c : offspring)
            if (validity_check(instantiate(c), t.mapping, l_max).ok())
                next.push_back(c);
        const int deficit = cfg.population_size - cfg.elite_count -
                            static_cast<int>(next.size());
        if (deficit > 0) sample_admitted(deficit, &next);

        std::vector<ScoredCandidate> scored = score_batch(next);
        scored.insert(scored.end(), pop.begin(),
                      pop.begin() + cfg.elite_count);  // elites survive verbatim
        pop = std::move(scored);
        std::sort(pop.begin(), pop.end(), better);
        if (static_cast<int>(pop.size()) > cfg.population_size)
            pop.resize(static_cast<size_t>(cfg.population_size));
        record(gen, vn_children, cn_children);

        if (pop.front().fitness < best_seen) {
            best_seen = pop.front().fitness;
            since_improved = 0;
        } else if (++since_improved >= cfg.stagnation_limit) {
            stagnated = true;
        }
    }

    result.best = pop.front();
    result.final_population = std::move(pop);
    result.generations_run = gen;
    result.stagnated = stagnated;
    return result;
}

std::string format_ga_trace_csv(const GaTrace& trace) {
    std::ostringstream os;
    os << "generation,best_db,median_db,vn_children,cn_children\n";
    for (const GenerationStats& st : trace.generations) {
        os << st.generation << ',';
        if (std::isinf(st.best_db)) os << "inf";
        else os << st.best_db;
        os << ',';
        if (std::isinf(st.median_db)) os << "inf";
        else os << st.median_db;
        os << ',' << st.vn_children << ',' << st.cn_children << '\n';
    }
    return os.str();
}

}  // namespace ldpc
