#pragma once

#include <cstdint>
#include <vector>

#include "ldpc/proto_template.hpp"
#include "ldpc/rcade.hpp"

namespace ldpc {

struct GaConfig {
    int population_size = 100;
    int elite_count = 5;              // parents for crossover, kept verbatim
    double mutation_probability = 0.3;
    int max_generations = 50;
    int stagnation_limit = 30;        // generations without best improvement
    uint64_t seed = 1;
    double de_precision_db = kDefaultPrecisionDb;
    double init_density = 0.5;        // highest joint validity rate for the
                                      // canonical family
    int certify_l_max = 0;            // 0: cols/4 of the template
    int jobs = 1;                     // fitness evaluation workers
};

struct ValidityReport {
    bool rank_full = false;
    bool parity_invertible = false;   // the parity submatrix has full row
                                      // rank, so a systematic encoder exists
                                      // for the design (and for every lift
                                      // with power-of-two Z)
    bool degree_one_rule = false;     // every info VN sees a check with no
                                      // degree-1 neighbor
    bool certified = false;
    int certified_iterations = 0;
    std::vector<int> failing_info_vns;

    bool ok() const {
        return rank_full && parity_invertible && degree_one_rule && certified;
    }
};

ValidityReport validity_check(const Protograph& p, const BlockMapping& pi, int l_max);

struct ScoredCandidate {
    Candidate candidate;
    double fitness = 0.0;             // decoding threshold in dB; +inf when
                                      // invalid or DE never converges
    bool valid = false;
    int certified_iterations = 0;
};

// Fitness of one candidate: validity first, then the RCA-DE threshold of the
// instantiated protograph at the template rate.
ScoredCandidate evaluate(const Candidate& c, const GaConfig& cfg);

// Variable-node crossover: columns split into the four block/type groups;
// one child per unordered pair of groups takes parent a's designable bits on
// those columns and parent b's elsewhere.  6 children.
std::vector<Candidate> crossover_vn(const Candidate& a, const Candidate& b);
// Check-node crossover: rows split by target block; one child per assignment
// of the two row groups to the two parents.  2 children.
std::vector<Candidate> crossover_cn(const Candidate& a, const Candidate& b);

// One add / delete / swap of a designable entry, then row-weight repair.
// Falls back across actions; when nothing applies the candidate returns
// unchanged and *changed (if given) is false.
Candidate mutate(const Candidate& c, Rng& rng, bool* changed = nullptr);

struct GenerationStats {
    int generation = 0;
    double best_db = 0.0;
    double median_db = 0.0;
    int vn_children = 0;   // 6 * C(elite_count, 2) from generation 1 on
    int cn_children = 0;   // 2 * C(elite_count, 2)
};

struct GaTrace {
    std::vector<GenerationStats> generations;
    std::vector<Candidate> best_per_generation;
};

struct GaResult {
    GaTrace trace;
    ScoredCandidate best;
    std::vector<ScoredCandidate> final_population;
    int generations_run = 0;
    bool stagnated = false;
};

// Elitist search over the designable set.  Candidates enter the population
// only after passing validity (rank, systematic encodability, degree-1 rule,
// diversity certification);
// a valid candidate whose density evolution never converges scores +inf and
// is culled by ranking.  Reproducible for a fixed seed at any job count.
GaResult run_ga(const ProtoTemplate& t, const GaConfig& cfg);

std::string format_ga_trace_csv(const GaTrace& trace);

}  // namespace ldpc
