#ifndef EQDISC_OPTIMIZE_HPP
#define EQDISC_OPTIMIZE_HPP

#include <cstdint>

#include "eqdisc/evolution.hpp"
#include "eqdisc/pareto.hpp"

namespace eqdisc {

/// Shared search parameters. `iterations` means generations for the
/// single-objective search and outer iterations for MOEA/DD; the shipped
/// defaults (64 vs 8 at population 8) keep both searches within a factor
/// of two in fitness evaluations.
struct SearchConfig {
    int population = 8;
    int iterations = 64;
    double lambda = 0.05;
    OperatorConfig operators{};
    std::uint64_t seed = 0;

    // MOEA/DD parameters.
    double theta = 1.0;            // PBI penalty factor
    double delta = 0.9;            // neighborhood parent-selection probability
    int neighborhood = 4;          // K nearest sectors
    double parent_fraction = 0.4;  // parents per sector per iteration

    void validate() const;
};

/// One row per iteration; evaluations counts fit+evaluate calls so far.
struct TraceRow {
    int iteration = 0;
    long evaluations = 0;
    double best_q_op = 0.0;
    int archive_size = 0;
    double hypervolume = 0.0;
};

std::string trace_to_csv(const std::vector<TraceRow>& trace);

struct SingleObjectiveResult {
    Individual best;
    std::vector<TraceRow> trace;
    long evaluations = 0;
};

/// Elitist generational EA minimizing the operator discrepancy:
/// tournament selection of size 2, crossover then mutation, the best
/// individual survives unchanged. Returns the best individual ever seen.
SingleObjectiveResult run_single_objective(const DerivativeTable& table, const TokenPool& pool,
                                           const SearchConfig& config);

struct MoeaddResult {
    ParetoArchive archive;
    std::vector<TraceRow> trace;
    long evaluations = 0;
};

/// Baseline MOEA/DD over (discrepancy, complexity): uniform 2-simplex
/// weight lattice, neighborhood parent selection with probability delta,
/// dominance-then-decomposition population update (evict the worst-PBI
/// member of the most crowded sector of the last front), external archive
/// of all non-dominated candidates.
MoeaddResult run_moeadd(const DerivativeTable& table, const TokenPool& pool,
                        const SearchConfig& config);

} // namespace eqdisc

#endif
