#ifndef EQDISC_ORACLE_HPP
#define EQDISC_ORACLE_HPP

#include "eqdisc/pareto.hpp"

namespace eqdisc {

/// Every term expressible from the pool: token multisets of size
/// 1..max_factors over the pool universe (parametric tokens instantiated
/// on the declared lattice), subject to the term invariants. Sorted,
/// deduplicated.
std::vector<Term> enumerate_terms(const TokenPool& pool);

/// Number of candidate equations (term subsets of size 2..max_terms) over
/// `term_count` distinct terms, saturating at `cap`.
std::size_t count_equations(std::size_t term_count, int max_terms, std::size_t cap);

struct OracleResult {
    Individual best;
    std::size_t enumerated = 0;
};

/// Exhaustive search: fits every equation with 2..max_terms distinct
/// pool-expressible terms and returns the global minimum-discrepancy
/// individual. Refuses to start when the candidate count exceeds the
/// budget.
OracleResult brute_force_oracle(const DerivativeTable& table, const TokenPool& pool,
                                double lambda, std::size_t budget = 1000000);

} // namespace eqdisc

#endif
