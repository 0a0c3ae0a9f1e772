#ifndef EQDISC_EVOLUTION_HPP
#define EQDISC_EVOLUTION_HPP

#include <utility>

#include "eqdisc/representation.hpp"

namespace eqdisc {

/// Structure-changing operator parameters. Rates are probabilities of
/// affecting individual terms; param_sigma is the Gaussian standard
/// deviation for parameter jitter expressed as a fraction of the
/// parameter range.
struct OperatorConfig {
    double crossover_rate = 0.3;
    double mutation_rate = 0.6;
    double param_sigma = 0.1;

    void validate() const;
};

/// Per term, with probability mutation_rate, applies one uniformly chosen
/// action: replace the term with a fresh random one, swap one token for a
/// pool sample, or (when the term holds a parametric token) jitter one
/// parameter by a Gaussian increment clamped to the pool bounds. Term
/// distinctness conflicts are resolved by resampling within a 64-retry
/// budget; exhaustion leaves the term unchanged and logs a warning once.
/// The RHS marking is preserved. Deterministic for a fixed seed.
Equation mutate(const Equation& equation, const TokenPool& pool, const OperatorConfig& config,
                Rng& rng);

/// Term-level crossover. Term pairs identical in both parents are copied
/// unchanged; pairs identical up to parametric parameters exchange
/// parameters drawn uniformly from the closed interval between the
/// parents' values (per pair, with probability crossover_rate); unique
/// terms are randomly paired and swapped wholesale with probability
/// crossover_rate. Invariant conflicts are resolved by keeping the parent
/// terms.
std::pair<Equation, Equation> crossover(const Equation& a, const Equation& b,
                                        const OperatorConfig& config, Rng& rng);

/// One Gaussian jitter step on one parameter of a parametric token:
/// value + Normal(0, (sigma * range)^2), clamped to the bounds. Exposed
/// separately so the increment rule is directly testable.
Token jitter_parametric(const Token& token, const ParametricFamilySpec& family, double sigma,
                        bool jitter_frequency, Rng& rng);

} // namespace eqdisc

#endif
