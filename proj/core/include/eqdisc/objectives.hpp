#ifndef EQDISC_OBJECTIVES_HPP
#define EQDISC_OBJECTIVES_HPP

#include "eqdisc/regression.hpp"

namespace eqdisc {

/// Candidate quality: operator discrepancy (RMS of the fitted equation's
/// residual over the interior window) and structural complexity (token
/// count over active terms). Both minimized.
struct Objectives {
    double q_op = 0.0;
    int complexity = 0;
};

/// RMS residual; +infinity sentinel for degenerate equations so they sort
/// below every feasible candidate.
double eval_q_op(const Equation& equation, const DerivativeTable& table);

/// Sum of token counts over terms with nonzero fitted coefficient; the
/// RHS term counts as active unless the equation is degenerate.
int eval_complexity(const Equation& equation);

Objectives eval_objectives(const Equation& equation, const DerivativeTable& table);

} // namespace eqdisc

#endif
