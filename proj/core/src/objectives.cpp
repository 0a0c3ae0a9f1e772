#include "eqdisc/objectives.hpp"

namespace eqdisc {

double eval_q_op(const Equation& equation, const DerivativeTable& table) {
    return residual_rms(equation, table);
}

int eval_complexity(const Equation& equation) {
    if (!equation.fitted) {
        throw ConfigError("eval_complexity requires a fitted equation");
    }
    if (equation.degenerate) {
        return 0;
    }
    int count = equation.rhs().token_count();
    std::size_t j = 0;
    for (std::size_t i = 0; i < equation.terms.size(); ++i) {
        if (static_cast<int>(i) == equation.rhs_index) continue;
        if (equation.coefficients.at(j) != 0.0) {
            count += equation.terms[i].token_count();
        }
        ++j;
    }
    return count;
}

Objectives eval_objectives(const Equation& equation, const DerivativeTable& table) {
    return Objectives{eval_q_op(equation, table), eval_complexity(equation)};
}

} // namespace eqdisc
