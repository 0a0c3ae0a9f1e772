#ifndef EQDISC_REGRESSION_HPP
#define EQDISC_REGRESSION_HPP

#include <vector>

#include "eqdisc/representation.hpp"

namespace eqdisc {

/// Term-filtering regression problem: feature columns are flattened
/// interior evaluations of the non-RHS terms, the target is the RHS term.
struct RegressionProblem {
    Eigen::MatrixXd features; // N x p
    Eigen::VectorXd target;   // N
    double lambda = 0.0;

    void validate() const;
};

struct LassoDiagnostics {
    std::vector<double> objective_per_sweep;
    int sweeps = 0;
    Eigen::VectorXd standardized_solution;
};

/// L1-penalized least squares by cyclic coordinate descent with soft
/// thresholding, minimizing ||F a - y||^2 / (2N) + lambda*||a||_1 on
/// columns scaled to unit RMS. Zero columns get coefficient exactly 0.
/// Converges when the largest standardized coefficient change drops
/// below 1e-9, capped at 1e4 sweeps. Returned coefficients are on the
/// original column scale.
Eigen::VectorXd lasso_fit(const RegressionProblem& problem,
                          LassoDiagnostics* diagnostics = nullptr);

/// Ordinary least squares restricted to the active columns (normal
/// equations with 1e-12 ridge jitter). Inactive coefficients are exactly
/// zero; an empty active set yields the zero vector.
Eigen::VectorXd ols_refit(const RegressionProblem& problem, const std::vector<int>& active);

struct FitResult {
    Equation equation;
    double residual_rms = 0.0;
};

/// Fits the equation on the table: every term whose evaluation is not
/// identically zero is tried as the regression target, each candidate is
/// LASSO-filtered then OLS-refitted, and the choice with the smallest
/// RMS discrepancy is committed. Equations whose terms all evaluate to
/// zero come back flagged degenerate with an infinite residual.
FitResult fit_equation(const Equation& equation, const DerivativeTable& table);

/// RMS over the interior window of (sum_i a_i T_i - T_rhs) for a fitted
/// equation; +infinity for degenerate equations.
double residual_rms(const Equation& equation, const DerivativeTable& table);

} // namespace eqdisc

#endif
