#include "eqdisc/regression.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace eqdisc {

namespace {

constexpr int kMaxSweeps = 10000;
constexpr double kCoefTol = 1e-9;
constexpr double kRidgeJitter = 1e-12;

double soft_threshold(double z, double lambda) {
    if (z > lambda) return z - lambda;
    if (z < -lambda) return z + lambda;
    return 0.0;
}

} // namespace

void RegressionProblem::validate() const {
    if (features.cols() < 1) {
        throw DataError("regression problem needs at least one feature column");
    }
    if (features.rows() < features.cols()) {
        throw DataError("regression problem has fewer rows than columns");
    }
    if (features.rows() != target.rows()) {
        throw DataError("regression feature/target row mismatch");
    }
    if (!features.allFinite() || !target.allFinite()) {
        throw DataError("regression problem contains non-finite values");
    }
    if (lambda < 0.0) {
        throw ConfigError("lambda must be nonnegative");
    }
}

Eigen::VectorXd lasso_fit(const RegressionProblem& problem, LassoDiagnostics* diagnostics) {
    problem.validate();
    const Eigen::Index n = problem.features.rows();
    const Eigen::Index p = problem.features.cols();
    const double dn = static_cast<double>(n);

    // Scale columns to unit RMS so one lambda works across terms whose
    // magnitudes differ by orders of magnitude.
    Eigen::VectorXd scale(p);
    Eigen::MatrixXd F(n, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double s = problem.features.col(j).norm() / std::sqrt(dn);
        scale(j) = s;
        if (s > 0.0) {
            F.col(j) = problem.features.col(j) / s;
        } else {
            F.col(j).setZero();
        }
    }

    const Eigen::MatrixXd gram = F.transpose() * F;
    const Eigen::VectorXd corr = F.transpose() * problem.target;
    const double yy = problem.target.squaredNorm();

    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(p);
    auto objective = [&](const Eigen::VectorXd& a) {
        const double quad = yy - 2.0 * corr.dot(a) + a.dot(gram * a);
        return quad / (2.0 * dn) + problem.lambda * a.lpNorm<1>();
    };

    double prev_objective = objective(alpha);
    if (diagnostics) {
        diagnostics->objective_per_sweep.clear();
        diagnostics->objective_per_sweep.push_back(prev_objective);
    }

    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        double max_change = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (scale(j) == 0.0) {
                continue;
            }
            const double gjj = gram(j, j);
            double rho = corr(j);
            for (Eigen::Index k = 0; k < p; ++k) {
                if (k != j) rho -= gram(j, k) * alpha(k);
            }
            const double updated = soft_threshold(rho / dn, problem.lambda) * dn / gjj;
            max_change = std::max(max_change, std::abs(updated - alpha(j)));
            alpha(j) = updated;
        }
        const double obj = objective(alpha);
        // Coordinate descent never increases the objective; tolerate only
        // rounding noise.
        assert(obj <= prev_objective + 1e-12 * (1.0 + std::abs(prev_objective)));
        prev_objective = obj;
        if (diagnostics) {
            diagnostics->objective_per_sweep.push_back(obj);
        }
        if (max_change < kCoefTol) {
            ++sweep;
            break;
        }
    }
    if (diagnostics) {
        diagnostics->sweeps = sweep;
        diagnostics->standardized_solution = alpha;
    }

    Eigen::VectorXd out(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        out(j) = scale(j) > 0.0 ? alpha(j) / scale(j) : 0.0;
    }
    return out;
}

Eigen::VectorXd ols_refit(const RegressionProblem& problem, const std::vector<int>& active) {
    problem.validate();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(problem.features.cols());
    if (active.empty()) {
        return out;
    }
    const Eigen::Index m = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd A(problem.features.rows(), m);
    for (Eigen::Index k = 0; k < m; ++k) {
        A.col(k) = problem.features.col(active[static_cast<std::size_t>(k)]);
    }
    Eigen::MatrixXd normal = A.transpose() * A;
    normal.diagonal().array() += kRidgeJitter;
    const Eigen::VectorXd beta = normal.ldlt().solve(A.transpose() * problem.target);
    for (Eigen::Index k = 0; k < m; ++k) {
        out(active[static_cast<std::size_t>(k)]) = beta(k);
    }
    return out;
}

double residual_rms(const Equation& equation, const DerivativeTable& table) {
    if (!equation.fitted) {
        throw ConfigError("residual_rms requires a fitted equation");
    }
    if (equation.degenerate) {
        return std::numeric_limits<double>::infinity();
    }
    const std::size_t n_terms = equation.terms.size();
    Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(table.mask_size()));
    std::size_t j = 0;
    for (std::size_t i = 0; i < n_terms; ++i) {
        if (static_cast<int>(i) == equation.rhs_index) {
            acc -= evaluate_term(equation.terms[i], table);
        } else {
            const double c = equation.coefficients.at(j);
            ++j;
            if (c != 0.0) {
                acc += c * evaluate_term(equation.terms[i], table);
            }
        }
    }
    return std::sqrt(acc.square().sum() / static_cast<double>(table.mask_size()));
}

FitResult fit_equation(const Equation& equation, const DerivativeTable& table) {
    const std::size_t n_terms = equation.terms.size();
    if (n_terms < 2) {
        throw ConfigError("fit_equation needs at least 2 terms");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(table.mask_size());

    std::vector<Eigen::ArrayXd> values;
    values.reserve(n_terms);
    std::vector<bool> is_zero(n_terms);
    for (std::size_t i = 0; i < n_terms; ++i) {
        values.push_back(evaluate_term(equation.terms[i], table));
        if (!values.back().isFinite().all()) {
            throw DataError("term " + equation.terms[i].render() +
                            " evaluates to non-finite values");
        }
        is_zero[i] = values.back().abs().maxCoeff() == 0.0;
    }

    Equation best = equation;
    double best_residual = std::numeric_limits<double>::infinity();
    bool any_candidate = false;

    for (std::size_t m = 0; m < n_terms; ++m) {
        // A target that is identically zero turns the fit into the vacuous
        // statement 0 = 0; skip it.
        if (is_zero[m]) {
            continue;
        }
        any_candidate = true;
        RegressionProblem problem;
        problem.lambda = equation.lambda;
        problem.features.resize(n, static_cast<Eigen::Index>(n_terms - 1));
        Eigen::Index col = 0;
        for (std::size_t i = 0; i < n_terms; ++i) {
            if (i == m) continue;
            problem.features.col(col++) = values[i].matrix();
        }
        problem.target = values[m].matrix();

        const Eigen::VectorXd filtered = lasso_fit(problem);
        std::vector<int> active;
        for (Eigen::Index jj = 0; jj < filtered.size(); ++jj) {
            if (filtered(jj) != 0.0) {
                active.push_back(static_cast<int>(jj));
            }
        }
        const Eigen::VectorXd coeffs = ols_refit(problem, active);
        const double rms =
            std::sqrt((problem.features * coeffs - problem.target).squaredNorm() /
                      static_cast<double>(n));
        if (rms < best_residual) {
            best_residual = rms;
            best.rhs_index = static_cast<int>(m);
            best.coefficients.assign(coeffs.data(), coeffs.data() + coeffs.size());
        }
    }

    if (!any_candidate) {
        best.fitted = true;
        best.degenerate = true;
        best.coefficients.assign(n_terms - 1, 0.0);
        return {best, std::numeric_limits<double>::infinity()};
    }
    best.fitted = true;
    best.degenerate = false;
    return {best, best_residual};
}

} // namespace eqdisc
