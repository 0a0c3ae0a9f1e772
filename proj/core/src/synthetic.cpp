#include "eqdisc/synthetic.hpp"

#include <cmath>
#include <numbers>

namespace eqdisc {

namespace {

constexpr double kPi = std::numbers::pi;

Equation fitted_reference(std::vector<Term> terms, int rhs_index,
                          std::vector<double> coefficients_by_position, double lambda) {
    // coefficients_by_position is aligned with `terms` before sorting and
    // skips the RHS slot.
    Equation eq = make_equation(terms, rhs_index, lambda);
    // Recover the permutation applied by make_equation.
    std::vector<double> full(terms.size(), 0.0);
    std::size_t j = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (static_cast<int>(i) == rhs_index) continue;
        full[i] = coefficients_by_position.at(j++);
    }
    eq.coefficients.clear();
    for (std::size_t k = 0; k < eq.terms.size(); ++k) {
        if (static_cast<int>(k) == eq.rhs_index) continue;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (terms[i] == eq.terms[k]) {
                eq.coefficients.push_back(full[i]);
                break;
            }
        }
    }
    eq.fitted = true;
    return eq;
}

} // namespace

BenchmarkCase gen_wave(const GridPtr& grid) {
    auto shape = [](double t, double x) { return std::sin(kPi * x) * std::cos(0.2 * kPi * t); };
    std::map<DerivativeSpec, AnalyticFn> analytic;
    analytic[deriv(Axis::Time, 0)] = shape;
    analytic[deriv(Axis::Time, 1)] = [](double t, double x) {
        return -0.2 * kPi * std::sin(kPi * x) * std::sin(0.2 * kPi * t);
    };
    auto u_xx = [shape](double t, double x) { return -(kPi * kPi) * shape(t, x); };
    analytic[deriv(Axis::Space, 2)] = u_xx;
    // Written as 0.04 * u_xx so the manufactured identity u_tt = 0.04 u_xx
    // holds at working precision, not just to truncation.
    analytic[deriv(Axis::Time, 2)] = [u_xx](double t, double x) { return 0.04 * u_xx(t, x); };
    analytic[deriv(Axis::Space, 1)] = [](double t, double x) {
        return kPi * std::cos(kPi * x) * std::cos(0.2 * kPi * t);
    };

    Eigen::MatrixXd values(static_cast<Eigen::Index>(grid->nt()),
                           static_cast<Eigen::Index>(grid->nx()));
    for (std::size_t i = 0; i < grid->nt(); ++i) {
        for (std::size_t j = 0; j < grid->nx(); ++j) {
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                shape(grid->t_axis()[i], grid->x_axis()[j]);
        }
    }

    BenchmarkCase bench{
        "wave",
        grid,
        Field(grid, std::move(values)),
        std::move(analytic),
        fitted_reference({Term::of({Token::derivative(Axis::Time, 2)}),
                          Term::of({Token::derivative(Axis::Space, 2)})},
                         0, {0.04}, 0.05),
        "",
        parse_pool("u,u_t,u_tt,u_x,u_xx,max_factors=2,max_terms=5"),
    };
    bench.true_canonical = canonical_form(bench.true_equation).text;
    return bench;
}

BenchmarkCase gen_burgers(const GridPtr& grid) {
    std::map<DerivativeSpec, AnalyticFn> analytic;
    analytic[deriv(Axis::Time, 0)] = [](double t, double x) { return x / (1.0 + t); };
    analytic[deriv(Axis::Time, 1)] = [](double t, double x) {
        return -x / ((1.0 + t) * (1.0 + t));
    };
    analytic[deriv(Axis::Time, 2)] = [](double t, double x) {
        return 2.0 * x / ((1.0 + t) * (1.0 + t) * (1.0 + t));
    };
    analytic[deriv(Axis::Space, 1)] = [](double t, double) { return 1.0 / (1.0 + t); };
    analytic[deriv(Axis::Space, 2)] = [](double, double) { return 0.0; };

    Eigen::MatrixXd values(static_cast<Eigen::Index>(grid->nt()),
                           static_cast<Eigen::Index>(grid->nx()));
    for (std::size_t i = 0; i < grid->nt(); ++i) {
        for (std::size_t j = 0; j < grid->nx(); ++j) {
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                grid->x_axis()[j] / (1.0 + grid->t_axis()[i]);
        }
    }

    BenchmarkCase bench{
        "burgers",
        grid,
        Field(grid, std::move(values)),
        std::move(analytic),
        fitted_reference({Term::of({Token::derivative(Axis::Time, 1)}),
                          Term::of({Token::derivative(Axis::Time, 0),
                                    Token::derivative(Axis::Space, 1)})},
                         0, {-1.0}, 0.05),
        "",
        parse_pool("u,u_t,u_x,u_xx,u_tt,max_factors=2,max_terms=5"),
    };
    bench.true_canonical = canonical_form(bench.true_equation).text;
    return bench;
}

Eigen::MatrixXd kdv_integrate(const std::vector<double>& x_axis,
                              const Eigen::VectorXd& initial,
                              const std::vector<double>& t_axis,
                              const ForcingFn& forcing,
                              long max_substeps) {
    const std::size_t nx = x_axis.size();
    const std::size_t nt = t_axis.size();
    if (initial.size() != static_cast<Eigen::Index>(nx)) {
        throw ConfigError("initial profile length " + std::to_string(initial.size()) +
                          " does not match the spatial axis (" + std::to_string(nx) + ")");
    }
    if (nx < 5 || nt < 2) {
        throw ConfigError("KdV integration needs at least 5 spatial nodes and 2 output times");
    }
    const double dx = x_axis[1] - x_axis[0];
    const double dt_out = t_axis[1] - t_axis[0];

    // Leapfrog stability for the dispersive term: |sin 2h - 2 sin h| peaks
    // at 3*sqrt(3)/2; the advective part adds 6|u|/dx. Headroom of +1 on
    // |u| covers forcing-driven growth, safety factor 0.5.
    const double umax0 = initial.size() > 0 ? initial.cwiseAbs().maxCoeff() : 0.0;
    const double u_budget = umax0 + 1.0;
    const double dt_stable =
        0.5 / (6.0 * u_budget / dx + (3.0 * std::sqrt(3.0) / 2.0) / (dx * dx * dx));
    const long substeps = static_cast<long>(std::ceil(dt_out / dt_stable));
    if (substeps > max_substeps) {
        throw DataError("KdV stability bound needs " + std::to_string(substeps) +
                        " substeps per output step (cap " + std::to_string(max_substeps) + ")");
    }
    const double dt = dt_out / static_cast<double>(substeps);

    auto rhs = [&](const Eigen::VectorXd& u, double t, Eigen::VectorXd* out) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t im2 = (i + nx - 2) % nx;
            const std::size_t im1 = (i + nx - 1) % nx;
            const std::size_t ip1 = (i + 1) % nx;
            const std::size_t ip2 = (i + 2) % nx;
            const double avg = (u(static_cast<Eigen::Index>(ip1)) + u(static_cast<Eigen::Index>(i)) +
                                u(static_cast<Eigen::Index>(im1))) /
                               3.0;
            const double d1 = (u(static_cast<Eigen::Index>(ip1)) - u(static_cast<Eigen::Index>(im1))) /
                              (2.0 * dx);
            const double d3 = (u(static_cast<Eigen::Index>(ip2)) -
                               2.0 * u(static_cast<Eigen::Index>(ip1)) +
                               2.0 * u(static_cast<Eigen::Index>(im1)) -
                               u(static_cast<Eigen::Index>(im2))) /
                              (2.0 * dx * dx * dx);
            (*out)(static_cast<Eigen::Index>(i)) = -6.0 * avg * d1 - d3 + forcing(t);
        }
    };

    Eigen::MatrixXd out(static_cast<Eigen::Index>(nt), static_cast<Eigen::Index>(nx));
    out.row(0) = initial.transpose();

    Eigen::VectorXd prev = initial;
    Eigen::VectorXd curr(nx);
    Eigen::VectorXd f(nx);
    rhs(prev, t_axis[0], &f);
    curr = prev + dt * f; // forward Euler start
    double t = t_axis[0] + dt;

    const double runaway = 2.0 * u_budget + 1.0;
    long done = 1;
    for (std::size_t row = 1; row < nt; ++row) {
        const long target = static_cast<long>(row) * substeps;
        while (done < target) {
            rhs(curr, t, &f);
            Eigen::VectorXd next = prev + 2.0 * dt * f;
            prev = std::move(curr);
            curr = std::move(next);
            ++done;
            t += dt;
            if (curr.cwiseAbs().maxCoeff() > runaway) {
                throw DataError("KdV integration became unstable at t=" + std::to_string(t));
            }
        }
        out.row(row) = curr.transpose();
    }
    return out;
}

BenchmarkCase gen_kdv(const GridPtr& grid, const Eigen::VectorXd& initial, bool forced) {
    ForcingFn forcing;
    if (forced) {
        forcing = [](double t) { return std::cos(t) * std::sin(t); };
    } else {
        forcing = [](double) { return 0.0; };
    }
    Eigen::MatrixXd values = kdv_integrate(grid->x_axis(), initial, grid->t_axis(), forcing);

    std::vector<Term> terms{
        Term::of({Token::derivative(Axis::Time, 1)}),
        Term::of({Token::derivative(Axis::Time, 0), Token::derivative(Axis::Space, 1)}),
        Term::of({Token::derivative(Axis::Space, 3)}),
    };
    int rhs_index;
    std::vector<double> coeffs_by_position;
    if (forced) {
        terms.push_back(Term::of({Token::parametric(TrigFamily::Cos, Axis::Time, 1.0, 0.0),
                                  Token::parametric(TrigFamily::Sin, Axis::Time, 1.0, 0.0)}));
        rhs_index = 3; // forcing marked as the regression target
        coeffs_by_position = {1.0, 6.0, 1.0}; // u_t, u u_x, u_xxx
    } else {
        rhs_index = 0; // u_t = -6 u u_x - u_xxx
        coeffs_by_position = {-6.0, -1.0}; // u u_x, u_xxx
    }

    BenchmarkCase bench{
        "kdv",
        grid,
        Field(grid, std::move(values)),
        {},
        fitted_reference(terms, rhs_index, coeffs_by_position, 0.05),
        "",
        parse_pool("u,u_t,u_x,u_xx,u_xxx,cos(t),sin(t),max_factors=2,max_terms=5"),
    };
    bench.true_canonical = canonical_form(bench.true_equation).text;
    return bench;
}

BenchmarkCase make_benchmark(const std::string& name, std::size_t nt, std::size_t nx) {
    if (name == "wave" || name == "burgers") {
        if (nx == 0) nx = 101;
        const GridPtr grid = build_uniform_grid({0.0, 1.0}, {0.0, 1.0}, nt, nx);
        return name == "wave" ? gen_wave(grid) : gen_burgers(grid);
    }
    if (name == "kdv") {
        if (nx == 0) nx = 128;
        // Periodic cell [0, 2pi): the grid stores nodes 0 .. 2pi(nx-1)/nx.
        const double period = 2.0 * kPi;
        const GridPtr grid = build_uniform_grid(
            {0.0, 1.0}, {0.0, period * static_cast<double>(nx - 1) / static_cast<double>(nx)},
            nt, nx);
        Eigen::VectorXd initial(static_cast<Eigen::Index>(nx));
        for (std::size_t j = 0; j < nx; ++j) {
            initial(static_cast<Eigen::Index>(j)) = std::cos(grid->x_axis()[j]);
        }
        return gen_kdv(grid, initial, true);
    }
    throw ConfigError("unknown benchmark '" + name + "' (expected wave, burgers, or kdv)");
}

DerivativeTable benchmark_table(const BenchmarkCase& bench, bool prefer_analytic) {
    const std::vector<DerivativeSpec> specs = bench.pool.required_specs();
    if (prefer_analytic && !bench.analytic.empty()) {
        return analytic_table(bench.analytic, bench.grid, specs);
    }
    return build_table(bench.field, specs);
}

} // namespace eqdisc
