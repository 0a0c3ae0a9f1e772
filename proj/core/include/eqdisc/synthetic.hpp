#ifndef EQDISC_SYNTHETIC_HPP
#define EQDISC_SYNTHETIC_HPP

#include <optional>

#include "eqdisc/pareto.hpp"

namespace eqdisc {

/// One benchmark dataset: the sampled field, optional closed-form
/// derivative evaluators, the reference equation it satisfies, and the
/// token pool a discovery run on it searches over.
struct BenchmarkCase {
    std::string name;
    GridPtr grid;
    Field field;
    std::map<DerivativeSpec, AnalyticFn> analytic; // empty when only finite differences apply
    Equation true_equation;                        // fitted, canonical reference structure
    std::string true_canonical;
    TokenPool pool;
};

/// u(t,x) = sin(pi x) cos(0.2 pi t) on [0,1]^2, which satisfies
/// u_tt = 0.04 u_xx identically. Closed-form derivatives through second
/// order on both axes.
BenchmarkCase gen_wave(const GridPtr& grid);

/// u(t,x) = x/(1+t), satisfying u_t + u u_x = 0 identically. Closed-form
/// derivatives; u_xx vanishes. The pool carries u_tt and two-factor
/// products so near-miss alternative structures compete with the true
/// one.
BenchmarkCase gen_burgers(const GridPtr& grid);

/// Forced Korteweg-de Vries field: u_t + 6 u u_x + u_xxx = cos(t) sin(t)
/// integrated by the Zabusky-Kruskal leapfrog scheme on a periodic
/// spatial domain (period = nx * dx), first step by forward Euler.
/// `initial` holds u(0, x) on the grid's x axis.
BenchmarkCase gen_kdv(const GridPtr& grid, const Eigen::VectorXd& initial, bool forced = true);

/// Default benchmark grids: 101x101 on [0,1]^2 for wave and Burgers; for
/// KdV nt x nx over t in [0,1] and the periodic cell x in [0, 2pi), with
/// u(0,x) = cos(x).
BenchmarkCase make_benchmark(const std::string& name, std::size_t nt = 101, std::size_t nx = 0);

/// Derivative table for a case: analytic where the case provides closed
/// forms (unless forced off), finite differences otherwise. Specs come
/// from the pool.
DerivativeTable benchmark_table(const BenchmarkCase& bench, bool prefer_analytic = true);

using ForcingFn = std::function<double(double)>;

/// Zabusky-Kruskal integration of u_t + 6 u u_x + u_xxx = f(t) with
/// periodic boundary conditions. Rows of the result are the field at the
/// requested output times; sub-stepping satisfies the explicit stability
/// bound and fails if it would need more than max_substeps per output
/// step.
Eigen::MatrixXd kdv_integrate(const std::vector<double>& x_axis,
                              const Eigen::VectorXd& initial,
                              const std::vector<double>& t_axis,
                              const ForcingFn& forcing,
                              long max_substeps = 1000000);

} // namespace eqdisc

#endif
