#ifndef EQDISC_DERIVATIVES_HPP
#define EQDISC_DERIVATIVES_HPP

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "eqdisc/grid.hpp"

namespace eqdisc {

enum class Axis { Time = 0, Space = 1 };

/// Which derivative of the field: axis and order. Order 0 is the field
/// itself and is normalized to the time axis so that it has a single
/// representation. Supported orders: up to 2 in time, up to 3 in space.
struct DerivativeSpec {
    Axis axis = Axis::Time;
    int order = 0;

    friend auto operator<=>(const DerivativeSpec&, const DerivativeSpec&) = default;
};

DerivativeSpec deriv(Axis axis, int order);

/// "u", "du/dt", "d2u/dx2", ...
std::string spec_name(const DerivativeSpec& spec);

/// Cache of derivative fields for one source field, plus the rectangular
/// interior window on which every entry used central stencils (margin of
/// max(order)+1 cells per axis side). Evaluation works on the flattened
/// interior window; mask_t/mask_x hold the coordinates of those points in
/// flattening order (time outer, space inner).
class DerivativeTable {
public:
    DerivativeTable(GridPtr grid, std::map<DerivativeSpec, Eigen::MatrixXd> entries,
                    std::size_t t_margin, std::size_t x_margin);

    const Grid& grid() const { return *grid_; }
    bool has(const DerivativeSpec& spec) const { return entries_.count(spec) > 0; }
    std::size_t size() const { return entries_.size(); }

    std::size_t t_lo() const { return t_lo_; }
    std::size_t t_hi() const { return t_hi_; } // inclusive
    std::size_t x_lo() const { return x_lo_; }
    std::size_t x_hi() const { return x_hi_; } // inclusive
    std::size_t mask_size() const { return mask_t_.size(); }

    const Eigen::ArrayXd& mask_t() const { return mask_t_; }
    const Eigen::ArrayXd& mask_x() const { return mask_x_; }

    /// Entry values flattened over the interior window.
    Eigen::ArrayXd extract(const DerivativeSpec& spec) const;

    const Eigen::MatrixXd& entry(const DerivativeSpec& spec) const;

private:
    GridPtr grid_;
    std::map<DerivativeSpec, Eigen::MatrixXd> entries_;
    std::size_t t_lo_, t_hi_, x_lo_, x_hi_;
    Eigen::ArrayXd mask_t_, mask_x_;
};

/// Second-order finite differences: central stencils at interior points,
/// one-sided second-order stencils at the boundaries. Order 0 returns the
/// field unchanged.
Field finite_diff(const Field& field, const DerivativeSpec& spec);

/// Differentiates the field for every requested spec (deduplicated, order
/// 0 always added) and records the interior window.
DerivativeTable build_table(const Field& field, std::vector<DerivativeSpec> specs);

using AnalyticFn = std::function<double(double t, double x)>;

/// Table populated by pointwise evaluation of closed forms; the interior
/// window is the full grid. Every requested spec (plus order 0) must have
/// an evaluator.
DerivativeTable analytic_table(const std::map<DerivativeSpec, AnalyticFn>& formulas,
                               const GridPtr& grid,
                               std::vector<DerivativeSpec> specs);

} // namespace eqdisc

#endif
