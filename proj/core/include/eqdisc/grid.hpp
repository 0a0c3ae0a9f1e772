#ifndef EQDISC_GRID_HPP
#define EQDISC_GRID_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <memory>
#include <vector>

#include "eqdisc/errors.hpp"

namespace eqdisc {

/// Uniform rectangular space-time mesh. Axes are strictly increasing with
/// uniform spacing (relative deviation of consecutive differences at most
/// 1e-12) and carry at least 5 points each, the minimum stencil support
/// for third-order derivatives. Immutable after construction.
class Grid {
public:
    Grid(std::vector<double> t_axis, std::vector<double> x_axis);

    const std::vector<double>& t_axis() const { return t_; }
    const std::vector<double>& x_axis() const { return x_; }
    double dt() const { return dt_; }
    double dx() const { return dx_; }
    std::size_t nt() const { return t_.size(); }
    std::size_t nx() const { return x_.size(); }

private:
    std::vector<double> t_;
    std::vector<double> x_;
    double dt_ = 0.0;
    double dx_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds the closed-range uniform grid with nt x nx nodes, endpoints
/// included. Rejects degenerate ranges and fewer than 5 points per axis.
GridPtr build_uniform_grid(std::pair<double, double> t_range,
                           std::pair<double, double> x_range,
                           std::size_t nt, std::size_t nx);

/// Scalar variable sampled on a grid, values shaped (nt, nx) with rows
/// indexed by time. All values finite. Immutable after construction.
class Field {
public:
    Field(GridPtr grid, Eigen::MatrixXd values);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const Eigen::MatrixXd& values() const { return values_; }

private:
    GridPtr grid_;
    Eigen::MatrixXd values_;
};

/// CSV layout: header row `t\x,<x0>,<x1>,...`, then one row per time with
/// the t coordinate followed by the samples. UTF-8, '.' decimal, LF line
/// endings, 17 significant digits, no trailing commas. save/load round
/// trips doubles exactly.
Field load_field(const std::filesystem::path& path);
void save_field(const Field& field, const std::filesystem::path& path);

/// Canonical serialization used by save_field, exposed for byte-equality
/// checks.
std::string field_to_csv(const Field& field);

} // namespace eqdisc

#endif
