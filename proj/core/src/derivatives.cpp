#include "eqdisc/derivatives.hpp"

#include <algorithm>
#include <cmath>

namespace eqdisc {

namespace {

// Second-order stencil weights (before division by h^order). For odd
// orders the right-edge rows are the mirrored left-edge rows negated.
struct Stencil {
    int offset; // leftmost point relative to the evaluation index
    std::vector<double> w;
};

Stencil stencil_for(int order, std::size_t i, std::size_t n) {
    switch (order) {
    case 1:
        if (i == 0) return {0, {-1.5, 2.0, -0.5}};
        if (i == n - 1) return {-2, {0.5, -2.0, 1.5}};
        return {-1, {-0.5, 0.0, 0.5}};
    case 2:
        if (i == 0) return {0, {2.0, -5.0, 4.0, -1.0}};
        if (i == n - 1) return {-3, {-1.0, 4.0, -5.0, 2.0}};
        return {-1, {1.0, -2.0, 1.0}};
    case 3:
        if (i == 0) return {0, {-2.5, 9.0, -12.0, 7.0, -1.5}};
        if (i == 1) return {-1, {-1.5, 5.0, -6.0, 3.0, -0.5}};
        if (i == n - 2) return {-3, {0.5, -3.0, 6.0, -5.0, 1.5}};
        if (i == n - 1) return {-4, {1.5, -7.0, 12.0, -9.0, 2.5}};
        return {-2, {-0.5, 1.0, 0.0, -1.0, 0.5}};
    default:
        throw ConfigError("unsupported derivative order " + std::to_string(order));
    }
}

void check_order(const DerivativeSpec& spec) {
    if (spec.order < 0) {
        throw ConfigError("negative derivative order");
    }
    const int limit = spec.axis == Axis::Time ? 2 : 3;
    if (spec.order > limit) {
        throw ConfigError("unsupported " +
                          std::string(spec.axis == Axis::Time ? "time" : "space") +
                          " derivative order " + std::to_string(spec.order) +
                          " (max " + std::to_string(limit) + ")");
    }
}

// Differentiates one 1-D line in place into out.
void diff_line(const double* in, double* out, std::size_t n, int order, double h) {
    const double scale = 1.0 / std::pow(h, order);
    for (std::size_t i = 0; i < n; ++i) {
        const Stencil s = stencil_for(order, i, n);
        double acc = 0.0;
        for (std::size_t k = 0; k < s.w.size(); ++k) {
            acc += s.w[k] * in[i + static_cast<std::size_t>(static_cast<long>(s.offset) + static_cast<long>(k))];
        }
        out[i] = acc * scale;
    }
}

} // namespace

DerivativeSpec deriv(Axis axis, int order) {
    if (order == 0) {
        return DerivativeSpec{Axis::Time, 0};
    }
    return DerivativeSpec{axis, order};
}

std::string spec_name(const DerivativeSpec& spec) {
    if (spec.order == 0) {
        return "u";
    }
    const char axis = spec.axis == Axis::Time ? 't' : 'x';
    if (spec.order == 1) {
        return std::string("du/d") + axis;
    }
    return "d" + std::to_string(spec.order) + "u/d" + axis + std::to_string(spec.order);
}

Field finite_diff(const Field& field, const DerivativeSpec& spec) {
    check_order(spec);
    if (spec.order == 0) {
        return field;
    }
    const Grid& g = field.grid();
    const std::size_t n = spec.axis == Axis::Time ? g.nt() : g.nx();
    if (n < static_cast<std::size_t>(spec.order) + 2) {
        throw ConfigError("axis too short for order-" + std::to_string(spec.order) + " stencil");
    }
    const double h = spec.axis == Axis::Time ? g.dt() : g.dx();
    Eigen::MatrixXd out(field.values().rows(), field.values().cols());
    if (spec.axis == Axis::Time) {
        std::vector<double> in(g.nt()), res(g.nt());
        for (std::size_t j = 0; j < g.nx(); ++j) {
            for (std::size_t i = 0; i < g.nt(); ++i) {
                in[i] = field.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
            diff_line(in.data(), res.data(), g.nt(), spec.order, h);
            for (std::size_t i = 0; i < g.nt(); ++i) {
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = res[i];
            }
        }
    } else {
        std::vector<double> in(g.nx()), res(g.nx());
        for (std::size_t i = 0; i < g.nt(); ++i) {
            for (std::size_t j = 0; j < g.nx(); ++j) {
                in[j] = field.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
            diff_line(in.data(), res.data(), g.nx(), spec.order, h);
            for (std::size_t j = 0; j < g.nx(); ++j) {
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = res[j];
            }
        }
    }
    return Field(field.grid_ptr(), std::move(out));
}

DerivativeTable::DerivativeTable(GridPtr grid, std::map<DerivativeSpec, Eigen::MatrixXd> entries,
                                 std::size_t t_margin, std::size_t x_margin)
    : grid_(std::move(grid)), entries_(std::move(entries)) {
    const std::size_t nt = grid_->nt();
    const std::size_t nx = grid_->nx();
    if (2 * t_margin >= nt || 2 * x_margin >= nx) {
        throw ConfigError("grid too small for requested derivative margins (" +
                          std::to_string(t_margin) + ", " + std::to_string(x_margin) + ")");
    }
    t_lo_ = t_margin;
    t_hi_ = nt - 1 - t_margin;
    x_lo_ = x_margin;
    x_hi_ = nx - 1 - x_margin;
    const std::size_t m = (t_hi_ - t_lo_ + 1) * (x_hi_ - x_lo_ + 1);
    mask_t_.resize(static_cast<Eigen::Index>(m));
    mask_x_.resize(static_cast<Eigen::Index>(m));
    Eigen::Index k = 0;
    for (std::size_t i = t_lo_; i <= t_hi_; ++i) {
        for (std::size_t j = x_lo_; j <= x_hi_; ++j, ++k) {
            mask_t_(k) = grid_->t_axis()[i];
            mask_x_(k) = grid_->x_axis()[j];
        }
    }
}

Eigen::ArrayXd DerivativeTable::extract(const DerivativeSpec& spec) const {
    const Eigen::MatrixXd& m = entry(spec);
    Eigen::ArrayXd out(static_cast<Eigen::Index>(mask_size()));
    Eigen::Index k = 0;
    for (std::size_t i = t_lo_; i <= t_hi_; ++i) {
        for (std::size_t j = x_lo_; j <= x_hi_; ++j, ++k) {
            out(k) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

const Eigen::MatrixXd& DerivativeTable::entry(const DerivativeSpec& spec) const {
    auto it = entries_.find(spec);
    if (it == entries_.end()) {
        throw DataError("derivative table has no entry for " + spec_name(spec));
    }
    return it->second;
}

namespace {

// Dedupes specs, adds order 0, and reports per-axis margins max(order)+1.
std::vector<DerivativeSpec> normalize_specs(std::vector<DerivativeSpec> specs,
                                            std::size_t* t_margin, std::size_t* x_margin) {
    if (specs.empty()) {
        throw ConfigError("derivative spec list is empty");
    }
    for (auto& s : specs) {
        s = deriv(s.axis, s.order);
        check_order(s);
    }
    specs.push_back(deriv(Axis::Time, 0));
    std::sort(specs.begin(), specs.end());
    specs.erase(std::unique(specs.begin(), specs.end()), specs.end());
    int max_t = 0, max_x = 0;
    for (const auto& s : specs) {
        if (s.axis == Axis::Time) {
            max_t = std::max(max_t, s.order);
        } else {
            max_x = std::max(max_x, s.order);
        }
    }
    *t_margin = static_cast<std::size_t>(max_t) + 1;
    *x_margin = static_cast<std::size_t>(max_x) + 1;
    return specs;
}

} // namespace

DerivativeTable build_table(const Field& field, std::vector<DerivativeSpec> specs) {
    std::size_t t_margin = 0, x_margin = 0;
    specs = normalize_specs(std::move(specs), &t_margin, &x_margin);
    std::map<DerivativeSpec, Eigen::MatrixXd> entries;
    for (const auto& s : specs) {
        entries.emplace(s, finite_diff(field, s).values());
    }
    return DerivativeTable(field.grid_ptr(), std::move(entries), t_margin, x_margin);
}

DerivativeTable analytic_table(const std::map<DerivativeSpec, AnalyticFn>& formulas,
                               const GridPtr& grid,
                               std::vector<DerivativeSpec> specs) {
    std::size_t t_margin = 0, x_margin = 0;
    specs = normalize_specs(std::move(specs), &t_margin, &x_margin);
    std::map<DerivativeSpec, Eigen::MatrixXd> entries;
    for (const auto& s : specs) {
        auto it = formulas.find(s);
        if (it == formulas.end()) {
            throw ConfigError("no analytic evaluator for " + spec_name(s));
        }
        Eigen::MatrixXd m(static_cast<Eigen::Index>(grid->nt()),
                          static_cast<Eigen::Index>(grid->nx()));
        for (std::size_t i = 0; i < grid->nt(); ++i) {
            for (std::size_t j = 0; j < grid->nx(); ++j) {
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    it->second(grid->t_axis()[i], grid->x_axis()[j]);
            }
        }
        if (!m.allFinite()) {
            throw DataError("analytic evaluator for " + spec_name(s) +
                            " produced non-finite values");
        }
        entries.emplace(s, std::move(m));
    }
    return DerivativeTable(grid, std::move(entries), 0, 0);
}

} // namespace eqdisc
