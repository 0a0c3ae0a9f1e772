#include "eqdisc/pareto.hpp"

#include <algorithm>
#include <cmath>

namespace eqdisc {

Eigen::Vector2d objective_vector(const Objectives& o) {
    return {o.q_op, static_cast<double>(o.complexity)};
}

bool dominates(const Objectives& a, const Objectives& b) {
    const bool a_inf = std::isinf(a.q_op);
    const bool b_inf = std::isinf(b.q_op);
    if (a_inf) {
        return false;
    }
    if (b_inf) {
        return true;
    }
    const bool le = a.q_op <= b.q_op && a.complexity <= b.complexity;
    const bool ne = a.q_op != b.q_op || a.complexity != b.complexity;
    return le && ne;
}

std::vector<std::vector<int>> nondominated_sort(const std::vector<Objectives>& points) {
    const int n = static_cast<int>(points.size());
    std::vector<int> dominated_by(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> dominated(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && dominates(points[static_cast<std::size_t>(i)],
                                    points[static_cast<std::size_t>(j)])) {
                dominated[static_cast<std::size_t>(i)].push_back(j);
                ++dominated_by[static_cast<std::size_t>(j)];
            }
        }
    }
    std::vector<std::vector<int>> fronts;
    std::vector<int> current;
    for (int i = 0; i < n; ++i) {
        if (dominated_by[static_cast<std::size_t>(i)] == 0) current.push_back(i);
    }
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<int> next;
        for (int i : current) {
            for (int j : dominated[static_cast<std::size_t>(i)]) {
                if (--dominated_by[static_cast<std::size_t>(j)] == 0) {
                    next.push_back(j);
                }
            }
        }
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

double pbi(const Eigen::Vector2d& objectives, const Eigen::Vector2d& weight,
           const Eigen::Vector2d& ideal, double theta) {
    const Eigen::Vector2d dir = weight / weight.norm();
    const Eigen::Vector2d shifted = objectives - ideal;
    const double d1 = shifted.dot(dir);
    const double d2 = (shifted - d1 * dir).norm();
    return d1 + theta * d2;
}

std::vector<WeightSector> make_weight_sectors(int count, int neighborhood) {
    if (count < 2) {
        throw ConfigError("need at least 2 weight sectors");
    }
    if (neighborhood < 1 || neighborhood > count) {
        throw ConfigError("sector neighborhood size out of range");
    }
    std::vector<WeightSector> sectors(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double w = static_cast<double>(i) / static_cast<double>(count - 1);
        sectors[static_cast<std::size_t>(i)].weight = Eigen::Vector2d(w, 1.0 - w);
    }
    for (int i = 0; i < count; ++i) {
        std::vector<int> order(static_cast<std::size_t>(count));
        for (int j = 0; j < count; ++j) order[static_cast<std::size_t>(j)] = j;
        const Eigen::Vector2d& wi = sectors[static_cast<std::size_t>(i)].weight;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            const double da = (sectors[static_cast<std::size_t>(a)].weight - wi).norm();
            const double db = (sectors[static_cast<std::size_t>(b)].weight - wi).norm();
            return da < db;
        });
        order.resize(static_cast<std::size_t>(neighborhood));
        sectors[static_cast<std::size_t>(i)].neighbors = std::move(order);
    }
    return sectors;
}

void ParetoArchive::insert(Individual individual) {
    ideal_(0) = std::min(ideal_(0), individual.objectives.q_op);
    ideal_(1) = std::min(ideal_(1), static_cast<double>(individual.objectives.complexity));
    for (const auto& member : individuals_) {
        if (dominates(member.objectives, individual.objectives)) {
            return;
        }
        if (member.objectives.q_op == individual.objectives.q_op &&
            member.objectives.complexity == individual.objectives.complexity &&
            canonical_form(member.equation).text == canonical_form(individual.equation).text) {
            return; // exact duplicate
        }
    }
    std::erase_if(individuals_, [&](const Individual& member) {
        return dominates(individual.objectives, member.objectives);
    });
    individuals_.push_back(std::move(individual));
}

double ParetoArchive::min_q_op() const {
    const Individual* best = best_q_op();
    return best ? best->objectives.q_op : std::numeric_limits<double>::infinity();
}

const Individual* ParetoArchive::best_q_op() const {
    const Individual* best = nullptr;
    for (const auto& member : individuals_) {
        if (best == nullptr || member.objectives.q_op < best->objectives.q_op) {
            best = &member;
        }
    }
    return best;
}

double hypervolume_2d(const std::vector<Objectives>& points, const Eigen::Vector2d& reference) {
    std::vector<Eigen::Vector2d> inside;
    for (const auto& p : points) {
        if (std::isfinite(p.q_op) && p.q_op < reference(0) &&
            static_cast<double>(p.complexity) < reference(1)) {
            inside.push_back(objective_vector(p));
        }
    }
    if (inside.empty()) {
        return 0.0;
    }
    std::sort(inside.begin(), inside.end(), [](const auto& a, const auto& b) {
        if (a(0) != b(0)) return a(0) < b(0);
        return a(1) < b(1);
    });
    // Staircase sweep in ascending first objective: keep points that
    // improve the second objective, sum the vertical slabs between
    // consecutive kept points.
    std::vector<Eigen::Vector2d> kept;
    double best_c = reference(1);
    for (const auto& p : inside) {
        if (p(1) < best_c) {
            kept.push_back(p);
            best_c = p(1);
        }
    }
    double volume = 0.0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const double q_hi = i + 1 < kept.size() ? kept[i + 1](0) : reference(0);
        volume += (q_hi - kept[i](0)) * (reference(1) - kept[i](1));
    }
    return volume;
}

} // namespace eqdisc
