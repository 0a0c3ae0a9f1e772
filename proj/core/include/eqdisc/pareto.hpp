#ifndef EQDISC_PARETO_HPP
#define EQDISC_PARETO_HPP

#include "eqdisc/objectives.hpp"

namespace eqdisc {

/// Candidate equation with its evaluated objectives.
struct Individual {
    Equation equation;
    Objectives objectives;
};

/// Minimization dominance: a <= b componentwise and a != b. Candidates
/// with the infinite discrepancy sentinel are dominated by every finite
/// vector and dominate nothing.
bool dominates(const Objectives& a, const Objectives& b);

/// Fronts in ascending dominance rank; order within a front follows the
/// input order.
std::vector<std::vector<int>> nondominated_sort(const std::vector<Objectives>& points);

/// Penalty-based boundary intersection: d1 + theta * d2 of (f - ideal)
/// against the weight direction (normalized internally).
double pbi(const Eigen::Vector2d& objectives, const Eigen::Vector2d& weight,
           const Eigen::Vector2d& ideal, double theta);

/// Decomposition sector: a weight vector on the 2-simplex lattice and the
/// indices of its K nearest sectors (self included).
struct WeightSector {
    Eigen::Vector2d weight;
    std::vector<int> neighbors;
};

std::vector<WeightSector> make_weight_sectors(int count, int neighborhood);

/// Mutually non-dominated set plus the componentwise-minimum ideal point.
class ParetoArchive {
public:
    const std::vector<Individual>& individuals() const { return individuals_; }
    const Eigen::Vector2d& ideal() const { return ideal_; }
    bool empty() const { return individuals_.empty(); }
    std::size_t size() const { return individuals_.size(); }

    /// Inserts unless dominated by or duplicating a member; evicts members
    /// the newcomer dominates. Updates the ideal point either way.
    void insert(Individual individual);

    double min_q_op() const;
    const Individual* best_q_op() const;

private:
    std::vector<Individual> individuals_;
    Eigen::Vector2d ideal_{std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity()};
};

/// 2-D hypervolume of the set against a reference point; points outside
/// the reference box contribute nothing.
double hypervolume_2d(const std::vector<Objectives>& points, const Eigen::Vector2d& reference);

Eigen::Vector2d objective_vector(const Objectives& o);

} // namespace eqdisc

#endif
