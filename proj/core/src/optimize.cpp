#include "eqdisc/optimize.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>

namespace eqdisc {

namespace {

char* format_double(char* buf, std::size_t n, double v) {
    std::snprintf(buf, n, "%.17g", v);
    return buf;
}

Individual make_individual(Equation equation, const DerivativeTable& table, long* evaluations) {
    FitResult fit = fit_equation(equation, table);
    ++*evaluations;
    Objectives obj{fit.residual_rms, eval_complexity(fit.equation)};
    return Individual{std::move(fit.equation), obj};
}

Individual random_individual(const TokenPool& pool, double lambda, const DerivativeTable& table,
                             Rng& rng, long* evaluations) {
    Equation eq = random_equation(pool, rng);
    eq.lambda = lambda;
    return make_individual(std::move(eq), table, evaluations);
}

int tournament_pick(const std::vector<Individual>& population, Rng& rng) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(population.size()) - 1);
    const int a = pick(rng);
    const int b = pick(rng);
    return population[static_cast<std::size_t>(b)].objectives.q_op <
                   population[static_cast<std::size_t>(a)].objectives.q_op
               ? b
               : a;
}

} // namespace

void SearchConfig::validate() const {
    if (population < 2) {
        throw ConfigError("population must be at least 2");
    }
    if (iterations < 0) {
        throw ConfigError("iterations must be nonnegative");
    }
    if (lambda < 0.0) {
        throw ConfigError("lambda must be nonnegative");
    }
    if (delta < 0.0 || delta > 1.0) {
        throw ConfigError("delta must be in [0, 1]");
    }
    if (neighborhood < 1) {
        throw ConfigError("neighborhood must be at least 1");
    }
    if (parent_fraction <= 0.0 || parent_fraction > 1.0) {
        throw ConfigError("parent_fraction must be in (0, 1]");
    }
    if (!(theta >= 0.0)) {
        throw ConfigError("theta must be nonnegative");
    }
    operators.validate();
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
    std::string out = "iteration,evaluations,best_q_op,archive_size,hypervolume\n";
    char buf[40];
    for (const auto& row : trace) {
        out += std::to_string(row.iteration);
        out += ',';
        out += std::to_string(row.evaluations);
        out += ',';
        out += format_double(buf, sizeof(buf), row.best_q_op);
        out += ',';
        out += std::to_string(row.archive_size);
        out += ',';
        out += format_double(buf, sizeof(buf), row.hypervolume);
        out += '\n';
    }
    return out;
}

SingleObjectiveResult run_single_objective(const DerivativeTable& table, const TokenPool& pool,
                                           const SearchConfig& config) {
    config.validate();
    pool.validate();
    Rng rng(config.seed);
    long evaluations = 0;

    std::vector<Individual> population;
    population.reserve(static_cast<std::size_t>(config.population));
    for (int i = 0; i < config.population; ++i) {
        population.push_back(random_individual(pool, config.lambda, table, rng, &evaluations));
    }

    auto best_of = [](const std::vector<Individual>& pop) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pop.size(); ++i) {
            if (pop[i].objectives.q_op < pop[best].objectives.q_op) best = i;
        }
        return best;
    };

    Individual best_ever = population[best_of(population)];
    std::vector<TraceRow> trace;
    trace.push_back({0, evaluations, best_ever.objectives.q_op, 1, 0.0});

    for (int gen = 1; gen <= config.iterations; ++gen) {
        std::vector<Individual> next;
        next.reserve(population.size());
        next.push_back(best_ever); // elitism
        while (static_cast<int>(next.size()) < config.population) {
            const Individual& pa = population[static_cast<std::size_t>(tournament_pick(population, rng))];
            const Individual& pb = population[static_cast<std::size_t>(tournament_pick(population, rng))];
            auto [ca, cb] = crossover(pa.equation, pb.equation, config.operators, rng);
            for (Equation* child : {&ca, &cb}) {
                if (static_cast<int>(next.size()) >= config.population) break;
                Equation mutated = mutate(*child, pool, config.operators, rng);
                mutated.lambda = config.lambda;
                next.push_back(make_individual(std::move(mutated), table, &evaluations));
            }
        }
        population = std::move(next);
        const std::size_t best = best_of(population);
        if (population[best].objectives.q_op < best_ever.objectives.q_op) {
            best_ever = population[best];
        }
        trace.push_back({gen, evaluations, best_ever.objectives.q_op, 1, 0.0});
    }
    return SingleObjectiveResult{std::move(best_ever), std::move(trace), evaluations};
}

namespace {

// PBI with the degenerate-equation sentinel mapped to +infinity so the
// projection math never sees non-finite inputs.
double pbi_safe(const Objectives& objectives, const Eigen::Vector2d& weight,
                const Eigen::Vector2d& ideal, double theta) {
    if (!std::isfinite(objectives.q_op) || !ideal.allFinite()) {
        return std::numeric_limits<double>::infinity();
    }
    return pbi(objective_vector(objectives), weight, ideal, theta);
}

// Index of the sector whose PBI value for this point is minimal.
int associate_sector(const Objectives& objectives, const std::vector<WeightSector>& sectors,
                     const Eigen::Vector2d& ideal, double theta) {
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < sectors.size(); ++s) {
        const double v = pbi_safe(objectives, sectors[s].weight, ideal, theta);
        if (v < best_value) {
            best_value = v;
            best = static_cast<int>(s);
        }
    }
    return best;
}

} // namespace

MoeaddResult run_moeadd(const DerivativeTable& table, const TokenPool& pool,
                        const SearchConfig& config) {
    config.validate();
    pool.validate();
    Rng rng(config.seed);
    long evaluations = 0;

    const auto sectors = make_weight_sectors(config.population,
                                             std::min(config.neighborhood, config.population));

    std::vector<Individual> population;
    ParetoArchive archive;
    Eigen::Vector2d ideal{std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity()};
    auto update_ideal = [&ideal](const Objectives& o) {
        if (std::isfinite(o.q_op)) {
            ideal(0) = std::min(ideal(0), o.q_op);
        }
        ideal(1) = std::min(ideal(1), static_cast<double>(o.complexity));
    };

    for (int i = 0; i < config.population; ++i) {
        Individual ind = random_individual(pool, config.lambda, table, rng, &evaluations);
        update_ideal(ind.objectives);
        archive.insert(ind);
        population.push_back(std::move(ind));
    }

    // Fixed hypervolume reference for the whole run.
    double max_finite_q = 0.0;
    for (const auto& ind : population) {
        if (std::isfinite(ind.objectives.q_op)) {
            max_finite_q = std::max(max_finite_q, ind.objectives.q_op);
        }
    }
    const Eigen::Vector2d reference(std::max(1.0, 2.0 * max_finite_q),
                                    static_cast<double>(pool.max_terms * pool.max_factors + 1));

    auto archive_objectives = [&archive]() {
        std::vector<Objectives> out;
        out.reserve(archive.size());
        for (const auto& ind : archive.individuals()) out.push_back(ind.objectives);
        return out;
    };

    std::vector<TraceRow> trace;
    double last_hv = hypervolume_2d(archive_objectives(), reference);
    trace.push_back({0, evaluations, archive.min_q_op(), static_cast<int>(archive.size()), last_hv});

    const int parents_per_sector = static_cast<int>(
        std::ceil(config.parent_fraction * static_cast<double>(config.population)));

    for (int iter = 1; iter <= config.iterations; ++iter) {
        for (std::size_t s = 0; s < sectors.size(); ++s) {
            // Parent pool: with probability delta the individuals attached
            // to the K-neighborhood, otherwise the whole population.
            std::bernoulli_distribution in_neighborhood(config.delta);
            std::vector<int> pool_indices;
            if (config.delta > 0.0 && in_neighborhood(rng)) {
                std::vector<int> assoc(population.size());
                for (std::size_t i = 0; i < population.size(); ++i) {
                    assoc[i] = associate_sector(population[i].objectives, sectors, ideal,
                                                config.theta);
                }
                for (std::size_t i = 0; i < population.size(); ++i) {
                    for (int nb : sectors[s].neighbors) {
                        if (assoc[i] == nb) {
                            pool_indices.push_back(static_cast<int>(i));
                            break;
                        }
                    }
                }
            }
            if (pool_indices.empty()) {
                pool_indices.resize(population.size());
                for (std::size_t i = 0; i < population.size(); ++i) {
                    pool_indices[i] = static_cast<int>(i);
                }
            }

            std::uniform_int_distribution<std::size_t> pick(0, pool_indices.size() - 1);
            std::vector<int> parents;
            parents.reserve(static_cast<std::size_t>(parents_per_sector));
            for (int k = 0; k < parents_per_sector; ++k) {
                parents.push_back(pool_indices[pick(rng)]);
            }

            std::vector<Equation> offspring;
            for (std::size_t k = 0; k + 1 < parents.size(); k += 2) {
                const Equation& pa = population[static_cast<std::size_t>(parents[k])].equation;
                const Equation& pb = population[static_cast<std::size_t>(parents[k + 1])].equation;
                auto [ca, cb] = crossover(pa, pb, config.operators, rng);
                offspring.push_back(std::move(ca));
                offspring.push_back(std::move(cb));
            }
            if (parents.size() % 2 == 1) {
                offspring.push_back(population[static_cast<std::size_t>(parents.back())].equation);
            }

            for (Equation& child : offspring) {
                Equation mutated = mutate(child, pool, config.operators, rng);
                mutated.lambda = config.lambda;
                Individual ind = make_individual(std::move(mutated), table, &evaluations);
                update_ideal(ind.objectives);
                archive.insert(ind);

                // Dominance-then-decomposition update: add, sort, evict the
                // worst-PBI member of the most crowded sector of the last
                // front.
                population.push_back(std::move(ind));
                std::vector<Objectives> points;
                points.reserve(population.size());
                for (const auto& p : population) points.push_back(p.objectives);
                const auto fronts = nondominated_sort(points);
                const auto& last_front = fronts.back();

                std::vector<int> sector_of(last_front.size());
                std::vector<int> count(sectors.size(), 0);
                for (std::size_t li = 0; li < last_front.size(); ++li) {
                    sector_of[li] = associate_sector(points[static_cast<std::size_t>(last_front[li])],
                                                     sectors, ideal, config.theta);
                    ++count[static_cast<std::size_t>(sector_of[li])];
                }
                int crowded = 0;
                for (std::size_t si = 1; si < count.size(); ++si) {
                    if (count[si] > count[static_cast<std::size_t>(crowded)]) {
                        crowded = static_cast<int>(si);
                    }
                }
                int evict = -1;
                double worst = -std::numeric_limits<double>::infinity();
                for (std::size_t li = 0; li < last_front.size(); ++li) {
                    if (sector_of[li] != crowded) continue;
                    const int idx = last_front[li];
                    const double v =
                        pbi_safe(points[static_cast<std::size_t>(idx)],
                                 sectors[static_cast<std::size_t>(crowded)].weight, ideal,
                                 config.theta);
                    if (v >= worst) { // ties evict the later (newer) index
                        worst = v;
                        evict = idx;
                    }
                }
                assert(evict >= 0);
                population.erase(population.begin() + evict);
            }
        }
        const double hv = hypervolume_2d(archive_objectives(), reference);
        assert(hv >= last_hv - 1e-12);
        last_hv = hv;
        trace.push_back({iter, evaluations, archive.min_q_op(),
                         static_cast<int>(archive.size()), hv});
    }
    return MoeaddResult{std::move(archive), std::move(trace), evaluations};
}

} // namespace eqdisc
