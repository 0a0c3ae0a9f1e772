#include "eqdisc/oracle.hpp"

#include <algorithm>

#include "eqdisc/objectives.hpp"

namespace eqdisc {

std::vector<Term> enumerate_terms(const TokenPool& pool) {
    pool.validate();
    std::vector<Token> universe;
    for (const auto& d : pool.derivatives) {
        universe.push_back(Token::derivative(d.axis, d.order));
    }
    for (const auto& p : pool.powers) {
        universe.push_back(p);
    }
    for (const auto& f : pool.parametrics) {
        for (double w : f.freq_lattice) {
            for (double p : f.phase_lattice) {
                universe.push_back(Token::parametric(f.family, f.axis, w, p));
            }
        }
    }
    std::sort(universe.begin(), universe.end());

    std::vector<Term> terms;
    std::vector<Token> scratch;
    // Multisets with repetition in non-decreasing universe order.
    auto recurse = [&](auto&& self, std::size_t start) -> void {
        if (!scratch.empty()) {
            Term t = Term::of(scratch);
            if (term_valid(t, pool.max_factors)) {
                terms.push_back(std::move(t));
            }
        }
        if (static_cast<int>(scratch.size()) >= pool.max_factors) {
            return;
        }
        for (std::size_t i = start; i < universe.size(); ++i) {
            scratch.push_back(universe[i]);
            self(self, i);
            scratch.pop_back();
        }
    };
    recurse(recurse, 0);

    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    return terms;
}

std::size_t count_equations(std::size_t term_count, int max_terms, std::size_t cap) {
    std::size_t total = 0;
    const int k_max = std::min<int>(max_terms, static_cast<int>(term_count));
    for (int k = 2; k <= k_max; ++k) {
        // C(term_count, k) with saturation.
        long double c = 1.0L;
        for (int i = 0; i < k; ++i) {
            c = c * static_cast<long double>(term_count - static_cast<std::size_t>(i)) /
                static_cast<long double>(i + 1);
            if (c > static_cast<long double>(cap) * 2.0L) {
                return cap + 1;
            }
        }
        total += static_cast<std::size_t>(c + 0.5L);
        if (total > cap) {
            return cap + 1;
        }
    }
    return total;
}

OracleResult brute_force_oracle(const DerivativeTable& table, const TokenPool& pool,
                                double lambda, std::size_t budget) {
    const std::vector<Term> terms = enumerate_terms(pool);
    const std::size_t count = count_equations(terms.size(), pool.max_terms, budget);
    if (count > budget) {
        throw ConfigError("oracle enumeration budget exceeded: more than " +
                          std::to_string(budget) + " candidate equations over " +
                          std::to_string(terms.size()) + " terms");
    }

    OracleResult result;
    double best_q = std::numeric_limits<double>::infinity();
    bool have_best = false;

    std::vector<std::size_t> pick;
    auto evaluate_subset = [&]() {
        std::vector<Term> subset;
        subset.reserve(pick.size());
        for (std::size_t idx : pick) {
            subset.push_back(terms[idx]);
        }
        Equation eq = make_equation(std::move(subset), 0, lambda);
        FitResult fit = fit_equation(eq, table);
        ++result.enumerated;
        if (!have_best || fit.residual_rms < best_q) {
            have_best = true;
            best_q = fit.residual_rms;
            result.best =
                Individual{fit.equation, Objectives{fit.residual_rms,
                                                    eval_complexity(fit.equation)}};
        }
    };
    auto recurse = [&](auto&& self, std::size_t start) -> void {
        if (pick.size() >= 2) {
            evaluate_subset();
        }
        if (static_cast<int>(pick.size()) >= pool.max_terms) {
            return;
        }
        for (std::size_t i = start; i < terms.size(); ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    recurse(recurse, 0);

    if (!have_best) {
        throw ConfigError("token pool yields no candidate equations");
    }
    return result;
}

} // namespace eqdisc
