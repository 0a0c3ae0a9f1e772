#include "eqdisc/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <numeric>

namespace eqdisc {

namespace {

constexpr int kRetryBudget = 64;

void warn_retry_exhausted() {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true)) {
        std::cerr << "eqdisc: warning: mutation retry budget exhausted, term left unchanged\n";
    }
}

bool duplicate_against(const std::vector<Term>& terms, const Term& candidate,
                       std::size_t skip_index) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i == skip_index) continue;
        if (terms[i] == candidate) return true;
    }
    return false;
}

enum class MutationAction { ReplaceTerm, SwapToken, JitterParam };

bool has_parametric(const Term& term) {
    return std::any_of(term.tokens.begin(), term.tokens.end(), [](const Token& t) {
        return t.kind == TokenKind::Parametric;
    });
}

} // namespace

void OperatorConfig::validate() const {
    if (crossover_rate < 0.0 || crossover_rate > 1.0) {
        throw ConfigError("crossover_rate must be in [0, 1]");
    }
    if (mutation_rate < 0.0 || mutation_rate > 1.0) {
        throw ConfigError("mutation_rate must be in [0, 1]");
    }
    if (!(param_sigma > 0.0)) {
        throw ConfigError("param_sigma must be positive");
    }
}

Token jitter_parametric(const Token& token, const ParametricFamilySpec& family, double sigma,
                        bool jitter_frequency, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double z = normal(rng);
    Token out = token;
    if (jitter_frequency) {
        const double range = family.freq_max - family.freq_min;
        out.frequency =
            std::clamp(token.frequency + sigma * range * z, family.freq_min, family.freq_max);
    } else {
        const double range = family.phase_max - family.phase_min;
        out.phase = std::clamp(token.phase + sigma * range * z, family.phase_min, family.phase_max);
    }
    return out;
}

Equation mutate(const Equation& equation, const TokenPool& pool, const OperatorConfig& config,
                Rng& rng) {
    pool.validate();
    config.validate();
    std::vector<Term> terms = equation.terms;
    std::bernoulli_distribution hit(config.mutation_rate);

    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (config.mutation_rate == 0.0 || !hit(rng)) {
            continue;
        }
        const Term original = terms[i];
        const bool parametric_available = has_parametric(original);
        std::uniform_int_distribution<int> action_dist(0, parametric_available ? 2 : 1);
        const auto action = static_cast<MutationAction>(action_dist(rng));

        bool changed = false;
        for (int attempt = 0; attempt < kRetryBudget && !changed; ++attempt) {
            Term candidate = original;
            switch (action) {
            case MutationAction::ReplaceTerm:
                candidate = random_term(pool, rng);
                break;
            case MutationAction::SwapToken: {
                std::uniform_int_distribution<std::size_t> pos(0, original.tokens.size() - 1);
                const std::size_t slot = pos(rng);
                std::vector<Token> tokens = original.tokens;
                tokens[slot] = pool.sample_token(rng);
                candidate = Term::of(std::move(tokens));
                break;
            }
            case MutationAction::JitterParam: {
                std::vector<std::size_t> slots;
                for (std::size_t k = 0; k < original.tokens.size(); ++k) {
                    if (original.tokens[k].kind == TokenKind::Parametric) slots.push_back(k);
                }
                std::uniform_int_distribution<std::size_t> pos(0, slots.size() - 1);
                const std::size_t slot = slots[pos(rng)];
                const Token& tok = original.tokens[slot];
                const ParametricFamilySpec* family = pool.family_spec(tok);
                if (family == nullptr) {
                    break; // token family absent from pool; try again
                }
                const bool phase_jitterable = family->phase_max > family->phase_min;
                bool pick_freq = true;
                if (phase_jitterable) {
                    std::bernoulli_distribution which(0.5);
                    pick_freq = which(rng);
                }
                std::vector<Token> tokens = original.tokens;
                tokens[slot] = jitter_parametric(tok, *family, config.param_sigma, pick_freq, rng);
                candidate = Term::of(std::move(tokens));
                break;
            }
            }
            if (!(candidate == original) && term_valid(candidate, pool.max_factors) &&
                !duplicate_against(terms, candidate, i)) {
                terms[i] = std::move(candidate);
                changed = true;
            }
        }
        if (!changed) {
            warn_retry_exhausted();
        }
    }

    Equation out = make_equation(std::move(terms), equation.rhs_index, equation.lambda);
    return out;
}

namespace {

// Matches parametric-parameter partners within a structure-equal term
// pair and draws child parameters from the closed interval between the
// parents' values.
Term blend_parametric(const Term& own, const Term& other, Rng& rng) {
    std::vector<Token> tokens = own.tokens;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
        Token& mine = tokens[k];
        const Token& theirs = other.tokens[k];
        if (mine.kind != TokenKind::Parametric) continue;
        if (mine.frequency != theirs.frequency) {
            std::uniform_real_distribution<double> dist(std::min(mine.frequency, theirs.frequency),
                                                        std::max(mine.frequency, theirs.frequency));
            mine.frequency = dist(rng);
        }
        if (mine.phase != theirs.phase) {
            std::uniform_real_distribution<double> dist(std::min(mine.phase, theirs.phase),
                                                        std::max(mine.phase, theirs.phase));
            mine.phase = dist(rng);
        }
    }
    return Term::of(std::move(tokens));
}

} // namespace

std::pair<Equation, Equation> crossover(const Equation& a, const Equation& b,
                                        const OperatorConfig& config, Rng& rng) {
    config.validate();
    std::vector<Term> child_a = a.terms;
    std::vector<Term> child_b = b.terms;
    std::vector<bool> used_b(child_b.size(), false);

    // Group 1: identical terms, left untouched. Group 2: same structure,
    // different parametric parameters. Group 3: the rest.
    std::vector<std::pair<std::size_t, std::size_t>> param_pairs;
    std::vector<std::size_t> unique_a;
    std::vector<std::size_t> unique_b;

    for (std::size_t i = 0; i < child_a.size(); ++i) {
        bool matched = false;
        for (std::size_t j = 0; j < child_b.size(); ++j) {
            if (!used_b[j] && child_a[i] == child_b[j]) {
                used_b[j] = true;
                matched = true;
                break;
            }
        }
        if (matched) continue;
        for (std::size_t j = 0; j < child_b.size(); ++j) {
            if (!used_b[j] && same_structure(child_a[i], child_b[j])) {
                used_b[j] = true;
                param_pairs.emplace_back(i, j);
                matched = true;
                break;
            }
        }
        if (!matched) {
            unique_a.push_back(i);
        }
    }
    for (std::size_t j = 0; j < child_b.size(); ++j) {
        if (!used_b[j]) unique_b.push_back(j);
    }

    std::bernoulli_distribution exchange(config.crossover_rate);

    for (const auto& [i, j] : param_pairs) {
        if (config.crossover_rate == 0.0 || !exchange(rng)) continue;
        Term na = blend_parametric(child_a[i], child_b[j], rng);
        Term nb = blend_parametric(child_b[j], child_a[i], rng);
        if (!duplicate_against(child_a, na, i)) child_a[i] = std::move(na);
        if (!duplicate_against(child_b, nb, j)) child_b[j] = std::move(nb);
    }

    // Unique terms: random bijection over the shorter list, whole-term
    // swaps; surplus terms stay with their parent.
    const std::size_t m = std::min(unique_a.size(), unique_b.size());
    if (m > 0) {
        std::vector<std::size_t> perm(unique_b.size());
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t k = perm.size(); k > 1; --k) {
            std::uniform_int_distribution<std::size_t> pick(0, k - 1);
            std::swap(perm[k - 1], perm[pick(rng)]);
        }
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t i = unique_a[k];
            const std::size_t j = unique_b[perm[k]];
            if (config.crossover_rate == 0.0 || !exchange(rng)) continue;
            if (duplicate_against(child_a, child_b[j], i) ||
                duplicate_against(child_b, child_a[i], j)) {
                continue; // keep parent terms on conflict
            }
            std::swap(child_a[i], child_b[j]);
        }
    }

    return {make_equation(std::move(child_a), a.rhs_index, a.lambda),
            make_equation(std::move(child_b), b.rhs_index, b.lambda)};
}

} // namespace eqdisc
