#ifndef EQDISC_REPRESENTATION_HPP
#define EQDISC_REPRESENTATION_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eqdisc/derivatives.hpp"

namespace eqdisc {

using Rng = std::mt19937_64;

enum class TokenKind { Derivative = 0, Power = 1, Parametric = 2 };
enum class TrigFamily { Cos = 0, Sin = 1 };

/// Elementary factor: a derivative of the variable, an integer power of a
/// derivative, or a parametric sine/cosine of one coordinate. Tokens are
/// ordered by (axis, order, kind, exponent, family, parameters rounded at
/// 1e-6); equality uses the same rounded key.
struct Token {
    TokenKind kind = TokenKind::Derivative;
    DerivativeSpec spec{};      // Derivative, Power
    int exponent = 1;           // Power: 2..3
    TrigFamily family = TrigFamily::Cos; // Parametric
    Axis arg_axis = Axis::Time; // Parametric
    double frequency = 0.0;     // Parametric
    double phase = 0.0;         // Parametric

    static Token derivative(Axis axis, int order);
    static Token power(DerivativeSpec spec, int exponent);
    static Token parametric(TrigFamily family, Axis axis, double frequency, double phase);

    std::string render() const;
};

int compare(const Token& a, const Token& b);
bool operator==(const Token& a, const Token& b);
bool operator<(const Token& a, const Token& b);

/// Same structure disregarding parametric parameter values.
bool same_structure(const Token& a, const Token& b);

/// Product of tokens; tokens are kept sorted so a term is its token
/// multiset. Valid terms carry at most one derivative token of order >= 1
/// and no duplicated parametric tokens.
struct Term {
    std::vector<Token> tokens;

    static Term of(std::vector<Token> tokens); // sorts
    std::string render() const;
    int token_count() const { return static_cast<int>(tokens.size()); }
};

int compare(const Term& a, const Term& b);
bool operator==(const Term& a, const Term& b);
bool operator<(const Term& a, const Term& b);
bool same_structure(const Term& a, const Term& b);

/// Checks the term invariants (size, derivative-token cap, no duplicate
/// parametric tokens). Returns false instead of throwing; construction
/// sites decide how to react.
bool term_valid(const Term& term, int max_factors);

/// Parametric token family admitted by a pool: family, argument axis,
/// parameter bounds for random sampling / mutation, and the discrete
/// lattice enumerated by the brute-force oracle.
struct ParametricFamilySpec {
    TrigFamily family = TrigFamily::Cos;
    Axis axis = Axis::Time;
    double freq_min = 0.5, freq_max = 2.0;
    double phase_min = 0.0, phase_max = 0.0;
    std::vector<double> freq_lattice{0.5, 1.0, 1.5, 2.0};
    std::vector<double> phase_lattice{0.0};
};

/// The token universe a search runs over, with the structural caps.
struct TokenPool {
    std::vector<DerivativeSpec> derivatives;
    std::vector<Token> powers;
    std::vector<ParametricFamilySpec> parametrics;
    int max_factors = 2;
    int max_terms = 5;

    void validate() const;
    std::size_t template_count() const;
    /// All derivative specs needed to evaluate pool tokens.
    std::vector<DerivativeSpec> required_specs() const;
    Token sample_token(Rng& rng) const;
    const ParametricFamilySpec* family_spec(const Token& token) const;
};

/// Linear combination of product terms with one term marked as the
/// regression target. Terms are stored sorted in the canonical order and
/// are pairwise distinct. `coefficients` holds one value per non-RHS term
/// (in term order) once fitted.
struct Equation {
    std::vector<Term> terms;
    int rhs_index = 0;
    std::vector<double> coefficients;
    double lambda = 0.05;
    bool fitted = false;
    bool degenerate = false;

    const Term& rhs() const { return terms[static_cast<std::size_t>(rhs_index)]; }
    std::string render_structure() const;
};

/// Sorts terms, remaps rhs_index accordingly, checks pairwise
/// distinctness and size bounds.
Equation make_equation(std::vector<Term> terms, int rhs_index, double lambda);

Eigen::ArrayXd evaluate_token(const Token& token, const DerivativeTable& table);
Eigen::ArrayXd evaluate_term(const Term& term, const DerivativeTable& table);

/// Canonical rendering of a fitted equation: RHS folded to the left with
/// coefficient -1, zero-coefficient terms dropped, terms sorted, all
/// coefficients divided by the one with the largest magnitude, rendered
/// at the requested number of significant digits (6 by default).
struct CanonicalForm {
    std::vector<Term> terms;
    std::vector<double> coefficients;
    std::string text;
};

CanonicalForm canonical_form(const Equation& equation, int sig_digits = 6);

/// Random equation: term count uniform in [2, max_terms], term sizes
/// uniform in [1, max_factors], RHS uniform. Deterministic for a fixed
/// seed. Throws ConfigError when the pool cannot produce enough distinct
/// terms within the retry budget.
Equation random_equation(const TokenPool& pool, Rng& rng);

/// Random single term subject to the pool caps and term invariants.
Term random_term(const TokenPool& pool, Rng& rng);

/// Pool description string: comma-separated derivative names, power
/// tokens like u^2, parametric entries like sin(t) or cos(t):0.5:2, and
/// the caps max_factors=N / max_terms=N.
TokenPool parse_pool(const std::string& text);
std::string format_pool(const TokenPool& pool);

} // namespace eqdisc

#endif
