#include "eqdisc/representation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace eqdisc {

namespace {

long long round6(double v) {
    return std::llround(v * 1e6);
}

std::string format_sig(double v, int sig_digits) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", sig_digits, v);
    return buf;
}

int max_order_for(Axis axis) {
    return axis == Axis::Time ? 2 : 3;
}

void check_spec(const DerivativeSpec& spec) {
    if (spec.order < 0 || spec.order > max_order_for(spec.axis)) {
        throw ConfigError("unsupported derivative order for " + spec_name(spec));
    }
}

// Ordering key per token: axis, order, kind, exponent, family, rounded
// frequency, rounded phase.
std::array<long long, 7> order_key(const Token& t) {
    switch (t.kind) {
    case TokenKind::Derivative:
        return {static_cast<long long>(t.spec.axis), t.spec.order, 0, 1, 0, 0, 0};
    case TokenKind::Power:
        return {static_cast<long long>(t.spec.axis), t.spec.order, 1, t.exponent, 0, 0, 0};
    case TokenKind::Parametric:
    default:
        return {static_cast<long long>(t.arg_axis), 0, 2, 0,
                static_cast<long long>(t.family), round6(t.frequency), round6(t.phase)};
    }
}

} // namespace

Token Token::derivative(Axis axis, int order) {
    Token t;
    t.kind = TokenKind::Derivative;
    t.spec = deriv(axis, order);
    check_spec(t.spec);
    return t;
}

Token Token::power(DerivativeSpec spec, int exponent) {
    if (exponent < 2 || exponent > 3) {
        throw ConfigError("power token exponent must be 2 or 3");
    }
    Token t;
    t.kind = TokenKind::Power;
    t.spec = deriv(spec.axis, spec.order);
    check_spec(t.spec);
    t.exponent = exponent;
    return t;
}

Token Token::parametric(TrigFamily family, Axis axis, double frequency, double phase) {
    if (!(frequency > 0.0)) {
        throw ConfigError("parametric token frequency must be positive");
    }
    Token t;
    t.kind = TokenKind::Parametric;
    t.family = family;
    t.arg_axis = axis;
    t.frequency = frequency;
    t.phase = phase;
    return t;
}

int compare(const Token& a, const Token& b) {
    const auto ka = order_key(a);
    const auto kb = order_key(b);
    if (ka < kb) return -1;
    if (kb < ka) return 1;
    return 0;
}

bool operator==(const Token& a, const Token& b) { return compare(a, b) == 0; }
bool operator<(const Token& a, const Token& b) { return compare(a, b) < 0; }

bool same_structure(const Token& a, const Token& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == TokenKind::Parametric) {
        return a.family == b.family && a.arg_axis == b.arg_axis;
    }
    return compare(a, b) == 0;
}

std::string Token::render() const {
    switch (kind) {
    case TokenKind::Derivative:
        return spec_name(spec);
    case TokenKind::Power: {
        const std::string base = spec_name(spec);
        const std::string wrapped = spec.order == 0 ? base : "(" + base + ")";
        return wrapped + "^" + std::to_string(exponent);
    }
    case TokenKind::Parametric:
    default: {
        std::string arg;
        const std::string w = format_sig(frequency, 6);
        const char axis_c = arg_axis == Axis::Time ? 't' : 'x';
        if (w == "1") {
            arg = std::string(1, axis_c);
        } else {
            arg = w + "*" + axis_c;
        }
        if (round6(phase) != 0) {
            const std::string p = format_sig(std::abs(phase), 6);
            arg += (phase < 0 ? "-" : "+") + p;
        }
        return std::string(family == TrigFamily::Cos ? "cos" : "sin") + "(" + arg + ")";
    }
    }
}

Term Term::of(std::vector<Token> tokens) {
    std::sort(tokens.begin(), tokens.end());
    return Term{std::move(tokens)};
}

int compare(const Term& a, const Term& b) {
    const std::size_t n = std::min(a.tokens.size(), b.tokens.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = compare(a.tokens[i], b.tokens[i]);
        if (c != 0) return c;
    }
    if (a.tokens.size() < b.tokens.size()) return -1;
    if (a.tokens.size() > b.tokens.size()) return 1;
    return 0;
}

bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

bool same_structure(const Term& a, const Term& b) {
    if (a.tokens.size() != b.tokens.size()) return false;
    for (std::size_t i = 0; i < a.tokens.size(); ++i) {
        if (!same_structure(a.tokens[i], b.tokens[i])) return false;
    }
    return true;
}

std::string Term::render() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out += "*";
        out += tokens[i].render();
    }
    return out;
}

bool term_valid(const Term& term, int max_factors) {
    if (term.tokens.empty() || term.token_count() > max_factors) {
        return false;
    }
    int high_order_derivs = 0;
    for (const auto& t : term.tokens) {
        if (t.kind == TokenKind::Derivative && t.spec.order >= 1) {
            ++high_order_derivs;
        }
    }
    if (high_order_derivs > 1) {
        return false;
    }
    for (std::size_t i = 1; i < term.tokens.size(); ++i) {
        if (term.tokens[i].kind == TokenKind::Parametric &&
            term.tokens[i] == term.tokens[i - 1]) {
            return false;
        }
    }
    return true;
}

void TokenPool::validate() const {
    if (derivatives.empty()) {
        throw ConfigError("token pool must contain at least one derivative token");
    }
    for (const auto& s : derivatives) check_spec(s);
    for (const auto& p : powers) {
        if (p.kind != TokenKind::Power || p.exponent < 2 || p.exponent > 3) {
            throw ConfigError("invalid power token in pool");
        }
        check_spec(p.spec);
    }
    for (const auto& f : parametrics) {
        if (!(f.freq_min > 0.0) || !(f.freq_max >= f.freq_min)) {
            throw ConfigError("parametric frequency bounds must satisfy 0 < min <= max");
        }
        if (!(f.phase_max >= f.phase_min)) {
            throw ConfigError("parametric phase bounds must satisfy min <= max");
        }
        if (f.freq_lattice.empty()) {
            throw ConfigError("parametric frequency lattice is empty");
        }
    }
    if (max_factors < 1) {
        throw ConfigError("max_factors must be at least 1");
    }
    if (max_terms < 2) {
        throw ConfigError("max_terms must be at least 2");
    }
}

std::size_t TokenPool::template_count() const {
    return derivatives.size() + powers.size() + parametrics.size();
}

std::vector<DerivativeSpec> TokenPool::required_specs() const {
    std::vector<DerivativeSpec> specs = derivatives;
    for (const auto& p : powers) {
        specs.push_back(p.spec);
    }
    std::sort(specs.begin(), specs.end());
    specs.erase(std::unique(specs.begin(), specs.end()), specs.end());
    return specs;
}

Token TokenPool::sample_token(Rng& rng) const {
    const std::size_t total = template_count();
    std::uniform_int_distribution<std::size_t> pick(0, total - 1);
    std::size_t idx = pick(rng);
    if (idx < derivatives.size()) {
        return Token::derivative(derivatives[idx].axis, derivatives[idx].order);
    }
    idx -= derivatives.size();
    if (idx < powers.size()) {
        return powers[idx];
    }
    idx -= powers.size();
    const ParametricFamilySpec& f = parametrics[idx];
    std::uniform_real_distribution<double> freq(f.freq_min, f.freq_max);
    std::uniform_real_distribution<double> phase(f.phase_min, f.phase_max);
    const double w = freq(rng);
    const double p = f.phase_min == f.phase_max ? f.phase_min : phase(rng);
    return Token::parametric(f.family, f.axis, w, p);
}

const ParametricFamilySpec* TokenPool::family_spec(const Token& token) const {
    if (token.kind != TokenKind::Parametric) return nullptr;
    for (const auto& f : parametrics) {
        if (f.family == token.family && f.axis == token.arg_axis) return &f;
    }
    return nullptr;
}

std::string Equation::render_structure() const {
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (static_cast<int>(i) == rhs_index) continue;
        if (!first) out += " + ";
        out += terms[i].render();
        first = false;
    }
    out += " = " + rhs().render();
    return out;
}

Equation make_equation(std::vector<Term> terms, int rhs_index, double lambda) {
    if (terms.size() < 2) {
        throw ConfigError("equation needs at least 2 terms");
    }
    if (rhs_index < 0 || rhs_index >= static_cast<int>(terms.size())) {
        throw ConfigError("rhs index out of range");
    }
    std::vector<std::size_t> order(terms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return compare(terms[a], terms[b]) < 0;
    });
    Equation eq;
    eq.terms.reserve(terms.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (static_cast<int>(order[k]) == rhs_index) {
            eq.rhs_index = static_cast<int>(k);
        }
        eq.terms.push_back(std::move(terms[order[k]]));
    }
    for (std::size_t i = 1; i < eq.terms.size(); ++i) {
        if (eq.terms[i] == eq.terms[i - 1]) {
            throw ConfigError("duplicate term in equation: " + eq.terms[i].render());
        }
    }
    eq.lambda = lambda;
    return eq;
}

Eigen::ArrayXd evaluate_token(const Token& token, const DerivativeTable& table) {
    switch (token.kind) {
    case TokenKind::Derivative:
        return table.extract(token.spec);
    case TokenKind::Power: {
        Eigen::ArrayXd base = table.extract(token.spec);
        return token.exponent == 2 ? (base * base).eval() : (base * base * base).eval();
    }
    case TokenKind::Parametric:
    default: {
        const Eigen::ArrayXd& coord =
            token.arg_axis == Axis::Time ? table.mask_t() : table.mask_x();
        Eigen::ArrayXd arg = token.frequency * coord + token.phase;
        return token.family == TrigFamily::Cos ? arg.cos().eval() : arg.sin().eval();
    }
    }
}

Eigen::ArrayXd evaluate_term(const Term& term, const DerivativeTable& table) {
    Eigen::ArrayXd out = evaluate_token(term.tokens.front(), table);
    for (std::size_t i = 1; i < term.tokens.size(); ++i) {
        out *= evaluate_token(term.tokens[i], table);
    }
    return out;
}

CanonicalForm canonical_form(const Equation& equation, int sig_digits) {
    if (!equation.fitted) {
        throw ConfigError("canonical_form requires a fitted equation");
    }
    CanonicalForm out;
    if (equation.degenerate) {
        out.terms.push_back(equation.rhs());
        out.coefficients.push_back(1.0);
        out.text = equation.rhs().render() + " = 0";
        return out;
    }
    // Full signed coefficient per term: fitted value for non-RHS terms,
    // -1 for the RHS.
    std::size_t j = 0;
    for (std::size_t i = 0; i < equation.terms.size(); ++i) {
        double c;
        if (static_cast<int>(i) == equation.rhs_index) {
            c = -1.0;
        } else {
            c = equation.coefficients.at(j);
            ++j;
        }
        if (c != 0.0) {
            out.terms.push_back(equation.terms[i]);
            out.coefficients.push_back(c);
        }
    }
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < out.coefficients.size(); ++i) {
        if (std::abs(out.coefficients[i]) > std::abs(out.coefficients[pivot])) {
            pivot = i;
        }
    }
    const double divisor = out.coefficients[pivot];
    for (auto& c : out.coefficients) {
        c /= divisor;
    }
    std::string text;
    for (std::size_t i = 0; i < out.terms.size(); ++i) {
        const double c = out.coefficients[i];
        const std::string mag = format_sig(std::abs(c), sig_digits);
        if (i == 0) {
            if (c < 0) text += "-";
        } else {
            text += c < 0 ? " - " : " + ";
        }
        if (mag != "1") {
            text += mag + "*";
        }
        text += out.terms[i].render();
    }
    text += " = 0";
    out.text = std::move(text);
    return out;
}

namespace {

constexpr int kRetryBudget = 64;

bool contains_term(const std::vector<Term>& terms, const Term& t) {
    for (const auto& existing : terms) {
        if (existing == t) return true;
    }
    return false;
}

} // namespace

Term random_term(const TokenPool& pool, Rng& rng) {
    std::uniform_int_distribution<int> size_dist(1, pool.max_factors);
    const int k = size_dist(rng);
    std::vector<Token> tokens;
    for (int i = 0; i < k; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < kRetryBudget && !placed; ++attempt) {
            Token tok = pool.sample_token(rng);
            tokens.push_back(tok);
            Term candidate = Term::of(tokens);
            if (term_valid(candidate, pool.max_factors)) {
                placed = true;
            } else {
                tokens.pop_back();
            }
        }
        if (!placed) {
            break; // accept the shorter term
        }
    }
    return Term::of(std::move(tokens));
}

Equation random_equation(const TokenPool& pool, Rng& rng) {
    pool.validate();
    std::uniform_int_distribution<int> count_dist(2, pool.max_terms);
    const int n_terms = count_dist(rng);
    std::vector<Term> terms;
    terms.reserve(static_cast<std::size_t>(n_terms));
    for (int i = 0; i < n_terms; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < kRetryBudget && !placed; ++attempt) {
            Term t = random_term(pool, rng);
            if (!contains_term(terms, t)) {
                terms.push_back(std::move(t));
                placed = true;
            }
        }
        if (!placed) {
            throw ConfigError("token pool cannot produce " + std::to_string(n_terms) +
                              " distinct terms (retry budget exhausted)");
        }
    }
    std::uniform_int_distribution<int> rhs_dist(0, n_terms - 1);
    return make_equation(std::move(terms), rhs_dist(rng), 0.05);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

DerivativeSpec parse_deriv_name(const std::string& name) {
    if (name == "u") {
        return deriv(Axis::Time, 0);
    }
    if (name.size() >= 3 && name.rfind("u_", 0) == 0) {
        const std::string suffix = name.substr(2);
        const char c = suffix[0];
        if ((c == 't' || c == 'x') &&
            suffix.find_first_not_of(c) == std::string::npos) {
            const Axis axis = c == 't' ? Axis::Time : Axis::Space;
            const int order = static_cast<int>(suffix.size());
            if (order <= max_order_for(axis)) {
                return deriv(axis, order);
            }
            throw ConfigError("derivative order too high in pool item '" + name + "'");
        }
    }
    throw ConfigError("unrecognized pool item '" + name + "'");
}

std::string deriv_short_name(const DerivativeSpec& s) {
    if (s.order == 0) return "u";
    return "u_" + std::string(static_cast<std::size_t>(s.order),
                              s.axis == Axis::Time ? 't' : 'x');
}

} // namespace

TokenPool parse_pool(const std::string& text) {
    TokenPool pool;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        if (item.rfind("max_factors=", 0) == 0) {
            pool.max_factors = std::stoi(item.substr(12));
            continue;
        }
        if (item.rfind("max_terms=", 0) == 0) {
            pool.max_terms = std::stoi(item.substr(10));
            continue;
        }
        if (item.rfind("sin(", 0) == 0 || item.rfind("cos(", 0) == 0) {
            ParametricFamilySpec f;
            f.family = item[0] == 's' ? TrigFamily::Sin : TrigFamily::Cos;
            const std::size_t close = item.find(')');
            if (close != 5 || (item[4] != 't' && item[4] != 'x')) {
                throw ConfigError("unrecognized pool item '" + item + "'");
            }
            f.axis = item[4] == 't' ? Axis::Time : Axis::Space;
            std::string rest = item.substr(6);
            if (!rest.empty()) {
                if (rest[0] != ':') {
                    throw ConfigError("unrecognized pool item '" + item + "'");
                }
                const std::size_t second = rest.find(':', 1);
                if (second == std::string::npos) {
                    throw ConfigError("parametric bounds need ':min:max' in '" + item + "'");
                }
                f.freq_min = std::stod(rest.substr(1, second - 1));
                f.freq_max = std::stod(rest.substr(second + 1));
                f.freq_lattice.clear();
                for (int k = 0; k < 4; ++k) {
                    f.freq_lattice.push_back(f.freq_min +
                                             k * (f.freq_max - f.freq_min) / 3.0);
                }
            }
            pool.parametrics.push_back(std::move(f));
            continue;
        }
        const std::size_t caret = item.find('^');
        if (caret != std::string::npos) {
            const DerivativeSpec base = parse_deriv_name(item.substr(0, caret));
            const int e = std::stoi(item.substr(caret + 1));
            pool.powers.push_back(Token::power(base, e));
            continue;
        }
        pool.derivatives.push_back(parse_deriv_name(item));
    }
    std::sort(pool.derivatives.begin(), pool.derivatives.end());
    pool.derivatives.erase(std::unique(pool.derivatives.begin(), pool.derivatives.end()),
                           pool.derivatives.end());
    std::sort(pool.powers.begin(), pool.powers.end());
    pool.validate();
    return pool;
}

std::string format_pool(const TokenPool& pool) {
    std::string out;
    auto append = [&out](const std::string& s) {
        if (!out.empty()) out += ",";
        out += s;
    };
    for (const auto& d : pool.derivatives) {
        append(deriv_short_name(d));
    }
    for (const auto& p : pool.powers) {
        append(deriv_short_name(p.spec) + "^" + std::to_string(p.exponent));
    }
    for (const auto& f : pool.parametrics) {
        std::string s = std::string(f.family == TrigFamily::Cos ? "cos" : "sin") + "(" +
                        (f.axis == Axis::Time ? "t" : "x") + ")";
        if (f.freq_min != 0.5 || f.freq_max != 2.0) {
            s += ":" + format_sig(f.freq_min, 6) + ":" + format_sig(f.freq_max, 6);
        }
        append(s);
    }
    append("max_factors=" + std::to_string(pool.max_factors));
    append("max_terms=" + std::to_string(pool.max_terms));
    return out;
}

} // namespace eqdisc
