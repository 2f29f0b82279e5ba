#include "bnalg/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace bnalg {

Monomial::Monomial(std::vector<std::pair<VarId, std::uint32_t>> factors)
    : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end());
    std::vector<std::pair<VarId, std::uint32_t>> merged;
    for (const auto& [id, exp] : factors_) {
        if (exp == 0) continue;
        if (!merged.empty() && merged.back().first == id) {
            merged.back().second += exp;
        } else {
            merged.emplace_back(id, exp);
        }
    }
    factors_ = std::move(merged);
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& [id, exp] : factors_) d += static_cast<int>(exp);
    return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
    std::vector<std::pair<VarId, std::uint32_t>> merged;
    merged.reserve(factors_.size() + other.factors_.size());
    std::size_t i = 0, j = 0;
    while (i < factors_.size() || j < other.factors_.size()) {
        if (j == other.factors_.size() ||
            (i < factors_.size() && factors_[i].first < other.factors_[j].first)) {
            merged.push_back(factors_[i++]);
        } else if (i == factors_.size() || other.factors_[j].first < factors_[i].first) {
            merged.push_back(other.factors_[j++]);
        } else {
            merged.emplace_back(factors_[i].first, factors_[i].second + other.factors_[j].second);
            ++i;
            ++j;
        }
    }
    Monomial result;
    result.factors_ = std::move(merged);
    return result;
}

int compare_monomials(const Monomial& a, const Monomial& b) {
    const int da = a.total_degree();
    const int db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    // Lexicographic tie-break treating lower ids as the greater variables:
    // at the first id where exponents differ, the larger exponent wins.
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t i = 0, j = 0;
    while (i < fa.size() && j < fb.size()) {
        if (fa[i].first != fb[j].first) return fa[i].first < fb[j].first ? 1 : -1;
        if (fa[i].second != fb[j].second) return fa[i].second < fb[j].second ? -1 : 1;
        ++i;
        ++j;
    }
    if (i < fa.size()) return 1;
    if (j < fb.size()) return -1;
    return 0;
}

namespace {

// Sorts terms in decreasing monomial order, merges equal monomials, and
// drops zero coefficients.
std::vector<std::pair<Monomial, Rational>> normalize(
    std::vector<std::pair<Monomial, Rational>> terms) {
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return compare_monomials(a.first, b.first) > 0;
    });
    std::vector<std::pair<Monomial, Rational>> merged;
    for (auto& [mono, coeff] : terms) {
        if (!merged.empty() && compare_monomials(merged.back().first, mono) == 0) {
            merged.back().second += coeff;
            if (merged.back().second == 0) merged.pop_back();
        } else if (coeff != 0) {
            merged.emplace_back(std::move(mono), std::move(coeff));
        }
    }
    return merged;
}

Polynomial from_terms(std::vector<std::pair<Monomial, Rational>> terms) {
    Polynomial p;
    for (auto& [mono, coeff] : normalize(std::move(terms))) {
        p = p + Polynomial::term(std::move(mono), std::move(coeff));
    }
    return p;
}

}  // namespace

Polynomial Polynomial::constant(Rational c) { return term(Monomial::one(), std::move(c)); }

Polynomial Polynomial::variable(VarId id) { return term(Monomial::variable(id), Rational(1)); }

Polynomial Polynomial::term(Monomial m, Rational c) {
    Polynomial p;
    if (c != 0) p.terms_.emplace_back(std::move(m), std::move(c));
    return p;
}

int Polynomial::degree() const {
    if (terms_.empty()) return -1;
    // Leading term has maximal monomial order, which is graded first.
    return terms_.front().first.total_degree();
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    // Both inputs are canonical, so a single sorted merge suffices.
    std::vector<std::pair<Monomial, Rational>> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < other.terms_.size()) {
        int cmp;
        if (i == terms_.size()) {
            cmp = -1;
        } else if (j == other.terms_.size()) {
            cmp = 1;
        } else {
            cmp = compare_monomials(terms_[i].first, other.terms_[j].first);
        }
        if (cmp > 0) {
            merged.push_back(terms_[i++]);
        } else if (cmp < 0) {
            merged.push_back(other.terms_[j++]);
        } else {
            Rational c = terms_[i].second + other.terms_[j].second;
            if (c != 0) merged.emplace_back(terms_[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    Polynomial result;
    result.terms_ = std::move(merged);
    return result;
}

Polynomial Polynomial::operator-() const {
    Polynomial result = *this;
    for (auto& [mono, coeff] : result.terms_) coeff = -coeff;
    return result;
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + (-other); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
    std::vector<std::pair<Monomial, Rational>> products;
    products.reserve(terms_.size() * other.terms_.size());
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : other.terms_) {
            products.emplace_back(ma * mb, ca * cb);
        }
    }
    Polynomial result;
    result.terms_ = normalize(std::move(products));
    return result;
}

Rational Polynomial::evaluate(std::span<const Rational> cells) const {
    Rational total(0);
    for (const auto& [mono, coeff] : terms_) {
        Rational value = coeff;
        for (const auto& [id, exp] : mono.factors()) {
            if (id >= cells.size()) {
                throw ShapeError("polynomial references cell " + std::to_string(id) +
                                 " but table has " + std::to_string(cells.size()) + " cells");
            }
            for (std::uint32_t e = 0; e < exp; ++e) value *= cells[id];
        }
        total += value;
    }
    return total;
}

double Polynomial::evaluate(std::span<const double> cells) const {
    double total = 0.0;
    for (const auto& [mono, coeff] : terms_) {
        double value = to_double(coeff);
        for (const auto& [id, exp] : mono.factors()) {
            if (id >= cells.size()) {
                throw ShapeError("polynomial references cell " + std::to_string(id) +
                                 " but table has " + std::to_string(cells.size()) + " cells");
            }
            for (std::uint32_t e = 0; e < exp; ++e) value *= cells[id];
        }
        total += value;
    }
    return total;
}

double Polynomial::coefficient_l1_norm() const {
    Rational total(0);
    for (const auto& [mono, coeff] : terms_) total += abs(coeff);
    return to_double(total);
}

Polynomial Polynomial::sign_normalized() const {
    if (terms_.empty() || terms_.front().second > 0) return *this;
    return -*this;
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m) {
    const std::size_t n = m.size();
    if (n < 1 || n > 4) {
        throw ShapeError("determinant supports sizes 1..4, got " + std::to_string(n));
    }
    for (const auto& row : m) {
        if (row.size() != n) throw ShapeError("determinant requires a square matrix");
    }
    if (n == 1) return m[0][0];
    // Cofactor expansion along the first row.
    Polynomial result;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Polynomial>> minor(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                if (c != j) minor[r - 1].push_back(m[r][c]);
            }
        }
        Polynomial contribution = m[0][j] * determinant(minor);
        result = (j % 2 == 0) ? result + contribution : result - contribution;
    }
    return result;
}

Polynomial marginal_coordinate(const StateSpace& observed, std::span<const int> pattern) {
    if (pattern.size() != observed.rank()) {
        throw ShapeError("pattern has " + std::to_string(pattern.size()) +
                         " positions, observed space has " + std::to_string(observed.rank()));
    }
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (pattern[i] < -1 || pattern[i] >= observed.cards()[i]) {
            throw ShapeError("pattern entry " + std::to_string(pattern[i]) +
                             " out of range at position " + std::to_string(i));
        }
    }
    std::vector<std::pair<Monomial, Rational>> terms;
    std::vector<int> multi(observed.rank(), 0);
    do {
        bool matches = true;
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            if (pattern[i] >= 0 && pattern[i] != multi[i]) {
                matches = false;
                break;
            }
        }
        if (matches) {
            const auto id = static_cast<VarId>(observed.linear_index(multi));
            terms.emplace_back(Monomial::variable(id), Rational(1));
        }
    } while (observed.next(multi));
    Polynomial p;
    p = from_terms(std::move(terms));
    return p;
}

std::string canonical_text(const Polynomial& p, const StateSpace& observed) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, coeff] : p.terms()) {
        if (!first) out << ' ';
        first = false;
        out << (coeff < 0 ? '-' : '+') << to_string(abs(coeff));
        if (mono.is_one()) continue;
        out << ' ';
        for (const auto& [id, exp] : mono.factors()) {
            if (id >= observed.cell_count()) {
                throw ShapeError("indeterminate id " + std::to_string(id) +
                                 " outside observed space");
            }
            out << "t[";
            const auto multi = observed.multi_index(id);
            for (std::size_t i = 0; i < multi.size(); ++i) {
                if (i > 0) out << ',';
                out << multi[i];
            }
            out << ']';
            if (exp > 1) out << '^' << exp;
        }
    }
    return out.str();
}

namespace {

[[noreturn]] void bad_text(const std::string& text) {
    throw ParseError("malformed polynomial text: \"" + text + "\"");
}

// Parses one "t[i,j,...]" factor with optional "^e", starting at pos.
std::pair<VarId, std::uint32_t> parse_factor(const std::string& tok, std::size_t& pos,
                                             const StateSpace& observed,
                                             const std::string& full_text) {
    if (pos + 1 >= tok.size() || tok[pos] != 't' || tok[pos + 1] != '[') bad_text(full_text);
    pos += 2;
    std::vector<int> multi;
    while (true) {
        std::size_t start = pos;
        while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos == start || pos >= tok.size()) bad_text(full_text);
        multi.push_back(std::atoi(tok.substr(start, pos - start).c_str()));
        if (tok[pos] == ',') {
            ++pos;
        } else if (tok[pos] == ']') {
            ++pos;
            break;
        } else {
            bad_text(full_text);
        }
    }
    if (multi.size() != observed.rank()) bad_text(full_text);
    for (std::size_t i = 0; i < multi.size(); ++i) {
        if (multi[i] >= observed.cards()[i]) bad_text(full_text);
    }
    std::uint32_t exp = 1;
    if (pos < tok.size() && tok[pos] == '^') {
        ++pos;
        std::size_t start = pos;
        while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos == start) bad_text(full_text);
        exp = static_cast<std::uint32_t>(std::atoi(tok.substr(start, pos - start).c_str()));
        if (exp == 0) bad_text(full_text);
    }
    return {static_cast<VarId>(observed.linear_index(multi)), exp};
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, const StateSpace& observed) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    if (tokens.empty()) bad_text(text);
    if (tokens.size() == 1 && tokens[0] == "0") return Polynomial::zero();

    std::vector<std::pair<Monomial, Rational>> terms;
    std::size_t i = 0;
    while (i < tokens.size()) {
        const std::string& head = tokens[i];
        if (head.size() < 2 || (head[0] != '+' && head[0] != '-') ||
            !std::isdigit(static_cast<unsigned char>(head[1]))) {
            bad_text(text);
        }
        Rational coeff = rational_from_string(head.substr(1));
        if (head[0] == '-') coeff = -coeff;
        ++i;
        Monomial mono;
        if (i < tokens.size() && tokens[i][0] == 't') {
            const std::string& vars = tokens[i];
            std::size_t pos = 0;
            std::vector<std::pair<VarId, std::uint32_t>> factors;
            while (pos < vars.size()) {
                factors.push_back(parse_factor(vars, pos, observed, text));
            }
            mono = Monomial(std::move(factors));
            ++i;
        }
        terms.emplace_back(std::move(mono), std::move(coeff));
    }
    Polynomial p;
    p = from_terms(std::move(terms));
    return p;
}

}  // namespace bnalg
