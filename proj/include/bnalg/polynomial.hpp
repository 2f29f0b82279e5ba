#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bnalg/errors.hpp"
#include "bnalg/rational.hpp"
#include "bnalg/state_space.hpp"

namespace bnalg {

// Variables are observable table cells, identified by the row-major linear
// index of their multi-index in the observed state space.
using VarId = std::uint32_t;

// Product of variables with positive exponents, factors sorted by id.
class Monomial {
public:
    Monomial() = default;

    // Normalizes: sorts by id, merges repeats, drops zero exponents.
    explicit Monomial(std::vector<std::pair<VarId, std::uint32_t>> factors);

    static Monomial one() { return Monomial(); }
    static Monomial variable(VarId id) { return Monomial({{id, 1}}); }

    const std::vector<std::pair<VarId, std::uint32_t>>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    int total_degree() const;

    Monomial operator*(const Monomial& other) const;
    bool operator==(const Monomial& other) const = default;

private:
    std::vector<std::pair<VarId, std::uint32_t>> factors_;
};

// Graded order, ties broken lexicographically with lower ids ranking higher.
// Returns <0, 0, >0 like a three-way comparison.
int compare_monomials(const Monomial& a, const Monomial& b);

// Sparse multivariate polynomial with exact rational coefficients, stored in
// canonical form: terms sorted in decreasing monomial order, no zero
// coefficients. Two polynomials are equal iff their term lists are equal.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(Rational c);
    static Polynomial variable(VarId id);
    static Polynomial term(Monomial m, Rational c);

    const std::vector<std::pair<Monomial, Rational>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // -1 for the zero polynomial.
    int degree() const;

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator-() const;
    bool operator==(const Polynomial& other) const = default;

    // Substitutes cell values for variables. Throws ShapeError when a
    // variable's id falls outside the cell span.
    Rational evaluate(std::span<const Rational> cells) const;
    double evaluate(std::span<const double> cells) const;

    // Sum of absolute coefficient values, as a double.
    double coefficient_l1_norm() const;

    // Negates if the leading coefficient is negative, so equal constraints
    // compare equal regardless of how their minors were expanded.
    Polynomial sign_normalized() const;

private:
    std::vector<std::pair<Monomial, Rational>> terms_;
};

// Cofactor expansion over the polynomial ring. Sizes 1..4 only; the
// determinantal constraint families never need more.
Polynomial determinant(const std::vector<std::vector<Polynomial>>& m);

// Linear form summing every observable cell that matches `pattern`, where -1
// marks a position summed out and other entries fix a state.
Polynomial marginal_coordinate(const StateSpace& observed, std::span<const int> pattern);

// Canonical text: terms in decreasing monomial order, each rendered as an
// explicitly signed rational coefficient followed by its variables, e.g.
//   +1 t[0,0]t[1,1] -1 t[0,1]t[1,0]
// The zero polynomial renders as "0". parse_polynomial inverts exactly.
std::string canonical_text(const Polynomial& p, const StateSpace& observed);
Polynomial parse_polynomial(const std::string& text, const StateSpace& observed);

}  // namespace bnalg
