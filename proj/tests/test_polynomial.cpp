#include <random>
#include <vector>

#include "bnalg/errors.hpp"
#include "bnalg/polynomial.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bnalg;

namespace {

Polynomial random_poly(std::mt19937_64& gen, VarId n_vars) {
    Polynomial p;
    const int terms = 1 + static_cast<int>(gen() % 4);
    for (int t = 0; t < terms; ++t) {
        const long coeff = static_cast<long>(gen() % 21) - 10;
        std::vector<std::pair<VarId, std::uint32_t>> factors;
        const int n_factors = static_cast<int>(gen() % 3);
        for (int f = 0; f < n_factors; ++f) {
            factors.emplace_back(static_cast<VarId>(gen() % n_vars),
                                 1 + static_cast<std::uint32_t>(gen() % 2));
        }
        p = p + Polynomial::term(Monomial(std::move(factors)), Rational(coeff));
    }
    return p;
}

std::vector<Rational> random_cells(std::mt19937_64& gen, std::size_t n) {
    std::vector<Rational> cells;
    for (std::size_t i = 0; i < n; ++i) {
        Rational v(static_cast<long>(gen() % 2001) - 1000, 1 + static_cast<long>(gen() % 50));
        v.canonicalize();
        cells.push_back(v);
    }
    return cells;
}

}  // namespace

TEST_CASE("monomial order is graded with lower ids greater on ties") {
    const Monomial a({{0, 1}, {3, 1}});
    const Monomial b({{1, 1}, {2, 1}});
    CHECK(compare_monomials(a, b) > 0);  // same degree, id 0 beats id 1
    CHECK(compare_monomials(b, a) < 0);
    CHECK(compare_monomials(a, a) == 0);
    CHECK(compare_monomials(Monomial({{5, 3}}), a) > 0);  // higher degree wins
    CHECK(compare_monomials(Monomial::one(), Monomial::variable(7)) < 0);
}

TEST_CASE("monomial normalization merges repeated factors") {
    const Monomial m({{2, 1}, {0, 2}, {2, 1}});
    REQUIRE(m.factors().size() == 2);
    CHECK(m.factors()[0] == std::pair<VarId, std::uint32_t>{0, 2});
    CHECK(m.factors()[1] == std::pair<VarId, std::uint32_t>{2, 2});
    CHECK(m.total_degree() == 4);
    CHECK(Monomial::variable(1) * Monomial::variable(1) == Monomial({{1, 2}}));
}

TEST_CASE("ring identities") {
    const Polynomial a = Polynomial::variable(0);
    CHECK(a + Polynomial::zero() == a);
    CHECK(a + (-a) == Polynomial::zero());
    CHECK(a + a == Polynomial::term(Monomial::variable(0), Rational(2)));
    CHECK(a * Polynomial::constant(Rational(1)) == a);
    CHECK(Polynomial::variable(0) * Polynomial::variable(1) ==
          Polynomial::term(Monomial({{0, 1}, {1, 1}}), Rational(1)));
    const Polynomial b = Polynomial::variable(1);
    CHECK((a - b) * (a + b) == a * a - b * b);
}

TEST_CASE("ring axioms on randomized inputs") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Polynomial p = random_poly(gen, 5);
        const Polynomial q = random_poly(gen, 5);
        const Polynomial s = random_poly(gen, 5);
        CHECK((p + q) + s == p + (q + s));
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK((p * q) * s == p * (q * s));
        CHECK(p * (q + s) == p * q + p * s);
    }
}

TEST_CASE("degree bookkeeping") {
    CHECK(Polynomial::zero().degree() == -1);
    CHECK(Polynomial::constant(Rational(3)).degree() == 0);
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 30; ++trial) {
        const Polynomial p = random_poly(gen, 4);
        const Polynomial q = random_poly(gen, 4);
        if (!p.is_zero() && !q.is_zero()) {
            CHECK((p * q).degree() == p.degree() + q.degree());
        }
    }
}

TEST_CASE("determinant of indeterminate matrices") {
    const auto var = [](VarId id) { return Polynomial::variable(id); };
    // (a, b; c, d) -> ad - bc
    const Polynomial minor = determinant({{var(0), var(1)}, {var(2), var(3)}});
    CHECK(minor == var(0) * var(3) - var(1) * var(2));

    const std::vector<std::vector<Polynomial>> equal_rows{{var(0), var(1)}, {var(0), var(1)}};
    CHECK(determinant(equal_rows).is_zero());

    std::vector<std::vector<Polynomial>> m3(3, std::vector<Polynomial>(3));
    for (VarId i = 0; i < 3; ++i) {
        for (VarId j = 0; j < 3; ++j) m3[i][j] = var(3 * i + j);
    }
    const Polynomial det3 = determinant(m3);
    CHECK(det3.terms().size() == 6);
    CHECK(det3.degree() == 3);
    CHECK(det3 == oracles::determinant_permsum(m3));
}

TEST_CASE("determinant agrees with the permutation-sum oracle for sizes 1..4") {
    std::mt19937_64 gen(13);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n));
            for (auto& row : m) {
                for (auto& entry : row) {
                    entry = Polynomial::constant(Rational(static_cast<long>(gen() % 19) - 9));
                }
            }
            CHECK(determinant(m) == oracles::determinant_permsum(m));
        }
    }
}

TEST_CASE("determinant rejects unsupported shapes") {
    const Polynomial one = Polynomial::constant(Rational(1));
    CHECK_THROWS_AS(determinant({}), ShapeError);
    CHECK_THROWS_AS(determinant({{one, one}}), ShapeError);  // non-square
    std::vector<std::vector<Polynomial>> m5(5, std::vector<Polynomial>(5, one));
    CHECK_THROWS_AS(determinant(m5), ShapeError);
}

TEST_CASE("evaluate substitutes cells") {
    std::mt19937_64 gen(3);
    const auto cells = random_cells(gen, 4);
    CHECK(Polynomial::zero().evaluate(std::span<const Rational>(cells)) == 0);
    CHECK(Polynomial::variable(2).evaluate(std::span<const Rational>(cells)) == cells[2]);

    // Rank-1 2x2 tables kill the 2x2 minor.
    std::vector<Rational> rank1{Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
    for (auto& v : rank1) v.canonicalize();
    const Polynomial minor = Polynomial::variable(0) * Polynomial::variable(3) -
                             Polynomial::variable(1) * Polynomial::variable(2);
    CHECK(minor.evaluate(std::span<const Rational>(rank1)) == 0);
}

TEST_CASE("evaluate is a ring homomorphism") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 30; ++trial) {
        const Polynomial p = random_poly(gen, 4);
        const Polynomial q = random_poly(gen, 4);
        const Polynomial r = random_poly(gen, 4);
        const auto cells = random_cells(gen, 4);
        const std::span<const Rational> view(cells);
        CHECK((p * q + r).evaluate(view) == p.evaluate(view) * q.evaluate(view) + r.evaluate(view));
    }
}

TEST_CASE("evaluate rejects out-of-range indeterminates") {
    const std::vector<Rational> cells(3, Rational(1));
    CHECK_THROWS_AS(Polynomial::variable(3).evaluate(std::span<const Rational>(cells)),
                    ShapeError);
    const std::vector<double> fcells(3, 0.5);
    CHECK_THROWS_AS(Polynomial::variable(7).evaluate(std::span<const double>(fcells)), ShapeError);
}

TEST_CASE("marginal coordinate patterns") {
    const StateSpace observed({3, 2, 2});
    // No '+' marker: a single indeterminate.
    const std::vector<int> fixed{1, 0, 1};
    CHECK(marginal_coordinate(observed, fixed) ==
          Polynomial::variable(static_cast<VarId>(observed.linear_index(fixed))));
    // (+, j, k): an r_1-term linear form.
    const std::vector<int> first_summed{-1, 1, 0};
    const Polynomial form = marginal_coordinate(observed, first_summed);
    CHECK(form.terms().size() == 3);
    CHECK(form.degree() == 1);
    // All '+': the total mass form.
    const std::vector<int> all{-1, -1, -1};
    CHECK(marginal_coordinate(observed, all).terms().size() == observed.cell_count());

    CHECK_THROWS_AS(marginal_coordinate(observed, std::vector<int>{0, 0}), ShapeError);
    CHECK_THROWS_AS(marginal_coordinate(observed, std::vector<int>{3, 0, 0}), ShapeError);
    CHECK_THROWS_AS(marginal_coordinate(observed, std::vector<int>{-2, 0, 0}), ShapeError);
}

TEST_CASE("canonical text format") {
    const StateSpace observed({2, 2});
    CHECK(canonical_text(Polynomial::zero(), observed) == "0");
    const Polynomial minor = Polynomial::variable(0) * Polynomial::variable(3) -
                             Polynomial::variable(1) * Polynomial::variable(2);
    CHECK(canonical_text(minor, observed) == "+1 t[0,0]t[1,1] -1 t[0,1]t[1,0]");
    // Constants, fractions and exponents all render and parse.
    const Polynomial mixed = Polynomial::term(Monomial({{1, 2}}), Rational(-3, 2)) +
                             Polynomial::constant(Rational(5));
    CHECK(canonical_text(mixed, observed) == "-3/2 t[0,1]^2 +5");
    CHECK(parse_polynomial("-3/2 t[0,1]^2 +5", observed) == mixed);
}

TEST_CASE("canonical text round-trips") {
    const StateSpace observed({3, 3});
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 50; ++trial) {
        const Polynomial p = random_poly(gen, 9);
        CHECK(parse_polynomial(canonical_text(p, observed), observed) == p);
    }
}

TEST_CASE("polynomial text parse errors") {
    const StateSpace observed({2, 2});
    CHECK_THROWS_AS(parse_polynomial("", observed), ParseError);
    CHECK_THROWS_AS(parse_polynomial("1 t[0,0]", observed), ParseError);    // missing sign
    CHECK_THROWS_AS(parse_polynomial("+1 t[0]", observed), ParseError);     // wrong arity
    CHECK_THROWS_AS(parse_polynomial("+1 t[2,0]", observed), ParseError);   // state out of range
    CHECK_THROWS_AS(parse_polynomial("+1 t[0,0]^0", observed), ParseError); // zero exponent
    CHECK_THROWS_AS(parse_polynomial("+x t[0,0]", observed), ParseError);
    CHECK_THROWS_AS(parse_polynomial("+1 u[0,0]", observed), ParseError);
}

TEST_CASE("sign normalization flips negative leading coefficients") {
    const Polynomial p = Polynomial::variable(1) - Polynomial::variable(0);
    const Polynomial n = p.sign_normalized();
    REQUIRE(!n.is_zero());
    CHECK(n.terms().front().second > 0);
    CHECK(n == -p);
    CHECK(n.sign_normalized() == n);
    CHECK(Polynomial::zero().sign_normalized() == Polynomial::zero());
}

TEST_CASE("coefficient l1 norm") {
    const Polynomial p = Polynomial::term(Monomial::variable(0), Rational(-3, 2)) +
                         Polynomial::constant(Rational(1, 2));
    CHECK(p.coefficient_l1_norm() == doctest::Approx(2.0));
    CHECK(Polynomial::zero().coefficient_l1_norm() == 0.0);
}
