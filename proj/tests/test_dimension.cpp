#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "bnalg/dimension.hpp"
#include "bnalg/errors.hpp"
#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"

using namespace bnalg;

namespace {

const std::array<std::uint64_t, 3> kSeeds{1, 2, 3};

EffectiveDimension effective(const NetworkSpec& net) {
    return effective_dimension(net, std::span<const std::uint64_t>(kSeeds));
}

}  // namespace

TEST_CASE("naive Bayes shape validation") {
    CHECK_THROWS_AS(NaiveBayesSpec(1, {2, 2}), ParseError);
    CHECK_THROWS_AS(NaiveBayesSpec(2, {2}), ParseError);
    CHECK_THROWS_AS(NaiveBayesSpec(2, {}), ParseError);
    CHECK_THROWS_AS(NaiveBayesSpec(2, {2, 1}), ParseError);
    CHECK_NOTHROW(NaiveBayesSpec(2, {2, 2}));
}

TEST_CASE("segre dimension") {
    CHECK(segre_dimension(std::vector<int>{2, 2, 2}) == 3);
    CHECK(segre_dimension(std::vector<int>{3, 3}) == 4);
    CHECK(segre_dimension(std::vector<int>{3, 4, 5}) == 9);
}

TEST_CASE("expected dimension") {
    CHECK(expected_dimension(NaiveBayesSpec(2, {3, 3})) == 8);
    CHECK(expected_dimension(NaiveBayesSpec(3, {3, 3})) == 8);
    CHECK(expected_dimension(NaiveBayesSpec(2, {2, 2, 2})) == 7);
    CHECK(expected_dimension(NaiveBayesSpec(3, {2, 2, 4})) == 15);
    CHECK(expected_dimension(NaiveBayesSpec(3, {2, 3, 4})) == 20);
}

TEST_CASE("flattening bound") {
    CHECK(dp_bound(NaiveBayesSpec(2, {3, 3})) == 7);
    CHECK(dp_bound(NaiveBayesSpec(2, {2, 2, 2})) == 7);
    CHECK(dp_bound(NaiveBayesSpec(2, {2, 2, 2, 2})) == 11);
    CHECK(dp_bound(NaiveBayesSpec(3, {2, 2, 4})) == 14);
}

TEST_CASE("classification") {
    const auto check = [](int r, std::vector<int> features, Classification want,
                          std::optional<long long> value) {
        const auto got = classify_catalisano_detail(NaiveBayesSpec(r, std::move(features)));
        CHECK(got.classification == want);
        CHECK(got.value == value);
    };
    check(2, {2, 2}, Classification::kEqualsComplete, 3);
    check(3, {3, 3}, Classification::kEqualsComplete, 8);
    check(2, {3, 3}, Classification::kEqualsStandard, 7);
    check(2, {2, 2, 2}, Classification::kEqualsStandard, 7);
    check(2, {2, 2, 2, 2}, Classification::kEqualsStandard, 9);
    check(3, {2, 2, 4}, Classification::kDefectiveBy33, std::nullopt);
    check(3, {2, 3, 4}, Classification::kEqualsStandard, 20);
    check(4, {3, 3}, Classification::kUnknown, std::nullopt);
    // Feature order must not matter.
    check(3, {4, 2, 2}, Classification::kDefectiveBy33, std::nullopt);
}

TEST_CASE("classification strings round-trip") {
    for (const auto c : {Classification::kEqualsComplete, Classification::kEqualsStandard,
                         Classification::kDefectiveBy33, Classification::kUnknown}) {
        CHECK(classification_from_string(to_string(c)) == c);
    }
    CHECK(to_string(Classification::kDefectiveBy33) == "DEFECTIVE_BY_3_3");
    CHECK_THROWS_AS(classification_from_string("bogus"), ParseError);
}

TEST_CASE("naive Bayes network construction and recognition") {
    const NaiveBayesSpec spec(3, {2, 4});
    const NetworkSpec net = naive_bayes_network(spec);
    REQUIRE(net.node_count() == 3);
    CHECK(net.node(0).name == "X1");
    CHECK(net.node(0).card == 2);
    CHECK(net.node(0).parents == std::vector<int>{2});
    CHECK(net.node(2).name == "H");
    CHECK(net.node(2).hidden);
    CHECK(net.node(2).card == 3);
    CHECK(net.node(2).parents.empty());

    const auto detected = detect_naive_bayes(net);
    REQUIRE(detected.has_value());
    CHECK(detected->r == 3);
    CHECK(detected->features == std::vector<int>{2, 4});
}

TEST_CASE("naive Bayes recognition rejects other shapes") {
    CHECK_FALSE(detect_naive_bayes(oracles::chain_net()).has_value());
    CHECK_FALSE(detect_naive_bayes(oracles::quad_net(2, 2, 2, 2)).has_value());
    CHECK_FALSE(detect_naive_bayes(oracles::cubic_net(3, 3, 2)).has_value());
    // An edge between two features breaks the star shape.
    const NetworkSpec extra({Node{"X1", 2, {1, 2}, false}, Node{"X2", 2, {2}, false},
                             Node{"H", 2, {}, true}});
    CHECK_FALSE(detect_naive_bayes(extra).has_value());
    // A hidden node with a parent does too.
    const NetworkSpec hp({Node{"X1", 2, {}, false}, Node{"X2", 2, {2}, false},
                          Node{"H", 2, {0}, true}});
    CHECK_FALSE(detect_naive_bayes(hp).has_value());
}

TEST_CASE("Jacobian of a single binary node") {
    const NetworkSpec net(std::vector<Node>{Node{"X1", 2, {}, false}});
    ParameterAssignment<Rational> params;
    params.node_tables.push_back({{{Rational(1, 3), Rational(2, 3)}}});
    const auto jac = observable_jacobian(net, params);
    REQUIRE(jac.rows() == 2);
    REQUIRE(jac.cols() == 1);
    CHECK(jac(0, 0) == Rational(1));
    CHECK(jac(1, 0) == Rational(-1));
}

TEST_CASE("Jacobian matches central finite differences") {
    for (const NetworkSpec& net :
         {oracles::chain_net(2, 2, 2), oracles::quad_net(2, 2, 2, 2),
          naive_bayes_network(NaiveBayesSpec(2, {3, 3}))}) {
        const auto params = sample_parameters(net, 11);
        const auto analytic = to_double(observable_jacobian(net, params));
        const double h = 1e-5;
        const auto fd = oracles::jacobian_fd(net, to_double(params), h);
        REQUIRE(analytic.rows() == fd.rows());
        REQUIRE(analytic.cols() == fd.cols());
        double worst = 0.0;
        for (std::size_t r = 0; r < fd.rows(); ++r) {
            for (std::size_t c = 0; c < fd.cols(); ++c) {
                worst = std::max(worst, std::abs(analytic(r, c) - fd(r, c)));
            }
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("Jacobian of a fully observed network has full standard rank") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const NetworkSpec net = oracles::chain_net(2, 3, 2);
        const auto jac = observable_jacobian(net, sample_parameters(net, seed));
        CHECK(rank_exact(jac) == net.standard_dimension());
    }
}

TEST_CASE("Jacobian requires strictly positive parameters") {
    const NetworkSpec net(std::vector<Node>{Node{"X1", 2, {}, false}});
    ParameterAssignment<Rational> params;
    params.node_tables.push_back({{{Rational(0), Rational(1)}}});
    CHECK_THROWS_AS(observable_jacobian(net, params), ShapeError);

    ParameterAssignment<Rational> wrong;
    CHECK_THROWS_AS(observable_jacobian(net, wrong), ShapeError);
}

TEST_CASE("effective dimension of benchmark models") {
    CHECK(effective(oracles::chain_net()).exact == 5);
    CHECK(effective(naive_bayes_network(NaiveBayesSpec(2, {3, 3}))).exact == 7);
    CHECK(effective(naive_bayes_network(NaiveBayesSpec(3, {3, 3}))).exact == 8);
    CHECK(effective(naive_bayes_network(NaiveBayesSpec(2, {2, 2, 2}))).exact == 7);
    CHECK(effective(naive_bayes_network(NaiveBayesSpec(2, {2, 2, 2, 2}))).exact == 9);

    const auto eff = effective(naive_bayes_network(NaiveBayesSpec(3, {2, 2, 4})));
    CHECK(eff.exact == 14);  // strictly below the expected dimension of 15
    CHECK(eff.numeric == 14);
    CHECK(eff.samples_used == 3);
}

TEST_CASE("effective dimension of the larger classified models") {
    CHECK(effective(naive_bayes_network(NaiveBayesSpec(3, {2, 3, 4}))).exact == 20);
    CHECK(effective(oracles::cubic_net(3, 3, 2)).exact == 15);
}

TEST_CASE("effective dimension is stable across single-seed runs") {
    const NetworkSpec net = naive_bayes_network(NaiveBayesSpec(2, {3, 3}));
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const std::array<std::uint64_t, 1> one{seed};
        CHECK(effective_dimension(net, std::span<const std::uint64_t>(one)).exact == 7);
    }
}

TEST_CASE("effective dimension requires at least one seed") {
    CHECK_THROWS_AS(
        effective_dimension(oracles::chain_net(), std::span<const std::uint64_t>{}),
        ShapeError);
}

TEST_CASE("effective dimension never exceeds expected or flattening bounds") {
    for (const auto& [r, features] :
         std::vector<std::pair<int, std::vector<int>>>{{2, {2, 2}},
                                                       {2, {3, 3}},
                                                       {3, {3, 3}},
                                                       {2, {2, 2, 2}},
                                                       {3, {2, 2, 4}},
                                                       {2, {2, 2, 2, 2}}}) {
        const NaiveBayesSpec nb(r, features);
        const auto eff = effective(naive_bayes_network(nb));
        CAPTURE(r);
        CHECK(eff.exact <= expected_dimension(nb));
        CHECK(eff.exact <= dp_bound(nb));
    }
}

TEST_CASE("dimension report for the chain") {
    const auto report = dimension_report(oracles::chain_net(), std::span<const std::uint64_t>(kSeeds));
    CHECK(report.complete == 7);
    CHECK(report.standard == 5);
    CHECK(report.expected == 5);
    CHECK_FALSE(report.dp.has_value());
    CHECK(report.effective_exact == 5);
    CHECK(report.effective_numeric == 5);
    CHECK(report.classification == Classification::kUnknown);
    CHECK(report.samples_used == 3);
}

TEST_CASE("dimension report for a naive Bayes model") {
    const NetworkSpec net = naive_bayes_network(NaiveBayesSpec(2, {3, 3}));
    const auto report = dimension_report(net, std::span<const std::uint64_t>(kSeeds));
    CHECK(report.complete == 8);
    CHECK(report.standard == 9);
    CHECK(report.expected == 8);
    REQUIRE(report.dp.has_value());
    CHECK(*report.dp == 7);
    CHECK(report.effective_exact == 7);
    CHECK(report.classification == Classification::kEqualsStandard);

    const auto doc = nlohmann::json::parse(serialize(report));
    CHECK(doc["format"] == "bnalg-v1");
    CHECK(doc["complete"] == 8);
    CHECK(doc["standard"] == 9);
    CHECK(doc["expected"] == 8);
    CHECK(doc["dp_bound"] == 7);
    CHECK(doc["effective_exact"] == 7);
    CHECK(doc["effective_numeric"] == 7);
    CHECK(doc["classification"] == "EQUALS_STANDARD");
    CHECK(doc["samples_used"] == 3);
}

TEST_CASE("dimension report omits the flattening bound off the naive Bayes family") {
    const auto doc = nlohmann::json::parse(
        serialize(dimension_report(oracles::chain_net(), std::span<const std::uint64_t>(kSeeds))));
    CHECK_FALSE(doc.contains("dp_bound"));
    CHECK(doc["classification"] == "UNKNOWN");
}
