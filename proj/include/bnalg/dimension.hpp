#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bnalg/matrix.hpp"
#include "bnalg/network.hpp"
#include "bnalg/parameters.hpp"

namespace bnalg {

// Naive Bayes model (r : r_1,...,r_n): one hidden class node with r states,
// n observed features, each feature's only parent the class node.
struct NaiveBayesSpec {
    int r = 0;
    std::vector<int> features;

    // Requires r >= 2, n >= 2, every feature cardinality >= 2.
    NaiveBayesSpec(int r, std::vector<int> features);
};

enum class Classification {
    kEqualsComplete,
    kEqualsStandard,
    kDefectiveBy33,
    kUnknown,
};

std::string to_string(Classification c);
Classification classification_from_string(const std::string& s);

// Dimension of the Segre product of the feature simplices: sum of (r_i - 1).
long long segre_dimension(std::span<const int> cards);

// min(N - 1, r*d + r - 1) with N the observable cell count and d the Segre
// dimension.
long long expected_dimension(const NaiveBayesSpec& nb);

// Flattening upper bound: minimum over unordered bipartitions {B, B^c} of the
// feature set of min(r*(R_B + R_Bc) - r^2, R_B * R_Bc) - 1.
long long dp_bound(const NaiveBayesSpec& nb);

struct CatalisanoResult {
    Classification classification = Classification::kUnknown;
    // Closed-form effective dimension when the classification determines one.
    std::optional<long long> value;
};

// Applies the defectivity window first (n >= 3 only; for n = 2 its bounds
// collapse onto the r < min case), then the two-feature cases, then the
// n >= 3 standard-dimension criteria.
CatalisanoResult classify_catalisano_detail(const NaiveBayesSpec& nb);
Classification classify_catalisano(const NaiveBayesSpec& nb);

// Builds the star-shaped network: features X1..Xn observed, class node H
// hidden and last, each feature's parents = {H}.
NetworkSpec naive_bayes_network(const NaiveBayesSpec& nb);

// Recognizes that shape in an arbitrary network (one hidden node, no parents,
// every observed node's parent set exactly the hidden node).
std::optional<NaiveBayesSpec> detect_naive_bayes(const NetworkSpec& net);

// Jacobian of the observable map at `params`: rows indexed by observable
// cells, columns by free parameters (each conditional row drops its last
// state, whose probability is one minus the rest). Entries computed
// analytically by the product rule. Requires strictly positive parameters.
Matrix<Rational> observable_jacobian(const NetworkSpec& net,
                                     const ParameterAssignment<Rational>& params);

struct EffectiveDimension {
    int exact = 0;
    int numeric = 0;
    int samples_used = 0;
};

// Maximum Jacobian rank over per-seed samples, computed independently by the
// exact and numeric backends. Throws BackendDisagreement if the maxima
// differ after all seeds.
EffectiveDimension effective_dimension(const NetworkSpec& net,
                                       std::span<const std::uint64_t> seeds,
                                       double rank_tol = 1e-9);

struct DimensionReport {
    long long complete = 0;   // observable cells minus one
    long long standard = 0;   // free parameter count
    long long expected = 0;   // min(complete, standard)
    std::optional<long long> dp;  // naive Bayes only
    int effective_exact = 0;
    int effective_numeric = 0;
    Classification classification = Classification::kUnknown;
    int samples_used = 0;
};

DimensionReport dimension_report(const NetworkSpec& net, std::span<const std::uint64_t> seeds,
                                 double rank_tol = 1e-9);

std::string serialize(const DimensionReport& report);

}  // namespace bnalg
