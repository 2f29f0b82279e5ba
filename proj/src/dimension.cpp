#include "bnalg/dimension.hpp"

#include <algorithm>
#include <numeric>

#include "bnalg/errors.hpp"
#include "json.hpp"

namespace bnalg {

NaiveBayesSpec::NaiveBayesSpec(int r_in, std::vector<int> features_in)
    : r(r_in), features(std::move(features_in)) {
    if (r < 2) throw ParseError("naive Bayes class count must be >= 2");
    if (features.size() < 2) throw ParseError("naive Bayes needs at least 2 features");
    for (int f : features) {
        if (f < 2) throw ParseError("naive Bayes feature cardinalities must be >= 2");
    }
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::kEqualsComplete: return "EQUALS_COMPLETE";
        case Classification::kEqualsStandard: return "EQUALS_STANDARD";
        case Classification::kDefectiveBy33: return "DEFECTIVE_BY_3_3";
        case Classification::kUnknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

Classification classification_from_string(const std::string& s) {
    if (s == "EQUALS_COMPLETE") return Classification::kEqualsComplete;
    if (s == "EQUALS_STANDARD") return Classification::kEqualsStandard;
    if (s == "DEFECTIVE_BY_3_3") return Classification::kDefectiveBy33;
    if (s == "UNKNOWN") return Classification::kUnknown;
    throw ParseError("unknown classification \"" + s + "\"");
}

long long segre_dimension(std::span<const int> cards) {
    long long d = 0;
    for (int c : cards) d += c - 1;
    return d;
}

namespace {

long long observable_cells(const NaiveBayesSpec& nb) {
    long long n = 1;
    for (int f : nb.features) n *= f;
    return n;
}

}  // namespace

long long expected_dimension(const NaiveBayesSpec& nb) {
    const long long d = segre_dimension(nb.features);
    return std::min(observable_cells(nb) - 1, nb.r * d + nb.r - 1);
}

long long dp_bound(const NaiveBayesSpec& nb) {
    const std::size_t n = nb.features.size();
    const long long r = nb.r;
    long long best = -1;
    // Masks containing feature 0 enumerate each unordered bipartition once.
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 2) {
        long long rb = 1, rbc = 1;
        for (std::size_t i = 0; i < n; ++i) {
            ((mask >> i) & 1 ? rb : rbc) *= nb.features[i];
        }
        if (rbc == 1) continue;  // complement must be nonempty
        const long long secant = std::min(r * (rb + rbc) - r * r, rb * rbc) - 1;
        if (best < 0 || secant < best) best = secant;
    }
    return best;
}

CatalisanoResult classify_catalisano_detail(const NaiveBayesSpec& nb) {
    std::vector<int> s = nb.features;
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    const long long r = nb.r;
    const long long rmin = s.front();
    const long long rmax = s.back();

    // Defectivity window. Skipped for n = 2, where its bounds reduce to the
    // r < min(r_1, r_2) case handled below with its own dimension value.
    if (n >= 3) {
        long long prod_head = 1, sum_head = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            prod_head *= s[i];
            sum_head += s[i] - 1;
        }
        const long long lo = prod_head - sum_head + 1;
        const long long hi = std::min(rmax, prod_head - 1);
        if (lo <= r && r <= hi) return {Classification::kDefectiveBy33, std::nullopt};
    }

    if (n == 2) {
        if (r == rmin) {
            return {Classification::kEqualsComplete, s[0] * static_cast<long long>(s[1]) - 1};
        }
        if (r < rmin) {
            return {Classification::kEqualsStandard, r * (s[0] + s[1]) - r * r - 1};
        }
        return {Classification::kUnknown, std::nullopt};
    }

    const long long sum = std::accumulate(s.begin(), s.end(), 0LL);
    const long long standard_value = r * (sum - static_cast<long long>(n) + 1) - 1;
    if (r <= rmin) return {Classification::kEqualsStandard, standard_value};
    const long long half = (sum - static_cast<long long>(n) + 2) / 2;  // ceil((sum-n+1)/2)
    if (half >= std::max(rmax, r)) return {Classification::kEqualsStandard, standard_value};
    return {Classification::kUnknown, std::nullopt};
}

Classification classify_catalisano(const NaiveBayesSpec& nb) {
    return classify_catalisano_detail(nb).classification;
}

NetworkSpec naive_bayes_network(const NaiveBayesSpec& nb) {
    std::vector<Node> nodes;
    const int hidden_index = static_cast<int>(nb.features.size());
    for (std::size_t i = 0; i < nb.features.size(); ++i) {
        nodes.push_back(Node{"X" + std::to_string(i + 1), nb.features[i], {hidden_index}, false});
    }
    nodes.push_back(Node{"H", nb.r, {}, true});
    return NetworkSpec(std::move(nodes));
}

std::optional<NaiveBayesSpec> detect_naive_bayes(const NetworkSpec& net) {
    const auto hidden = net.hidden_positions();
    if (hidden.size() != 1) return std::nullopt;
    const int h = hidden.front();
    if (!net.node(h).parents.empty()) return std::nullopt;
    std::vector<int> features;
    for (std::size_t i = 0; i < net.node_count(); ++i) {
        if (static_cast<int>(i) == h) continue;
        if (net.node(i).parents != std::vector<int>{h}) return std::nullopt;
        features.push_back(net.node(i).card);
    }
    if (features.size() < 2) return std::nullopt;
    return NaiveBayesSpec(net.node(h).card, std::move(features));
}

Matrix<Rational> observable_jacobian(const NetworkSpec& net,
                                     const ParameterAssignment<Rational>& params) {
    check_shape(net, params);
    for (const auto& ct : params.node_tables) {
        for (const auto& row : ct.rows) {
            for (const auto& v : row) {
                if (v <= 0) throw ShapeError("Jacobian requires strictly positive parameters");
            }
        }
    }

    // Column layout: nodes in order, parent configurations row-major, states
    // 0..card-2 (the last state is the dependent one).
    std::vector<std::size_t> col_offset(net.node_count() + 1, 0);
    for (std::size_t i = 0; i < net.node_count(); ++i) {
        col_offset[i + 1] =
            col_offset[i] + static_cast<std::size_t>(parent_config_count(net, i)) *
                                static_cast<std::size_t>(net.node(i).card - 1);
    }

    const StateSpace joint = net.joint_space();
    const StateSpace observed = net.observed_space();
    const auto observed_pos = net.observed_positions();
    Matrix<Rational> jac(observed.cell_count(), col_offset.back());

    std::vector<int> multi(net.node_count(), 0);
    std::vector<int> obs_multi(observed_pos.size(), 0);
    do {
        // Cell probability, for the product-rule quotient below.
        Rational cell(1);
        for (std::size_t i = 0; i < net.node_count(); ++i) {
            cell *= params.node_tables[i].rows[parent_config_index(net, i, multi)][multi[i]];
        }
        for (std::size_t k = 0; k < observed_pos.size(); ++k) obs_multi[k] = multi[observed_pos[k]];
        const std::size_t row = observed.linear_index(obs_multi);

        for (std::size_t i = 0; i < net.node_count(); ++i) {
            const int card = net.node(i).card;
            const int state = multi[i];
            // d(factor)/d(w_ijk) is +1 at state k, -1 at the dependent last
            // state, 0 elsewhere; other cells of node i's row contribute 0.
            const std::size_t cfg = parent_config_index(net, i, multi);
            const Rational quotient = cell / params.node_tables[i].rows[cfg][state];
            const std::size_t base = col_offset[i] + cfg * static_cast<std::size_t>(card - 1);
            if (state < card - 1) {
                jac(row, base + static_cast<std::size_t>(state)) += quotient;
            } else {
                for (int k = 0; k < card - 1; ++k) {
                    jac(row, base + static_cast<std::size_t>(k)) -= quotient;
                }
            }
        }
    } while (joint.next(multi));
    return jac;
}

EffectiveDimension effective_dimension(const NetworkSpec& net,
                                       std::span<const std::uint64_t> seeds, double rank_tol) {
    if (seeds.empty()) throw ShapeError("effective_dimension needs at least one seed");
    EffectiveDimension result;
    for (std::uint64_t seed : seeds) {
        const auto params = sample_parameters(net, seed);
        const auto jac = observable_jacobian(net, params);
        result.exact = std::max(result.exact, rank_exact(jac));
        result.numeric = std::max(result.numeric, rank_numeric(to_double(jac), rank_tol));
        ++result.samples_used;
    }
    if (result.exact != result.numeric) {
        throw BackendDisagreement("rank backends disagree on generic Jacobian rank",
                                  result.exact, result.numeric);
    }
    return result;
}

DimensionReport dimension_report(const NetworkSpec& net, std::span<const std::uint64_t> seeds,
                                 double rank_tol) {
    DimensionReport report;
    report.complete = static_cast<long long>(net.observed_space().cell_count()) - 1;
    report.standard = net.standard_dimension();
    report.expected = std::min(report.complete, report.standard);
    const auto eff = effective_dimension(net, seeds, rank_tol);
    report.effective_exact = eff.exact;
    report.effective_numeric = eff.numeric;
    report.samples_used = eff.samples_used;
    if (const auto nb = detect_naive_bayes(net)) {
        report.dp = dp_bound(*nb);
        report.classification = classify_catalisano(*nb);
    }
    return report;
}

std::string serialize(const DimensionReport& report) {
    nlohmann::ordered_json doc;
    doc["format"] = "bnalg-v1";
    doc["complete"] = report.complete;
    doc["standard"] = report.standard;
    doc["expected"] = report.expected;
    if (report.dp) doc["dp_bound"] = *report.dp;
    doc["effective_exact"] = report.effective_exact;
    doc["effective_numeric"] = report.effective_numeric;
    doc["classification"] = to_string(report.classification);
    doc["samples_used"] = report.samples_used;
    return doc.dump(2) + "\n";
}

}  // namespace bnalg
