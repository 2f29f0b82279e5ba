#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bnalg/errors.hpp"
#include "bnalg/network.hpp"
#include "bnalg/rational.hpp"
#include "bnalg/table.hpp"

namespace bnalg {

// One node's conditional probability table: one row per parent configuration,
// each row a distribution over the node's states.
template <typename T>
struct ConditionalTable {
    std::vector<std::vector<T>> rows;
};

template <typename T>
struct ParameterAssignment {
    std::vector<ConditionalTable<T>> node_tables;
};

inline long long parent_config_count(const NetworkSpec& net, std::size_t i) {
    long long n = 1;
    for (int p : net.node(i).parents) n *= net.node(p).card;
    return n;
}

// Row-major over the node's parents in ascending index order; the last parent
// varies fastest. Fixed once and shared by the forward map and the Jacobian.
inline std::size_t parent_config_index(const NetworkSpec& net, std::size_t i,
                                       std::span<const int> joint_multi) {
    std::size_t idx = 0;
    for (int p : net.node(i).parents) {
        idx = idx * static_cast<std::size_t>(net.node(p).card) +
              static_cast<std::size_t>(joint_multi[p]);
    }
    return idx;
}

// Deterministic for a fixed seed: every row draws integer numerators uniformly
// from 1..1000 and normalizes, so entries are strictly positive and each row
// sums to exactly 1.
ParameterAssignment<Rational> sample_parameters(const NetworkSpec& net, std::uint64_t seed);

inline ParameterAssignment<double> to_double(const ParameterAssignment<Rational>& params) {
    ParameterAssignment<double> out;
    out.node_tables.reserve(params.node_tables.size());
    for (const auto& ct : params.node_tables) {
        ConditionalTable<double> dt;
        dt.rows.reserve(ct.rows.size());
        for (const auto& row : ct.rows) {
            std::vector<double> drow;
            drow.reserve(row.size());
            for (const auto& v : row) drow.push_back(to_double(v));
            dt.rows.push_back(std::move(drow));
        }
        out.node_tables.push_back(std::move(dt));
    }
    return out;
}

template <typename T>
void check_shape(const NetworkSpec& net, const ParameterAssignment<T>& params) {
    if (params.node_tables.size() != net.node_count()) {
        throw ShapeError("parameter assignment does not match network: wrong node count");
    }
    for (std::size_t i = 0; i < net.node_count(); ++i) {
        const auto& ct = params.node_tables[i];
        if (static_cast<long long>(ct.rows.size()) != parent_config_count(net, i)) {
            throw ShapeError("parameter assignment does not match network: node " +
                             net.node(i).name + " has wrong row count");
        }
        for (const auto& row : ct.rows) {
            if (row.size() != static_cast<std::size_t>(net.node(i).card)) {
                throw ShapeError("parameter assignment does not match network: node " +
                                 net.node(i).name + " has wrong row length");
            }
        }
    }
}

// Joint table whose cell at x is the product over nodes of the conditional
// probability selected by x. Rows summing to one make the output sum to one.
template <typename T>
Table<T> forward_map(const NetworkSpec& net, const ParameterAssignment<T>& params) {
    check_shape(net, params);
    Table<T> out;
    out.space = net.joint_space();
    for (const auto& n : net.nodes()) out.names.push_back(n.name);
    out.cells.reserve(out.space.cell_count());

    std::vector<int> multi(net.node_count(), 0);
    do {
        T v{1};
        for (std::size_t i = 0; i < net.node_count(); ++i) {
            v *= params.node_tables[i].rows[parent_config_index(net, i, multi)][multi[i]];
        }
        out.cells.push_back(std::move(v));
    } while (out.space.next(multi));
    return out;
}

// sample -> forward -> marginalize over the hidden axes.
template <typename T = Rational>
Table<Rational> sample_observable(const NetworkSpec& net, std::uint64_t seed) {
    return marginalize(forward_map(net, sample_parameters(net, seed)), net.hidden_positions());
}

}  // namespace bnalg
