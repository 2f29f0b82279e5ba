#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "bnalg/errors.hpp"
#include "bnalg/rational.hpp"
#include "bnalg/state_space.hpp"

namespace bnalg {

// Dense probability table in row-major cell order. Joint tables carry one
// axis per network node; observable tables carry only the observed axes.
template <typename T>
struct Table {
    StateSpace space;
    std::vector<std::string> names;  // axis names, parallel to space.cards()
    std::vector<T> cells;

    T total() const {
        T sum{};
        for (const T& v : cells) sum += v;
        return sum;
    }
};

// Sums out the given axes (sorted or not); remaining axes keep their order.
template <typename T>
Table<T> marginalize(const Table<T>& table, const std::vector<int>& positions) {
    std::vector<char> drop(table.space.rank(), 0);
    for (int p : positions) {
        if (p < 0 || p >= static_cast<int>(table.space.rank())) {
            throw ShapeError("marginalize: axis index out of range");
        }
        drop[p] = 1;
    }

    Table<T> out;
    std::vector<int> kept;
    for (std::size_t i = 0; i < table.space.rank(); ++i) {
        if (!drop[i]) {
            kept.push_back(static_cast<int>(i));
            out.names.push_back(table.names.empty() ? std::string{} : table.names[i]);
        }
    }
    std::vector<int> out_cards;
    for (int i : kept) out_cards.push_back(table.space.cards()[i]);
    out.space = StateSpace(std::move(out_cards));
    out.cells.assign(out.space.cell_count(), T{});

    std::vector<int> multi(table.space.rank(), 0);
    std::vector<int> sub(kept.size(), 0);
    std::size_t linear = 0;
    do {
        for (std::size_t i = 0; i < kept.size(); ++i) sub[i] = multi[kept[i]];
        out.cells[out.space.linear_index(sub)] += table.cells[linear];
        ++linear;
    } while (table.space.next(multi));
    return out;
}

inline Table<double> to_double(const Table<Rational>& table) {
    Table<double> out;
    out.space = table.space;
    out.names = table.names;
    out.cells.reserve(table.cells.size());
    for (const auto& v : table.cells) out.cells.push_back(to_double(v));
    return out;
}

// JSON document <-> table, cells row-major. Rational cells serialize as
// "p/q" strings; double cells as numbers. Parsing in rational mode rejects
// numeric cells so exact pipelines cannot silently absorb floats.
std::string serialize(const Table<Rational>& table);
std::string serialize(const Table<double>& table);
Table<Rational> parse_table_rational(const std::string& text);
Table<double> parse_table_float(const std::string& text);

}  // namespace bnalg
