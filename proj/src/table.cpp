#include "bnalg/table.hpp"

#include "json.hpp"

namespace bnalg {

namespace {

using nlohmann::ordered_json;

ordered_json table_header(const StateSpace& space, const std::vector<std::string>& names) {
    ordered_json doc;
    doc["format"] = "bnalg-v1";
    doc["cards"] = space.cards();
    doc["observed"] = names;
    return doc;
}

ordered_json parse_document(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad table JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("cards") || !doc.contains("cells")) {
        throw ParseError("table document needs \"cards\" and \"cells\"");
    }
    if (doc.contains("format") && doc["format"] != "bnalg-v1") {
        throw ParseError("unsupported document format: " + doc["format"].dump());
    }
    return doc;
}

template <typename T>
Table<T> parse_shell(const ordered_json& doc) {
    Table<T> out;
    std::vector<int> cards;
    for (const auto& c : doc["cards"]) {
        if (!c.is_number_integer() || c.get<int>() < 1) {
            throw ParseError("table cards must be positive integers");
        }
        cards.push_back(c.get<int>());
    }
    out.space = StateSpace(std::move(cards));
    if (doc.contains("observed")) {
        for (const auto& n : doc["observed"]) out.names.push_back(n.get<std::string>());
        if (out.names.size() != out.space.rank()) {
            throw ParseError("table \"observed\" length does not match \"cards\"");
        }
    }
    if (doc["cells"].size() != out.space.cell_count()) {
        throw ParseError("table has " + std::to_string(doc["cells"].size()) + " cells, expected " +
                         std::to_string(out.space.cell_count()));
    }
    return out;
}

}  // namespace

std::string serialize(const Table<Rational>& table) {
    ordered_json doc = table_header(table.space, table.names);
    ordered_json cells = ordered_json::array();
    for (const auto& v : table.cells) cells.push_back(to_string(v));
    doc["cells"] = std::move(cells);
    return doc.dump(2) + "\n";
}

std::string serialize(const Table<double>& table) {
    ordered_json doc = table_header(table.space, table.names);
    doc["cells"] = table.cells;
    return doc.dump(2) + "\n";
}

Table<Rational> parse_table_rational(const std::string& text) {
    ordered_json doc = parse_document(text);
    Table<Rational> out = parse_shell<Rational>(doc);
    for (const auto& cell : doc["cells"]) {
        if (!cell.is_string()) {
            throw ParseError("rational tables store cells as \"p/q\" strings");
        }
        out.cells.push_back(rational_from_string(cell.get<std::string>()));
    }
    return out;
}

Table<double> parse_table_float(const std::string& text) {
    ordered_json doc = parse_document(text);
    Table<double> out = parse_shell<double>(doc);
    for (const auto& cell : doc["cells"]) {
        if (cell.is_string()) {
            out.cells.push_back(to_double(rational_from_string(cell.get<std::string>())));
        } else if (cell.is_number()) {
            out.cells.push_back(cell.get<double>());
        } else {
            throw ParseError("table cells must be numbers or \"p/q\" strings");
        }
    }
    return out;
}

}  // namespace bnalg
