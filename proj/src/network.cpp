#include "bnalg/network.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "bnalg/errors.hpp"
#include "json.hpp"

namespace bnalg {

NetworkSpec::NetworkSpec(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw ParseError("network has no nodes");
    std::unordered_set<std::string> seen;
    for (auto& n : nodes_) {
        if (n.name.empty()) throw ParseError("node with empty name");
        if (!seen.insert(n.name).second) throw ParseError("duplicate node name: " + n.name);
        if (n.card < 2) {
            throw ParseError("node " + n.name + " has cardinality " + std::to_string(n.card) +
                             "; cardinality must be at least 2");
        }
        std::sort(n.parents.begin(), n.parents.end());
        for (std::size_t k = 0; k < n.parents.size(); ++k) {
            int p = n.parents[k];
            if (p < 0 || p >= static_cast<int>(nodes_.size())) {
                throw ParseError("node " + n.name + " references unknown parent index");
            }
            if (k > 0 && n.parents[k - 1] == p) {
                throw ParseError("node " + n.name + " lists a parent twice");
            }
        }
    }

    children_.assign(nodes_.size(), {});
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        for (int p : nodes_[i].parents) children_[p].push_back(static_cast<int>(i));
    }

    // Kahn's algorithm; leftover nodes sit on a directed cycle.
    std::vector<int> indegree(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        indegree[i] = static_cast<int>(nodes_[i].parents.size());
    }
    std::deque<int> ready;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (indegree[i] == 0) ready.push_back(static_cast<int>(i));
    }
    std::size_t emitted = 0;
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop_front();
        ++emitted;
        for (int c : children_[v]) {
            if (--indegree[c] == 0) ready.push_back(c);
        }
    }
    if (emitted != nodes_.size()) throw ParseError("cycle detected in parent relation");
}

int NetworkSpec::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<int> NetworkSpec::cards() const {
    std::vector<int> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_) out.push_back(n.card);
    return out;
}

std::vector<int> NetworkSpec::observed_positions() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!nodes_[i].hidden) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<int> NetworkSpec::hidden_positions() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].hidden) out.push_back(static_cast<int>(i));
    }
    return out;
}

StateSpace NetworkSpec::observed_space() const {
    std::vector<int> cs;
    for (const auto& n : nodes_) {
        if (!n.hidden) cs.push_back(n.card);
    }
    return StateSpace(std::move(cs));
}

std::vector<std::string> NetworkSpec::observed_names() const {
    std::vector<std::string> out;
    for (const auto& n : nodes_) {
        if (!n.hidden) out.push_back(n.name);
    }
    return out;
}

long long NetworkSpec::standard_dimension() const {
    long long total = 0;
    for (const auto& n : nodes_) {
        long long configs = 1;
        for (int p : n.parents) configs *= nodes_[p].card;
        total += static_cast<long long>(n.card - 1) * configs;
    }
    return total;
}

long long NetworkSpec::complete_dimension() const {
    long long prod = 1;
    for (const auto& n : nodes_) prod *= n.card;
    return prod - 1;
}

void validate_statement(const NetworkSpec& net, const CIStatement& stmt) {
    if (stmt.a.empty() || stmt.b.empty()) {
        throw ParseError("independence statement needs nonempty A and B blocks");
    }
    std::set<int> seen;
    auto check_block = [&](const std::vector<int>& block) {
        for (int v : block) {
            if (v < 0 || v >= static_cast<int>(net.node_count())) {
                throw ParseError("independence statement references unknown node index");
            }
            if (!seen.insert(v).second) {
                throw ParseError("independence statement blocks overlap");
            }
        }
    };
    check_block(stmt.a);
    check_block(stmt.b);
    check_block(stmt.c);
}

namespace {

std::vector<char> ancestral_set(const NetworkSpec& net, const std::vector<int>& seed) {
    std::vector<char> in(net.node_count(), 0);
    std::deque<int> queue(seed.begin(), seed.end());
    for (int v : seed) in[v] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int p : net.node(v).parents) {
            if (!in[p]) {
                in[p] = 1;
                queue.push_back(p);
            }
        }
    }
    return in;
}

}  // namespace

bool d_separated(const NetworkSpec& net, const CIStatement& stmt) {
    validate_statement(net, stmt);

    std::vector<char> conditioned(net.node_count(), 0);
    for (int v : stmt.c) conditioned[v] = 1;
    std::vector<char> c_or_ancestor = ancestral_set(net, stmt.c);
    std::vector<char> target(net.node_count(), 0);
    for (int v : stmt.b) target[v] = 1;

    // State (node, entered-against-arrow?). ARROW_IN: arrived along an edge
    // pointing into the node. ARROW_OUT: arrived from one of its children.
    // Sources behave like ARROW_OUT entries; A and C are disjoint.
    constexpr int kArrowIn = 0;
    constexpr int kArrowOut = 1;
    std::vector<std::array<char, 2>> visited(net.node_count(), {0, 0});
    std::deque<std::pair<int, int>> frontier;
    for (int v : stmt.a) {
        if (!visited[v][kArrowOut]) {
            visited[v][kArrowOut] = 1;
            frontier.emplace_back(v, kArrowOut);
        }
    }

    auto push = [&](int v, int how) {
        if (!visited[v][how]) {
            visited[v][how] = 1;
            frontier.emplace_back(v, how);
        }
    };

    while (!frontier.empty()) {
        auto [v, how] = frontier.front();
        frontier.pop_front();
        if (target[v]) return false;

        // Continue to a child (edge v -> w): blocked iff v is conditioned on,
        // regardless of how v was entered (chain or fork).
        if (!conditioned[v]) {
            for (int w : net.children()[v]) push(w, kArrowIn);
        }
        if (how == kArrowIn) {
            // Collider at v: the trail continues to a parent only when v or
            // one of its descendants is conditioned on.
            if (c_or_ancestor[v]) {
                for (int p : net.node(v).parents) push(p, kArrowOut);
            }
        } else {
            // Chain through v up to a parent.
            if (!conditioned[v]) {
                for (int p : net.node(v).parents) push(p, kArrowOut);
            }
        }
    }
    return true;
}

std::vector<CIStatement> local_markov_statements(const NetworkSpec& net) {
    std::vector<CIStatement> out;
    for (std::size_t i = 0; i < net.node_count(); ++i) {
        // Descendants of i via forward reachability.
        std::vector<char> desc(net.node_count(), 0);
        std::deque<int> queue{static_cast<int>(i)};
        desc[i] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int c : net.children()[v]) {
                if (!desc[c]) {
                    desc[c] = 1;
                    queue.push_back(c);
                }
            }
        }
        std::vector<char> is_parent(net.node_count(), 0);
        for (int p : net.node(i).parents) is_parent[p] = 1;

        CIStatement stmt;
        stmt.a = {static_cast<int>(i)};
        stmt.c = net.node(i).parents;
        for (std::size_t j = 0; j < net.node_count(); ++j) {
            if (!desc[j] && !is_parent[j]) stmt.b.push_back(static_cast<int>(j));
        }
        if (!stmt.b.empty()) out.push_back(std::move(stmt));
    }
    return out;
}

namespace {

using nlohmann::ordered_json;

constexpr const char* kFormatTag = "bnalg-v1";

void check_format(const ordered_json& doc) {
    if (doc.contains("format") && doc["format"] != kFormatTag) {
        throw ParseError("unsupported document format: " + doc["format"].dump());
    }
}

}  // namespace

NetworkSpec parse_network(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad network JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
        throw ParseError("network document must be an object with a \"nodes\" array");
    }
    check_format(doc);

    // Two passes: names first so parents may reference nodes declared later.
    std::unordered_map<std::string, int> index;
    const auto& items = doc["nodes"];
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!items[i].is_object() || !items[i].contains("name") || !items[i]["name"].is_string()) {
            throw ParseError("every node needs a string \"name\"");
        }
        index.emplace(items[i]["name"].get<std::string>(), static_cast<int>(i));
    }

    std::vector<Node> nodes;
    nodes.reserve(items.size());
    for (const auto& item : items) {
        Node n;
        n.name = item["name"].get<std::string>();
        if (!item.contains("card") || !item["card"].is_number_integer()) {
            throw ParseError("node " + n.name + " needs an integer \"card\"");
        }
        n.card = item["card"].get<int>();
        n.hidden = item.value("hidden", false);
        if (item.contains("parents")) {
            for (const auto& p : item["parents"]) {
                if (!p.is_string()) throw ParseError("parents must be node names");
                auto it = index.find(p.get<std::string>());
                if (it == index.end()) {
                    throw ParseError("node " + n.name + " references unknown parent " +
                                     p.get<std::string>());
                }
                n.parents.push_back(it->second);
            }
        }
        nodes.push_back(std::move(n));
    }
    return NetworkSpec(std::move(nodes));
}

std::string serialize(const NetworkSpec& net) {
    ordered_json doc;
    doc["format"] = kFormatTag;
    doc["nodes"] = ordered_json::array();
    for (const auto& n : net.nodes()) {
        ordered_json item;
        item["name"] = n.name;
        item["card"] = n.card;
        item["parents"] = ordered_json::array();
        for (int p : n.parents) item["parents"].push_back(net.node(p).name);
        item["hidden"] = n.hidden;
        doc["nodes"].push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

}  // namespace bnalg
