#pragma once

#include <string>
#include <vector>

#include "bnalg/state_space.hpp"

namespace bnalg {

struct Node {
    std::string name;
    int card = 0;                // number of states, >= 2
    std::vector<int> parents;    // node indices, kept sorted ascending
    bool hidden = false;
};

// A discrete directed graphical model: a DAG over named nodes with per-node
// cardinalities and an observed/hidden split. Immutable after construction.
class NetworkSpec {
public:
    // Validates names, cardinalities, parent references and acyclicity.
    // Throws ParseError on violation.
    explicit NetworkSpec(std::vector<Node> nodes);

    std::size_t node_count() const { return nodes_.size(); }
    const Node& node(std::size_t i) const { return nodes_[i]; }
    const std::vector<Node>& nodes() const { return nodes_; }

    // -1 when absent.
    int index_of(const std::string& name) const;

    std::vector<int> cards() const;
    std::vector<int> observed_positions() const;
    std::vector<int> hidden_positions() const;

    StateSpace joint_space() const { return StateSpace(cards()); }
    StateSpace observed_space() const;
    std::vector<std::string> observed_names() const;

    const std::vector<std::vector<int>>& children() const { return children_; }

    // Number of free parameters: sum over nodes of (card-1) times the number
    // of parent configurations.
    long long standard_dimension() const;

    // Product of all cardinalities minus one.
    long long complete_dimension() const;

private:
    std::vector<Node> nodes_;
    std::vector<std::vector<int>> children_;
};

// Conditional-independence statement A _||_ B | C over node indices.
// A and B nonempty, all three blocks pairwise disjoint.
struct CIStatement {
    std::vector<int> a;
    std::vector<int> b;
    std::vector<int> c;
};

// Throws ParseError if the statement's blocks overlap or index out of range.
void validate_statement(const NetworkSpec& net, const CIStatement& stmt);

// True iff every trail between A and B is blocked by C (active-trail
// reachability over the DAG).
bool d_separated(const NetworkSpec& net, const CIStatement& stmt);

// For each node X: X _||_ nondescendants(X) \ parents(X) | parents(X),
// skipping statements whose second block is empty.
std::vector<CIStatement> local_markov_statements(const NetworkSpec& net);

// JSON document <-> NetworkSpec. parse_network(serialize(net)) reproduces
// the network exactly.
NetworkSpec parse_network(const std::string& text);
std::string serialize(const NetworkSpec& net);

}  // namespace bnalg
