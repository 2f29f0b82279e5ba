#include "bnalg/constraints.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "bnalg/errors.hpp"
#include "json.hpp"

namespace bnalg {

std::string to_string(Family f) {
    switch (f) {
        case Family::kCiMinors: return "CI_MINORS";
        case Family::kNb2Flattening: return "NB2_FLATTENING";
        case Family::kQuadratic51: return "QUADRATIC_5_1";
        case Family::kCubic52: return "CUBIC_5_2";
        case Family::kSextic53: return "SEXTIC_5_3";
    }
    return "CI_MINORS";
}

Family family_from_string(const std::string& s) {
    if (s == "CI_MINORS") return Family::kCiMinors;
    if (s == "NB2_FLATTENING") return Family::kNb2Flattening;
    if (s == "QUADRATIC_5_1") return Family::kQuadratic51;
    if (s == "CUBIC_5_2") return Family::kCubic52;
    if (s == "SEXTIC_5_3") return Family::kSextic53;
    throw ParseError("unknown constraint family \"" + s + "\"");
}

int family_degree(Family f) {
    switch (f) {
        case Family::kCiMinors: return 2;
        case Family::kNb2Flattening: return 3;
        case Family::kQuadratic51: return 2;
        case Family::kCubic52: return 3;
        case Family::kSextic53: return 6;
    }
    return 0;
}

namespace {

// Collects generators, normalizing sign, skipping zeros, and deduplicating
// by canonical form. Insertion order is preserved, so generation loops fully
// determine the output ordering.
class SetBuilder {
public:
    SetBuilder(Family family, std::vector<int> cards) : space_(cards) {
        cs_.family = family;
        cs_.degree = family_degree(family);
        cs_.observed_cards = std::move(cards);
    }

    void add(const Polynomial& p, std::string prov) {
        Polynomial q = p.sign_normalized();
        if (q.is_zero()) return;
        if (!seen_.insert(canonical_text(q, space_)).second) return;
        cs_.polys.push_back(std::move(q));
        cs_.provenance.push_back(std::move(prov));
    }

    ConstraintSet take() { return std::move(cs_); }

private:
    StateSpace space_;
    ConstraintSet cs_;
    std::set<std::string> seen_;
};

std::string tuple_label(std::span<const int> vals) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i > 0) out << ',';
        out << vals[i];
    }
    out << ')';
    return out.str();
}

// Advances an ascending k-combination out of {0..n-1}; false after the last.
bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// All k x k minors of m, labeled "<prefix> rows=(..) cols=(..)".
void emit_minors(const std::vector<std::vector<Polynomial>>& m, int k, const std::string& prefix,
                 SetBuilder& out) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    if (rows < k || cols < k) return;
    std::vector<int> rsel(k);
    for (int i = 0; i < k; ++i) rsel[i] = i;
    do {
        std::vector<int> csel(k);
        for (int i = 0; i < k; ++i) csel[i] = i;
        do {
            std::vector<std::vector<Polynomial>> sub(k, std::vector<Polynomial>(k));
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) sub[i][j] = m[rsel[i]][csel[j]];
            }
            out.add(determinant(sub),
                    prefix + " rows=" + tuple_label(rsel) + " cols=" + tuple_label(csel));
        } while (next_combination(csel, cols));
    } while (next_combination(rsel, rows));
}

// Index of each observed node in the observable axis order; -1 for hidden.
std::vector<int> observed_axis_map(const NetworkSpec& net) {
    std::vector<int> axis(net.node_count(), -1);
    int next = 0;
    for (int p : net.observed_positions()) axis[p] = next++;
    return axis;
}

void require_family_shape(const NetworkSpec& net, const char* family,
                          const CIStatement& defining, const std::string& statement_text) {
    if (net.node_count() != 4 || net.hidden_positions() != std::vector<int>{3}) {
        throw ShapeError(std::string(family) +
                         " expects four nodes with the fourth (and only the fourth) hidden");
    }
    if (!d_separated(net, defining)) {
        throw ShapeError(std::string(family) + " requires " + statement_text +
                         " to hold in the network");
    }
}

Polynomial cell_variable(const StateSpace& observed, std::span<const int> multi) {
    return Polynomial::variable(static_cast<VarId>(observed.linear_index(multi)));
}

}  // namespace

std::vector<std::vector<Polynomial>> flatten_indeterminates(const NetworkSpec& net,
                                                            const Bipartition& bp) {
    const StateSpace observed = net.observed_space();
    const int n = static_cast<int>(observed.rank());
    std::vector<int> owner(n, 0);
    auto claim = [&](const std::vector<int>& block, int tag) {
        if (block.empty()) throw ShapeError("bipartition blocks must be nonempty");
        for (int p : block) {
            if (p < 0 || p >= n) throw ShapeError("bipartition position out of range");
            if (owner[p] != 0) throw ShapeError("bipartition blocks must be disjoint");
            owner[p] = tag;
        }
    };
    claim(bp.block1, 1);
    claim(bp.block2, 2);
    for (int p = 0; p < n; ++p) {
        if (owner[p] == 0) throw ShapeError("bipartition must cover every observed node");
    }

    std::vector<int> b1 = bp.block1;
    std::vector<int> b2 = bp.block2;
    std::sort(b1.begin(), b1.end());
    std::sort(b2.begin(), b2.end());
    auto cards_of = [&](const std::vector<int>& block) {
        std::vector<int> cards;
        for (int p : block) cards.push_back(observed.cards()[p]);
        return cards;
    };
    const StateSpace rows(cards_of(b1));
    const StateSpace cols(cards_of(b2));

    std::vector<std::vector<Polynomial>> m(rows.cell_count(),
                                           std::vector<Polynomial>(cols.cell_count()));
    std::vector<int> multi(observed.rank(), 0);
    for (std::size_t r = 0; r < rows.cell_count(); ++r) {
        const auto rm = rows.multi_index(r);
        for (std::size_t c = 0; c < cols.cell_count(); ++c) {
            const auto cm = cols.multi_index(c);
            for (std::size_t i = 0; i < b1.size(); ++i) multi[b1[i]] = rm[i];
            for (std::size_t i = 0; i < b2.size(); ++i) multi[b2[i]] = cm[i];
            m[r][c] = cell_variable(observed, multi);
        }
    }
    return m;
}

ConstraintSet ci_minor_ideal(const NetworkSpec& net, const CIStatement& stmt) {
    validate_statement(net, stmt);
    for (const auto* block : {&stmt.a, &stmt.b, &stmt.c}) {
        for (int idx : *block) {
            if (net.node(idx).hidden) {
                throw ShapeError("ci_minor_ideal requires a fully observable statement; node " +
                                 net.node(idx).name + " is hidden");
            }
        }
    }
    std::vector<int> a = stmt.a;
    std::vector<int> b = stmt.b;
    std::vector<int> c = stmt.c;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::sort(c.begin(), c.end());

    const StateSpace observed = net.observed_space();
    const auto axis = observed_axis_map(net);
    auto block_space = [&](const std::vector<int>& block) {
        std::vector<int> cards;
        for (int idx : block) cards.push_back(net.node(idx).card);
        return StateSpace(cards);
    };
    const StateSpace aspace = block_space(a);
    const StateSpace bspace = block_space(b);
    const StateSpace cspace = block_space(c);

    SetBuilder out(Family::kCiMinors, observed.cards());
    std::vector<int> cmulti(c.size(), 0);
    do {
        // Slice matrix over the A and B joint states; unmentioned observed
        // nodes are summed out of each entry.
        std::vector<std::vector<Polynomial>> m(aspace.cell_count(),
                                               std::vector<Polynomial>(bspace.cell_count()));
        std::vector<int> pattern(observed.rank(), -1);
        for (std::size_t i = 0; i < c.size(); ++i) pattern[axis[c[i]]] = cmulti[i];
        for (std::size_t ra = 0; ra < aspace.cell_count(); ++ra) {
            const auto am = aspace.multi_index(ra);
            for (std::size_t i = 0; i < a.size(); ++i) pattern[axis[a[i]]] = am[i];
            for (std::size_t cb = 0; cb < bspace.cell_count(); ++cb) {
                const auto bm = bspace.multi_index(cb);
                for (std::size_t i = 0; i < b.size(); ++i) pattern[axis[b[i]]] = bm[i];
                m[ra][cb] = marginal_coordinate(observed, pattern);
            }
        }
        emit_minors(m, 2, "c=" + tuple_label(cmulti), out);
    } while (cspace.next(cmulti));
    return out.take();
}

ConstraintSet nb2_flattening_constraints(const NaiveBayesSpec& nb) {
    if (nb.r != 2) throw ShapeError("NB2 flattening constraints require exactly 2 classes");
    const NetworkSpec net = naive_bayes_network(nb);
    const int n = static_cast<int>(nb.features.size());
    SetBuilder out(Family::kNb2Flattening, nb.features);
    // Masks with feature 0 set enumerate each unordered bipartition once.
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); mask += 2) {
        Bipartition bp;
        for (int i = 0; i < n; ++i) {
            ((mask >> i) & 1 ? bp.block1 : bp.block2).push_back(i);
        }
        const auto m = flatten_indeterminates(net, bp);
        emit_minors(m, 3, "split=" + tuple_label(bp.block1) + "|" + tuple_label(bp.block2), out);
    }
    return out.take();
}

ConstraintSet quadratic_family_constraints(const NetworkSpec& net) {
    require_family_shape(net, "QUADRATIC_5_1", CIStatement{{0}, {2, 3}, {1}},
                         "X1 _||_ {X3,X4} | X2");
    const StateSpace observed = net.observed_space();
    const int r1 = observed.cards()[0];
    const int r2 = observed.cards()[1];
    const int r3 = observed.cards()[2];
    SetBuilder out(Family::kQuadratic51, observed.cards());
    for (int j = 0; j < r2; ++j) {
        std::vector<std::vector<Polynomial>> m(r1, std::vector<Polynomial>(r3));
        for (int i = 0; i < r1; ++i) {
            for (int k = 0; k < r3; ++k) {
                m[i][k] = cell_variable(observed, std::vector<int>{i, j, k});
            }
        }
        emit_minors(m, 2, "j=" + std::to_string(j), out);
    }
    return out.take();
}

ConstraintSet cubic_family_constraints(const NetworkSpec& net) {
    require_family_shape(net, "CUBIC_5_2", CIStatement{{0}, {1}, {2, 3}}, "X1 _||_ X2 | {X3,X4}");
    if (net.node(3).card != 2) {
        throw ShapeError("CUBIC_5_2 requires a binary hidden variable");
    }
    const StateSpace observed = net.observed_space();
    const int r1 = observed.cards()[0];
    const int r2 = observed.cards()[1];
    const int r3 = observed.cards()[2];
    SetBuilder out(Family::kCubic52, observed.cards());
    for (int k = 0; k < r3; ++k) {
        std::vector<std::vector<Polynomial>> m(r1, std::vector<Polynomial>(r2));
        for (int i = 0; i < r1; ++i) {
            for (int j = 0; j < r2; ++j) {
                m[i][j] = cell_variable(observed, std::vector<int>{i, j, k});
            }
        }
        emit_minors(m, 3, "k=" + std::to_string(k), out);
    }
    return out.take();
}

ConstraintSet sextic_family_constraints(const NetworkSpec& net, bool include_conjectural) {
    require_family_shape(net, "SEXTIC_5_3", CIStatement{{0}, {2}, {1, 3}},
                         "X1 _||_ X3 | {X2,X4}");
    if (!d_separated(net, CIStatement{{1}, {3}, {2}})) {
        throw ShapeError("SEXTIC_5_3 requires X2 _||_ X4 | X3 to hold in the network");
    }
    if (net.node(3).card != 2) {
        throw ShapeError("SEXTIC_5_3 requires a binary hidden variable");
    }
    const StateSpace observed = net.observed_space();
    const int r1 = observed.cards()[0];
    const int r2 = observed.cards()[1];
    const int r3 = observed.cards()[2];
    if (r3 != 3) throw ShapeError("SEXTIC_5_3 requires the third observed variable to be ternary");
    if (r1 != 2 && !include_conjectural) {
        throw ShapeError(
            "SEXTIC_5_3 is established only for a binary first variable; "
            "pass the conjectural flag to emit the unverified extension");
    }
    const bool conjectural = r1 != 2;

    SetBuilder out(Family::kSextic53, observed.cards());
    auto entry = [&](int i, int j, int k) {
        return cell_variable(observed, std::vector<int>{i, j, k});
    };
    for (int i1 = 0; i1 < r1; ++i1) {
        for (int i2 = i1 + 1; i2 < r1; ++i2) {
            for (int j1 = 0; j1 < r2; ++j1) {
                for (int j2 = j1 + 1; j2 < r2; ++j2) {
                    Polynomial sextic;
                    for (int s = 0; s < 3; ++s) {
                        const int o1 = s == 0 ? 1 : 0;
                        const int o2 = s == 2 ? 1 : 2;
                        // Column-s coefficient: the slice mass over rows.
                        const Polynomial coeff = entry(i1, j1, s) + entry(i2, j1, s);
                        const Polynomial u = determinant(
                            {{entry(i1, j1, o1), entry(i1, j1, o2)},
                             {entry(i2, j1, o1), entry(i2, j1, o2)}});
                        const Polynomial v = determinant(
                            {{entry(i1, j2, s), entry(i1, j2, o1) * entry(i1, j2, o2)},
                             {entry(i2, j2, s), entry(i2, j2, o1) * entry(i2, j2, o2)}});
                        const Polynomial piece = coeff * u * v;
                        sextic = (s == 1) ? sextic - piece : sextic + piece;
                    }
                    std::string label = "pair=(" + std::to_string(j1) + "," +
                                        std::to_string(j2) + ")";
                    if (conjectural) {
                        label = "conjectural rows=(" + std::to_string(i1) + "," +
                                std::to_string(i2) + ") " + label;
                    }
                    out.add(sextic, std::move(label));
                }
            }
        }
    }
    return out.take();
}

namespace {

void check_table_shape(const ConstraintSet& cs, const std::vector<int>& cards) {
    if (cs.observed_cards != cards) {
        throw ShapeError("constraint set and table shapes differ");
    }
}

}  // namespace

VanishingReport check_vanishing(const ConstraintSet& cs, const Table<Rational>& table) {
    check_table_shape(cs, table.space.cards());
    VanishingReport report;
    report.mode = "rational";
    for (std::size_t i = 0; i < cs.polys.size(); ++i) {
        const Rational value = cs.polys[i].evaluate(std::span<const Rational>(table.cells));
        VanishingResult r;
        r.index = i;
        r.residual_rational = to_string(value);
        r.vanishes = value == 0;
        report.all_vanish = report.all_vanish && r.vanishes;
        report.results.push_back(std::move(r));
    }
    return report;
}

VanishingReport check_vanishing(const ConstraintSet& cs, const Table<double>& table, double tol) {
    check_table_shape(cs, table.space.cards());
    VanishingReport report;
    report.mode = "float";
    for (std::size_t i = 0; i < cs.polys.size(); ++i) {
        const double value = cs.polys[i].evaluate(std::span<const double>(table.cells));
        const double norm = cs.polys[i].coefficient_l1_norm();
        VanishingResult r;
        r.index = i;
        r.residual_float = norm > 0 ? std::abs(value) / norm : 0.0;
        r.vanishes = r.residual_float <= tol;
        report.all_vanish = report.all_vanish && r.vanishes;
        report.results.push_back(std::move(r));
    }
    return report;
}

double fit_statistic(const ConstraintSet& cs, const Table<double>& table) {
    check_table_shape(cs, table.space.cards());
    double worst = 0.0;
    for (const auto& p : cs.polys) {
        const double norm = p.coefficient_l1_norm();
        if (norm <= 0) continue;
        worst = std::max(worst, std::abs(p.evaluate(std::span<const double>(table.cells))) / norm);
    }
    return worst;
}

namespace {

template <typename T>
std::vector<std::vector<T>> univariate_marginals(const Table<T>& table) {
    std::vector<std::vector<T>> marg;
    for (int card : table.space.cards()) marg.emplace_back(card, T{0});
    std::vector<int> multi(table.space.rank(), 0);
    std::size_t cell = 0;
    do {
        for (std::size_t axis = 0; axis < multi.size(); ++axis) {
            marg[axis][multi[axis]] += table.cells[cell];
        }
        ++cell;
    } while (table.space.next(multi));
    return marg;
}

}  // namespace

bool complete_independence_test(const Table<Rational>& table) {
    const auto marg = univariate_marginals(table);
    std::vector<int> multi(table.space.rank(), 0);
    std::size_t cell = 0;
    do {
        Rational prod(1);
        for (std::size_t axis = 0; axis < multi.size(); ++axis) prod *= marg[axis][multi[axis]];
        if (table.cells[cell] != prod) return false;
        ++cell;
    } while (table.space.next(multi));
    return true;
}

bool complete_independence_test(const Table<double>& table, double tol) {
    const auto marg = univariate_marginals(table);
    std::vector<int> multi(table.space.rank(), 0);
    std::size_t cell = 0;
    do {
        double prod = 1.0;
        for (std::size_t axis = 0; axis < multi.size(); ++axis) prod *= marg[axis][multi[axis]];
        if (std::abs(table.cells[cell] - prod) > tol) return false;
        ++cell;
    } while (table.space.next(multi));
    return true;
}

std::string serialize(const ConstraintSet& cs) {
    nlohmann::ordered_json doc;
    doc["format"] = "bnalg-v1";
    doc["family"] = to_string(cs.family);
    doc["degree"] = cs.degree;
    doc["cards"] = cs.observed_cards;
    doc["provenance"] = cs.provenance;
    nlohmann::ordered_json polys = nlohmann::ordered_json::array();
    const StateSpace space(cs.observed_cards);
    for (const auto& p : cs.polys) polys.push_back(canonical_text(p, space));
    doc["polys"] = std::move(polys);
    return doc.dump(2) + "\n";
}

ConstraintSet parse_constraint_set(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid constraint JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("constraint document must be a JSON object");
    if (doc.contains("format") && doc["format"] != "bnalg-v1") {
        throw ParseError("unsupported document format");
    }
    for (const char* key : {"family", "degree", "cards", "polys"}) {
        if (!doc.contains(key)) throw ParseError(std::string("constraint document missing \"") +
                                                 key + "\"");
    }
    ConstraintSet cs;
    if (!doc["family"].is_string()) throw ParseError("\"family\" must be a string");
    cs.family = family_from_string(doc["family"].get<std::string>());
    if (!doc["degree"].is_number_integer()) throw ParseError("\"degree\" must be an integer");
    cs.degree = doc["degree"].get<int>();
    if (cs.degree != family_degree(cs.family)) {
        throw ParseError("declared degree does not match family " + to_string(cs.family));
    }
    if (!doc["cards"].is_array() || doc["cards"].empty()) {
        throw ParseError("\"cards\" must be a nonempty array");
    }
    for (const auto& c : doc["cards"]) {
        if (!c.is_number_integer() || c.get<int>() < 2) {
            throw ParseError("cardinalities must be integers >= 2");
        }
        cs.observed_cards.push_back(c.get<int>());
    }
    const StateSpace space(cs.observed_cards);
    if (!doc["polys"].is_array()) throw ParseError("\"polys\" must be an array");
    for (const auto& entry : doc["polys"]) {
        if (!entry.is_string()) throw ParseError("polynomial entries must be strings");
        Polynomial p = parse_polynomial(entry.get<std::string>(), space);
        if (p.degree() != cs.degree) {
            throw ParseError("polynomial degree differs from the declared degree");
        }
        cs.polys.push_back(std::move(p));
    }
    if (doc.contains("provenance")) {
        if (!doc["provenance"].is_array() || doc["provenance"].size() != cs.polys.size()) {
            throw ParseError("\"provenance\" must list one label per polynomial");
        }
        for (const auto& entry : doc["provenance"]) {
            if (!entry.is_string()) throw ParseError("provenance entries must be strings");
            cs.provenance.push_back(entry.get<std::string>());
        }
    } else {
        cs.provenance.assign(cs.polys.size(), "");
    }
    return cs;
}

std::string serialize(const VanishingReport& report) {
    nlohmann::ordered_json doc;
    doc["format"] = "bnalg-v1";
    doc["mode"] = report.mode;
    doc["all_vanish"] = report.all_vanish;
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (const auto& r : report.results) {
        nlohmann::ordered_json entry;
        entry["index"] = r.index;
        if (report.mode == "rational") {
            entry["residual"] = r.residual_rational;
        } else {
            entry["residual"] = r.residual_float;
        }
        entry["vanishes"] = r.vanishes;
        results.push_back(std::move(entry));
    }
    doc["results"] = std::move(results);
    return doc.dump(2) + "\n";
}

}  // namespace bnalg
