#pragma once

#include <string>
#include <vector>

#include "bnalg/dimension.hpp"
#include "bnalg/network.hpp"
#include "bnalg/polynomial.hpp"
#include "bnalg/table.hpp"

namespace bnalg {

enum class Family {
    kCiMinors,
    kNb2Flattening,
    kQuadratic51,
    kCubic52,
    kSextic53,
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);
int family_degree(Family f);

// A generated family of observable constraints. Polynomials are
// sign-normalized, deduplicated, and stored with a provenance label apiece
// recording the generating indices.
struct ConstraintSet {
    Family family = Family::kCiMinors;
    int degree = 0;
    std::vector<int> observed_cards;
    std::vector<Polynomial> polys;
    std::vector<std::string> provenance;
};

// Two disjoint nonempty blocks of observed-axis positions covering all of
// them.
struct Bipartition {
    std::vector<int> block1;
    std::vector<int> block2;
};

// Matrix of observable indeterminates with rows indexed by block1 joint
// states and columns by block2 joint states, both row-major.
std::vector<std::vector<Polynomial>> flatten_indeterminates(const NetworkSpec& net,
                                                            const Bipartition& bp);

// 2x2 minors of the |A|x|B| slice matrices, one slice per joint state of C,
// with observed nodes outside the statement marginalized out. All statement
// nodes must be observed.
ConstraintSet ci_minor_ideal(const NetworkSpec& net, const CIStatement& stmt);

// All 3x3 minors of every bipartition flattening of the observable table of a
// two-class naive Bayes model.
ConstraintSet nb2_flattening_constraints(const NaiveBayesSpec& nb);

// 2x2 minors of the r_2 slice matrices A_{j+} with (i,k) entry theta_{ijk+},
// for a four-node network whose hidden last node makes X1 independent of
// {X3,X4} given X2.
ConstraintSet quadratic_family_constraints(const NetworkSpec& net);

// 3x3 minors of the r_3 slice matrices with (i,j) entry theta_{ijk+}; the
// hidden last node must be binary and X1 independent of X2 given {X3,X4}.
ConstraintSet cubic_family_constraints(const NetworkSpec& net);

// Degree-6 constraints for the (2, r_2, 3) + binary-hidden pattern, one per
// unordered pair of middle-axis states. With include_conjectural, the first
// axis may have more than two states; the analogous polynomials are emitted
// for every row pair and labeled conjectural (their vanishing is not
// established).
ConstraintSet sextic_family_constraints(const NetworkSpec& net, bool include_conjectural = false);

struct VanishingResult {
    std::size_t index = 0;
    std::string residual_rational;  // rational mode
    double residual_float = 0.0;    // float mode: |p(theta)| / l1(p)
    bool vanishes = false;
};

struct VanishingReport {
    std::string mode;  // "rational" or "float"
    bool all_vanish = true;
    std::vector<VanishingResult> results;
};

// Rational mode: vanishing means exact zero.
VanishingReport check_vanishing(const ConstraintSet& cs, const Table<Rational>& table);

// Float mode: vanishing means |p(theta)| / l1(p) <= tol.
VanishingReport check_vanishing(const ConstraintSet& cs, const Table<double>& table, double tol);

// Max over polynomials of |p(theta)| / l1(p); 0 for an empty set.
double fit_statistic(const ConstraintSet& cs, const Table<double>& table);

// True iff every cell equals the product of the table's univariate marginals
// (exactly, or within tol per cell in the float overload).
bool complete_independence_test(const Table<Rational>& table);
bool complete_independence_test(const Table<double>& table, double tol);

std::string serialize(const ConstraintSet& cs);
ConstraintSet parse_constraint_set(const std::string& text);
std::string serialize(const VanishingReport& report);

}  // namespace bnalg
