#ifndef GBCSP_DUALDISC_HPP
#define GBCSP_DUALDISC_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "gbcsp/buchberger.hpp"
#include "gbcsp/csp.hpp"

namespace gbcsp {

// Arc consistency (AC-3) over binary constraints. Returns the pruned
// per-variable domains, or nullopt when some domain empties (no solutions).
// StructuralError on any constraint that is not permutation/complete/two-fan.
std::optional<std::vector<std::vector<Rational>>> arc_consistency(const CspInstance& inst);

// A chained permutation constraint: a class of variables pairwise linked by
// bijections, stored against a representative. The relation is
//   {(t, bij[v2](t), ..., bij[vr](t)) | t in rep_values}.
struct Cpc {
    std::vector<std::size_t> vars;  // sorted
    std::size_t rep = 0;            // smallest variable in vars
    std::vector<Rational> rep_values;
    // bij[v] maps each rep value to the value of v; bij[rep] is the identity.
    std::map<std::size_t, std::map<Rational, Rational>> bij;

    bool contains(std::size_t v) const;
    // Value set of a member variable (sorted).
    std::vector<Rational> values_of(std::size_t v) const;
    // sigma_{from,to} applied to a value of `from`; DomainError if the value
    // is not currently allowed.
    Rational map_value(std::size_t from, std::size_t to, const Rational& value) const;
    // Keeps only the rep values satisfying pred; false if none survive.
    bool restrict(const std::function<bool(const Rational&)>& pred);
};

// Folds one permutation constraint into the collection: create a new class,
// extend one, merge two, or tighten one, with value-set propagation through
// the bijections. Returns false when a value set empties.
bool add_perm_constraint(std::vector<Cpc>& cpcs, const PermutationConstraint& pc);

// Builds the chained-permutation classes from scratch.
std::optional<std::vector<Cpc>> build_cpcs(const std::vector<PermutationConstraint>& perms);

// Unique univariate polynomial (in the given variable, over n_vars variables)
// of degree < |points| through all (node, value) pairs. DomainError on
// duplicate nodes.
Polynomial lagrange_interpolate(std::size_t n_vars, std::size_t var,
                                const std::vector<std::pair<Rational, Rational>>& points);

// Reduced grlex basis of the vanishing ideal of one chained class:
// identical-column differences x_j - x_k, plus a locally completed basis of
// the interpolants and partial domain polynomials on the column
// representatives.
GroebnerBasis cpc_basis(const Cpc& c, std::size_t n_vars);

// The working pool for complete/two-fan completion, kept in structured form.
// Families: doms are products prod_{a in A}(x_v - a) (an assignment when |A|
// is 1), fans are (x_i - a)(x_j - b) with i < j, lines are x_lead - slope *
// x_other - intercept with the lead variable eliminated from all other
// entries.
struct LineEntry {
    std::size_t other = 0;
    Rational slope, intercept;
};

struct CfPool {
    std::size_t n = 0;
    std::map<std::size_t, std::vector<Rational>> doms;  // var -> sorted distinct roots
    std::set<std::tuple<std::size_t, Rational, std::size_t, Rational>> fans;
    std::map<std::size_t, LineEntry> lines;  // lead var -> line

    void add_fan(std::size_t i, const Rational& a, std::size_t j, const Rational& b);
    // Intersects the root set of var with `values`; false when it empties.
    bool meet_dom(std::size_t var, const std::vector<Rational>& values);
    // Forces var = value, following a line if var was eliminated; false on
    // contradiction.
    bool force_assign(std::size_t var, const Rational& value);
    std::vector<Polynomial> polynomials() const;
};

// Completion of the pool to the reduced basis of the ideal it generates,
// staying inside the domain-product / fan-product / line families. Two fans
// on the same variable pair with all four values distinct yield a new
// permutation constraint, appended to pending_perms. Returns false on
// infeasibility (the ideal is the whole ring).
bool cf_basis(CfPool& pool, std::vector<PermutationConstraint>& pending_perms);

// Full pipeline: arc consistency gate, chained permutation classes, pool
// completion, and the fixpoint exchange between the two until stable; the
// result is the reduced grlex basis of the instance's vanishing ideal
// (exactly {1} when infeasible). Every element has degree <= |D|!.
GroebnerBasis combined_basis(const CspInstance& inst, unsigned long restart_budget = 10'000);

}  // namespace gbcsp

#endif
