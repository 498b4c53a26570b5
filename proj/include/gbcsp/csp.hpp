#ifndef GBCSP_CSP_HPP
#define GBCSP_CSP_HPP

#include <variant>
#include <vector>

#include "gbcsp/minority.hpp"
#include "gbcsp/poly.hpp"

namespace gbcsp {

struct Gf2LinearConstraint {
    RawXor equation;
};

// R(x_i, x_j) = {(a, pi(a)) | a in dom(pi)} for a bijection pi.
struct PermutationConstraint {
    std::size_t i = 0, j = 0;
    std::vector<std::pair<Rational, Rational>> pairs;
};

// R(x_i, x_j) = D_i x D_j.
struct CompleteConstraint {
    std::size_t i = 0, j = 0;
    std::vector<Rational> di, dj;
};

// R(x_i, x_j) = ({a} x D_j) u (D_i x {b}), a in D_i, b in D_j.
struct TwoFanConstraint {
    std::size_t i = 0, j = 0;
    Rational a, b;
    std::vector<Rational> di, dj;
};

// Generic relation, oracle-only.
struct RelationConstraint {
    std::vector<std::size_t> scope;
    std::vector<std::vector<Rational>> tuples;
};

using Constraint = std::variant<Gf2LinearConstraint, PermutationConstraint, CompleteConstraint,
                                TwoFanConstraint, RelationConstraint>;

struct CspInstance {
    std::size_t n = 0;
    std::vector<Rational> domain;  // distinct, sorted
    std::vector<Constraint> constraints;
};

struct SolutionSet {
    std::vector<std::vector<Rational>> tuples;
    bool truncated = false;
};

std::vector<std::size_t> constraint_scope(const Constraint& c);
bool constraint_satisfied(const Constraint& c, const std::vector<Rational>& assignment);

// Backtracking enumeration in variable index order; each constraint is
// checked as soon as its scope is fully assigned. Sets `truncated` when the
// cap is reached.
SolutionSet enumerate_solutions(const CspInstance& inst, std::size_t cap = 1'000'000);

// Exact evaluation of f on every solution tuple. DomainError on a truncated
// set: a truncated enumeration is not a membership oracle.
bool vanishing_member(const Polynomial& f, const SolutionSet& sols);

// A generating set of the combinatorial ideal: per-variable domain
// polynomials plus per-constraint generators (explicit forms for two-fan and
// complete constraints, the lifted mod-2 polynomial for XOR constraints,
// Lagrange indicator polynomials of the excluded tuples otherwise). Every
// set contains all domain polynomials, so the generated ideal equals the
// vanishing ideal of its variety.
std::vector<Polynomial> ideal_generators(const CspInstance& inst);

// Lagrange basis polynomial over nodes: value 1 at `at`, 0 at other nodes.
Polynomial indicator_factor(std::size_t n_vars, std::size_t var, const Rational& at,
                            const std::vector<Rational>& nodes);

// prod_{a in values} (x_var - a).
Polynomial domain_polynomial(std::size_t n_vars, std::size_t var, const std::vector<Rational>& values);

}  // namespace gbcsp

#endif
