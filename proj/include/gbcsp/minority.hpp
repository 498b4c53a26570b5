#ifndef GBCSP_MINORITY_HPP
#define GBCSP_MINORITY_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gbcsp/buchberger.hpp"
#include "gbcsp/poly.hpp"

namespace gbcsp {

// One mod-2 equation in leading-variable form:
//   x_lead xor (xor of x_j for j in support) xor parity = 0.
struct Gf2Equation {
    std::size_t lead = 0;
    std::set<std::size_t> support;
    bool parity = false;

    bool operator==(const Gf2Equation&) const = default;
};

// A raw XOR constraint: xor of the listed variables equals parity.
struct RawXor {
    std::set<std::size_t> vars;
    bool parity = false;
};

// A GF(2) linear system in reduced row echelon form, with variables renamed
// so that the pivots are the internal variables 0..r-1 (in order) and the
// non-pivots follow, preserving their relative external order.
// var_order[k] is the external index of internal variable k.
struct Gf2System {
    std::vector<Gf2Equation> equations;  // equation i has lead == i
    std::size_t n = 0;
    bool rref = false;
    std::vector<std::size_t> var_order;

    std::size_t rank() const { return equations.size(); }
};

// Gaussian elimination over GF(2). Returns nullopt when the system is
// contradictory (a 0 = 1 row), in which case the combinatorial ideal is the
// whole ring and its basis is {1}.
std::optional<Gf2System> gf2_rref(const std::vector<RawXor>& raw, std::size_t n);

// Explicit expansion of x_lead - M(f) as a polynomial over n_vars variables
// (indices as stored in eq). The expansion has 2^|support| - 1 monomials;
// ResourceError when |support| exceeds the threshold.
Polynomial lift_equation(const Gf2Equation& eq, std::size_t n_vars, std::size_t expand_threshold = 20);

// The lex basis G1, kept symbolic: the leading-variable equations plus the
// square relations x_k^2 - x_k for the free variables.
struct SymbolicG1 {
    std::vector<Gf2Equation> equations;
    std::vector<std::size_t> square_vars;  // internal indices r..n-1
    std::size_t n = 0;
};

SymbolicG1 build_g1(const Gf2System& sys);

// Fully expanded G1 in internal naming (desk scale only).
std::vector<Polynomial> expand_g1(const SymbolicG1& g1, std::size_t expand_threshold = 20);

// Canonical XOR of a set of free variables plus a parity bit. Equality of
// the underlying Boolean functions is equality of the fields.
struct BooleanTerm {
    std::set<std::size_t> support;
    bool parity = false;

    bool operator==(const BooleanTerm&) const = default;
    auto operator<=>(const BooleanTerm&) const = default;
};

BooleanTerm xor_terms(const BooleanTerm& a, const BooleanTerm& b);

// A rational linear combination of non-constant Boolean terms plus a
// constant. The zero function never appears as a key; the constant-one term
// is folded into `constant`.
struct TermCombination {
    std::map<BooleanTerm, Rational> terms;
    Rational constant = 0;

    void add(const BooleanTerm& t, const Rational& c);
    bool operator==(const TermCombination&) const = default;
};

// Product expansion of Boolean factors: the coefficient of the XOR of each
// nonempty k-subset is (-1)^(k-1) / 2^(m-1), with coinciding canonical terms
// merged. DomainError on an empty factor list.
TermCombination expand_product(const std::vector<BooleanTerm>& factors);

// Normal form of a monomial modulo G1, as a Boolean-term combination:
// q = prod x_i^(e_i) maps to the product of the equation tails f_i (leads)
// and identity terms (free variables), with multiplicity.
TermCombination reduce_monomial(const Monomial& q, const Gf2System& sys);

struct ConvertStats {
    unsigned long monomials_processed = 0;
    unsigned long basis_emitted = 0;
    unsigned long registry_size = 0;
    unsigned long term_ops = 0;  // coefficient-vector operations, the cost driver
};

// The order-conversion algorithm: walks the degree <= d monomials in
// increasing grlex order, registers fresh longest Boolean terms as standard
// monomials, and emits a basis element whenever the longest term was already
// seen. Output is the d-truncated reduced grlex basis of <G1>, expressed in
// the caller's (external) variable names with the pivot-permutation order
// recorded in GroebnerBasis::order.
GroebnerBasis convert(const Gf2System& sys, unsigned d, ConvertStats* stats = nullptr);

// All monomials over n variables with 1 <= degree <= max_degree, in
// increasing grlex order with identity priority.
std::vector<Monomial> monomials_up_to_degree(std::size_t n, unsigned max_degree);

}  // namespace gbcsp

#endif
