#ifndef GBCSP_BUCHBERGER_HPP
#define GBCSP_BUCHBERGER_HPP

#include <vector>

#include "gbcsp/poly.hpp"

namespace gbcsp {

struct GroebnerBasis {
    std::vector<Polynomial> elements;  // sorted by leading monomial under `order`
    MonomialOrder order;
    bool reduced = false;
    // Degree bound when this is a d-truncated basis; 0 means untruncated.
    unsigned truncated_degree = 0;
};

// Stable sort by leading monomial, ascending under ord.
void sort_by_leading_monomial(std::vector<Polynomial>& elems, const MonomialOrder& ord);

// Plain Buchberger completion with a FIFO critical-pair queue, the
// relatively-prime pair skip, and the deterministic division algorithm.
// This is the desk-scale oracle, not a performance engine. Throws
// ResourceError when the reduction step budget runs out.
GroebnerBasis buchberger(const std::vector<Polynomial>& generators, const MonomialOrder& ord,
                         unsigned long step_budget = 1'000'000);

// Inter-reduction to the unique reduced basis: monic elements, no monomial
// of any element divisible by another element's leading term. Idempotent.
GroebnerBasis reduce_basis(const GroebnerBasis& basis);

// Buchberger criterion: true iff every pairwise S-polynomial reduces to zero
// modulo the set.
bool is_groebner(const std::vector<Polynomial>& elements, const MonomialOrder& ord);

}  // namespace gbcsp

#endif
