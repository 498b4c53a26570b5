#include "gbcsp/imp.hpp"

namespace gbcsp {

QueryResult query(const Polynomial& f, const GroebnerBasis& basis, unsigned d) {
    if (basis.elements.empty()) throw DomainError("query: empty basis");
    if (f.total_degree() > d) throw DomainError("query: polynomial degree exceeds the bound d");
    if (basis.truncated_degree > 0) {
        if (basis.order.kind != OrderKind::grlex)
            throw DomainError("query: a degree-truncated basis requires a grlex order");
        if (f.total_degree() > basis.truncated_degree)
            throw DomainError("query: polynomial degree exceeds the basis truncation degree");
    }
    DivisionResult dr = divide(f, basis.elements, basis.order);
    QueryResult out;
    out.member = dr.remainder.is_zero();
    out.proof.order = basis.order;
    out.proof.remainder = dr.remainder;
    for (std::size_t i = 0; i < dr.quotients.size(); ++i) {
        if (dr.quotients[i].is_zero()) continue;
        out.proof.basis_ids.push_back(i);
        out.proof.cofactors.push_back(dr.quotients[i]);
    }
    return out;
}

bool verify(const Polynomial& f, const MembershipProof& proof, const GroebnerBasis& basis) {
    if (proof.basis_ids.size() != proof.cofactors.size())
        throw StructuralError("verify: cofactor list does not match basis_ids");
    for (std::size_t id : proof.basis_ids)
        if (id >= basis.elements.size()) throw StructuralError("verify: basis id out of range");
    if (proof.order != basis.order) return false;

    Polynomial sum = proof.remainder;
    for (std::size_t k = 0; k < proof.basis_ids.size(); ++k)
        sum += proof.cofactors[k] * basis.elements[proof.basis_ids[k]];
    if (!(sum == f)) return false;

    // multideg(h_i g_i) <= multideg(f) for every nonzero product.
    for (std::size_t k = 0; k < proof.basis_ids.size(); ++k) {
        Polynomial prod = proof.cofactors[k] * basis.elements[proof.basis_ids[k]];
        if (prod.is_zero()) continue;
        if (f.is_zero()) return false;
        if (compare(prod.leading_monomial(proof.order), f.leading_monomial(proof.order), proof.order) > 0)
            return false;
    }

    // Remainder irreducibility against every basis leading term.
    for (const auto& [m, c] : proof.remainder.terms())
        for (const Polynomial& g : basis.elements)
            if (g.leading_monomial(basis.order).divides(m)) return false;
    return true;
}

}  // namespace gbcsp
