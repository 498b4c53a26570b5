#ifndef GBCSP_IMP_HPP
#define GBCSP_IMP_HPP

#include "gbcsp/buchberger.hpp"

namespace gbcsp {

// Cofactor certificate for f = sum h_i * g_i + remainder against a basis.
// Only nonzero cofactors are stored; basis_ids[k] is the index of the basis
// element paired with cofactors[k].
struct MembershipProof {
    std::vector<std::size_t> basis_ids;
    std::vector<Polynomial> cofactors;
    Polynomial remainder;
    MonomialOrder order;

    MembershipProof() : remainder(0) {}
};

struct QueryResult {
    bool member = false;
    MembershipProof proof;
};

// Membership of f in the ideal of the basis, decided by deterministic
// division; the proof witnesses the reduction either way. DomainError when
// deg(f) exceeds d, or when the basis is d-truncated and deg(f) exceeds the
// truncation degree or the basis order is lex (remainder degrees are only
// controlled under grlex).
QueryResult query(const Polynomial& f, const GroebnerBasis& basis, unsigned d);

// Checks a certificate: exact reconstruction f = sum h_i g_i + remainder,
// the multidegree side condition multideg(h_i g_i) <= multideg(f), no
// remainder term divisible by any basis leading term, and order agreement
// with the basis. StructuralError on out-of-range basis_ids.
bool verify(const Polynomial& f, const MembershipProof& proof, const GroebnerBasis& basis);

}  // namespace gbcsp

#endif
