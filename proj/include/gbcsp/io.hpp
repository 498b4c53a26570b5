#ifndef GBCSP_IO_HPP
#define GBCSP_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "gbcsp/csp.hpp"
#include "gbcsp/imp.hpp"

namespace gbcsp {

// Text syntax: terms like `3/2*x1^2*x3 - x2 + 1`; `*` between coefficient
// and variables optional; variables are x1..xn (1-based in text, 0-based
// internally). StructuralError with a position message on bad input.
Polynomial parse_polynomial(const std::string& text, std::size_t n_vars);

// Canonical form: terms in descending order (grlex by default), exact
// rational coefficients, `*` separators, no redundant 1 factors.
// parse(format(p)) == p and format is idempotent under reparsing.
std::string format_polynomial(const Polynomial& f, const MonomialOrder& ord = MonomialOrder::grlex());

std::string format_order(const MonomialOrder& ord);
MonomialOrder parse_order(const std::string& text);

// Instance text, one declaration per line:
//   vars n
//   domain v1,v2,...
//   xor xi ^ xj ^ ... = 0|1
//   perm xi xj : a->b, c->d, ...
//   complete xi {a,b} xj {c,d}
//   twofan xi a {a,b} xj b {c,d}
//   rel (xi,xj,...) : (t1),(t2),...
// `#` starts a comment. StructuralError messages carry the line number.
CspInstance parse_instance(std::istream& in);
CspInstance parse_instance_text(const std::string& text);
CspInstance load_instance(const std::string& path);

// Self-contained proof certificate: the query polynomial, the order, each
// used basis element together with its cofactor, and the remainder. The
// certificate round-trips byte-identically once terms are canonical.
std::string format_proof(const Polynomial& f, const MembershipProof& proof, const GroebnerBasis& basis);

struct ParsedProof {
    std::size_t n_vars = 0;
    Polynomial query;
    MembershipProof proof;      // ids 0..k-1 into `elements`
    GroebnerBasis elements;     // the basis slice recorded in the certificate

    ParsedProof() : query(0) {}
};
ParsedProof parse_proof(const std::string& text);

nlohmann::json basis_to_json(const GroebnerBasis& basis);
nlohmann::json proof_to_json(const Polynomial& f, const MembershipProof& proof, const GroebnerBasis& basis);

}  // namespace gbcsp

#endif
