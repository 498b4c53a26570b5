#ifndef GBCSP_RATIONAL_HPP
#define GBCSP_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace gbcsp {

// Exact rational coefficients. mpq_class keeps the canonical form the rest of
// the code relies on: gcd(|num|, den) = 1, den >= 1, zero stored as 0/1.
// Note the two-argument constructor does NOT canonicalize; call
// canonicalize() after Rational(num, den) before handing the value on.
using Rational = mpq_class;
using Integer = mpz_class;

// Errors raised on malformed inputs (wrong variable counts, bad text, ...).
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Errors raised on semantically invalid arguments (zero polynomial where a
// nonzero one is required, duplicate interpolation nodes, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when a configured budget (reduction steps, expansion size,
// enumeration cap) is exhausted.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_pow2(unsigned k) {
    Rational r(1);
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), k);
    return r;
}

}  // namespace gbcsp

#endif
