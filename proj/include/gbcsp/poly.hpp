#ifndef GBCSP_POLY_HPP
#define GBCSP_POLY_HPP

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "gbcsp/rational.hpp"

namespace gbcsp {

// Exponent vector of a power product over a fixed variable count.
class Monomial {
  public:
    explicit Monomial(std::size_t n_vars) : e_(n_vars, 0) {}
    Monomial(std::initializer_list<unsigned> exps) : e_(exps) {}

    static Monomial one(std::size_t n_vars) { return Monomial(n_vars); }
    static Monomial var(std::size_t n_vars, std::size_t i, unsigned power = 1);

    std::size_t n_vars() const { return e_.size(); }
    unsigned exponent(std::size_t i) const { return e_[i]; }
    void set_exponent(std::size_t i, unsigned p) { e_[i] = p; }
    unsigned total_degree() const;
    bool is_one() const;

    Monomial operator*(const Monomial& m) const;
    bool divides(const Monomial& m) const;
    // Requires divides(m) on the divisor side: returns *this / m.
    Monomial operator/(const Monomial& m) const;
    static Monomial lcm(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& m) const { return e_ == m.e_; }
    // Canonical storage key order (plain exponent-vector lexicographic);
    // not a monomial order, use compare() for those.
    bool operator<(const Monomial& m) const { return e_ < m.e_; }

  private:
    std::vector<unsigned> e_;
};

enum class OrderKind { lex, grlex };

// A monomial order: lex or grlex, with an optional variable priority
// permutation (priority[0] is the greatest variable). An empty priority
// means the identity x1 > x2 > ... > xn.
struct MonomialOrder {
    OrderKind kind = OrderKind::grlex;
    std::vector<std::size_t> priority;

    static MonomialOrder lex() { return {OrderKind::lex, {}}; }
    static MonomialOrder grlex() { return {OrderKind::grlex, {}}; }
    static MonomialOrder lex(std::vector<std::size_t> prio) { return {OrderKind::lex, std::move(prio)}; }
    static MonomialOrder grlex(std::vector<std::size_t> prio) { return {OrderKind::grlex, std::move(prio)}; }

    bool operator==(const MonomialOrder&) const = default;
};

// Strict total order comparison: -1 if a < b, 0 if equal, +1 if a > b.
int compare(const Monomial& a, const Monomial& b, const MonomialOrder& ord);

inline bool less(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
    return compare(a, b, ord) < 0;
}

// Sparse multivariate polynomial over Q. Terms are stored canonically (no
// zero coefficients); leading-term queries are parameterized by a monomial
// order rather than baked into the representation.
class Polynomial {
  public:
    explicit Polynomial(std::size_t n_vars) : n_(n_vars) {}

    static Polynomial zero(std::size_t n_vars) { return Polynomial(n_vars); }
    static Polynomial constant(std::size_t n_vars, const Rational& c);
    static Polynomial variable(std::size_t n_vars, std::size_t i);
    static Polynomial term(const Monomial& m, const Rational& c);

    std::size_t n_vars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    // Adds c * m, merging with an existing term and dropping exact zeros.
    void add_term(const Monomial& m, const Rational& c);
    Rational coeff(const Monomial& m) const;

    Polynomial operator+(const Polynomial& g) const;
    Polynomial operator-(const Polynomial& g) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& g) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial& operator+=(const Polynomial& g);
    Polynomial& operator-=(const Polynomial& g);
    bool operator==(const Polynomial& g) const { return n_ == g.n_ && terms_ == g.terms_; }

    // Total degree of the polynomial; 0 for the zero polynomial.
    unsigned total_degree() const;

    // Order-parameterized queries; DomainError on the zero polynomial.
    const Monomial& leading_monomial(const MonomialOrder& ord) const;
    Rational leading_coeff(const MonomialOrder& ord) const;
    Monomial multideg(const MonomialOrder& ord) const { return leading_monomial(ord); }

    Polynomial monic(const MonomialOrder& ord) const;
    Rational evaluate(std::span<const Rational> point) const;

  private:
    std::size_t n_;
    std::map<Monomial, Rational> terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& f) { return f * c; }

struct DivisionResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
    unsigned long steps = 0;

    DivisionResult() : remainder(0) {}
};

// Multivariate division of f by an ordered list of divisors. Deterministic:
// at each step the divisor used is the first in list order whose leading
// term divides the current leading term. Satisfies
//   f = sum quotient_i * basis_i + remainder
// exactly, with no remainder term divisible by any divisor's leading term
// and multideg(quotient_i * basis_i) <= multideg(f) whenever nonzero.
DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& basis,
                      const MonomialOrder& ord, unsigned long max_steps = 0);

// S(f, g) = (x^g/LT(f)) f - (x^g/LT(g)) g with x^g = lcm(LM(f), LM(g)).
// DomainError if either input is zero.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord);

// Renames variables: variable i of f becomes variable new_index_of[i].
Polynomial permute_variables(const Polynomial& f, std::span<const std::size_t> new_index_of);

}  // namespace gbcsp

#endif
