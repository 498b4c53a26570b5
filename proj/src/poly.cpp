#include "gbcsp/poly.hpp"

#include <algorithm>

namespace gbcsp {

Monomial Monomial::var(std::size_t n_vars, std::size_t i, unsigned power) {
    Monomial m(n_vars);
    m.e_.at(i) = power;
    return m;
}

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (unsigned x : e_) d += x;
    return d;
}

bool Monomial::is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](unsigned x) { return x == 0; });
}

Monomial Monomial::operator*(const Monomial& m) const {
    if (e_.size() != m.e_.size()) throw StructuralError("monomial product: mismatched variable counts");
    Monomial r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += m.e_[i];
    return r;
}

bool Monomial::divides(const Monomial& m) const {
    if (e_.size() != m.e_.size()) throw StructuralError("monomial divisibility: mismatched variable counts");
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > m.e_[i]) return false;
    return true;
}

Monomial Monomial::operator/(const Monomial& m) const {
    if (!m.divides(*this)) throw DomainError("monomial quotient: not divisible");
    Monomial r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= m.e_[i];
    return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    if (a.e_.size() != b.e_.size()) throw StructuralError("monomial lcm: mismatched variable counts");
    Monomial r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::max(r.e_[i], b.e_[i]);
    return r;
}

int compare(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
    if (a.n_vars() != b.n_vars()) throw StructuralError("monomial compare: mismatched variable counts");
    if (!ord.priority.empty() && ord.priority.size() != a.n_vars())
        throw StructuralError("monomial compare: priority length mismatch");
    if (ord.kind == OrderKind::grlex) {
        unsigned da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db ? -1 : 1;
    }
    for (std::size_t k = 0; k < a.n_vars(); ++k) {
        std::size_t v = ord.priority.empty() ? k : ord.priority[k];
        unsigned ea = a.exponent(v), eb = b.exponent(v);
        if (ea != eb) return ea < eb ? -1 : 1;
    }
    return 0;
}

Polynomial Polynomial::constant(std::size_t n_vars, const Rational& c) {
    Polynomial f(n_vars);
    f.add_term(Monomial::one(n_vars), c);
    return f;
}

Polynomial Polynomial::variable(std::size_t n_vars, std::size_t i) {
    Polynomial f(n_vars);
    f.add_term(Monomial::var(n_vars, i), Rational(1));
    return f;
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
    Polynomial f(m.n_vars());
    f.add_term(m, c);
    return f;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (m.n_vars() != n_) throw StructuralError("polynomial term: mismatched variable counts");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& g) {
    if (n_ != g.n_) throw StructuralError("polynomial sum: mismatched variable counts");
    for (const auto& [m, c] : g.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& g) {
    if (n_ != g.n_) throw StructuralError("polynomial difference: mismatched variable counts");
    for (const auto& [m, c] : g.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& g) const {
    Polynomial r = *this;
    r += g;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& g) const {
    Polynomial r = *this;
    r -= g;
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& g) const {
    if (n_ != g.n_) throw StructuralError("polynomial product: mismatched variable counts");
    Polynomial r(n_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : g.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(n_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

const Monomial& Polynomial::leading_monomial(const MonomialOrder& ord) const {
    if (terms_.empty()) throw DomainError("leading monomial of the zero polynomial");
    const Monomial* best = nullptr;
    for (const auto& [m, c] : terms_)
        if (!best || compare(m, *best, ord) > 0) best = &m;
    return *best;
}

Rational Polynomial::leading_coeff(const MonomialOrder& ord) const {
    return terms_.at(leading_monomial(ord));
}

Polynomial Polynomial::monic(const MonomialOrder& ord) const {
    if (is_zero()) return *this;
    Rational lc = leading_coeff(ord);
    return *this * (Rational(1) / lc);
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    if (point.size() != n_) throw StructuralError("evaluate: mismatched variable counts");
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational v = c;
        for (std::size_t i = 0; i < n_; ++i)
            for (unsigned k = 0; k < m.exponent(i); ++k) v *= point[i];
        total += v;
    }
    return total;
}

DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& basis,
                      const MonomialOrder& ord, unsigned long max_steps) {
    for (const auto& g : basis) {
        if (g.is_zero()) throw DomainError("divide: zero divisor");
        if (g.n_vars() != f.n_vars()) throw StructuralError("divide: mismatched variable counts");
    }
    DivisionResult res;
    res.quotients.assign(basis.size(), Polynomial::zero(f.n_vars()));
    res.remainder = Polynomial::zero(f.n_vars());
    Polynomial p = f;
    // Leading monomials of the divisors are loop-invariant.
    std::vector<const Monomial*> lms;
    std::vector<Rational> lcs;
    lms.reserve(basis.size());
    for (const auto& g : basis) {
        lms.push_back(&g.leading_monomial(ord));
        lcs.push_back(g.coeff(*lms.back()));
    }
    while (!p.is_zero()) {
        const Monomial& lm = p.leading_monomial(ord);
        bool divided = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (lms[i]->divides(lm)) {
                Rational c = p.coeff(lm) / lcs[i];
                Monomial q = lm / *lms[i];
                res.quotients[i].add_term(q, c);
                p -= basis[i] * Polynomial::term(q, c);
                divided = true;
                break;
            }
        }
        if (!divided) {
            res.remainder.add_term(lm, p.coeff(lm));
            Polynomial t = Polynomial::term(lm, p.coeff(lm));
            p -= t;
        }
        if (++res.steps, max_steps && res.steps > max_steps)
            throw ResourceError("divide: reduction step budget exhausted");
    }
    return res;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
    if (f.is_zero() || g.is_zero()) throw DomainError("s_polynomial of a zero polynomial");
    const Monomial& lf = f.leading_monomial(ord);
    const Monomial& lg = g.leading_monomial(ord);
    Monomial l = Monomial::lcm(lf, lg);
    Polynomial a = Polynomial::term(l / lf, Rational(1) / f.coeff(lf));
    Polynomial b = Polynomial::term(l / lg, Rational(1) / g.coeff(lg));
    return a * f - b * g;
}

Polynomial permute_variables(const Polynomial& f, std::span<const std::size_t> new_index_of) {
    if (new_index_of.size() != f.n_vars()) throw StructuralError("permute_variables: permutation length mismatch");
    Polynomial r(f.n_vars());
    for (const auto& [m, c] : f.terms()) {
        Monomial m2(f.n_vars());
        for (std::size_t i = 0; i < f.n_vars(); ++i) m2.set_exponent(new_index_of[i], m.exponent(i));
        r.add_term(m2, c);
    }
    return r;
}

}  // namespace gbcsp
