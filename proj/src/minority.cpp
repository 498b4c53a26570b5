#include "gbcsp/minority.hpp"

#include <algorithm>

namespace gbcsp {

std::optional<Gf2System> gf2_rref(const std::vector<RawXor>& raw, std::size_t n) {
    // Row = variable bits plus a parity bit at position n.
    std::vector<std::vector<bool>> rows;
    for (const auto& rx : raw) {
        std::vector<bool> row(n + 1, false);
        for (std::size_t v : rx.vars) {
            if (v >= n) throw StructuralError("gf2_rref: variable index out of range");
            row[v] = !row[v];  // repeated variables cancel mod 2
        }
        row[n] = rx.parity;
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < n && next_row < rows.size(); ++col) {
        std::size_t pivot = rows.size();
        for (std::size_t r = next_row; r < rows.size(); ++r)
            if (rows[r][col]) {
                pivot = r;
                break;
            }
        if (pivot == rows.size()) continue;
        std::swap(rows[next_row], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != next_row && rows[r][col])
                for (std::size_t k = col; k <= n; ++k) rows[r][k] = rows[r][k] ^ rows[next_row][k];
        }
        pivot_cols.push_back(col);
        ++next_row;
    }
    for (std::size_t r = next_row; r < rows.size(); ++r)
        if (rows[r][n]) return std::nullopt;  // 0 = 1

    Gf2System sys;
    sys.n = n;
    sys.rref = true;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;
    sys.var_order = pivot_cols;
    for (std::size_t v = 0; v < n; ++v)
        if (!is_pivot[v]) sys.var_order.push_back(v);
    std::vector<std::size_t> internal_of(n);
    for (std::size_t k = 0; k < n; ++k) internal_of[sys.var_order[k]] = k;

    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
        Gf2Equation eq;
        eq.lead = i;
        eq.parity = rows[i][n];
        for (std::size_t v = 0; v < n; ++v)
            if (rows[i][v] && v != pivot_cols[i]) eq.support.insert(internal_of[v]);
        sys.equations.push_back(std::move(eq));
    }
    return sys;
}

Polynomial lift_equation(const Gf2Equation& eq, std::size_t n_vars, std::size_t expand_threshold) {
    if (eq.support.size() > expand_threshold)
        throw ResourceError("lift_equation: support too large for explicit expansion");
    std::vector<std::size_t> supp(eq.support.begin(), eq.support.end());
    Polynomial m_f = Polynomial::zero(n_vars);
    if (eq.parity) m_f.add_term(Monomial::one(n_vars), Rational(1));
    // Subset sums of Eq-style sign pattern: coefficient of a k-subset product
    // is (-1)^(k-1) 2^(k-1) for parity 0 and (-1)^k 2^(k-1) for parity 1.
    const std::size_t s = supp.size();
    for (std::size_t mask = 1; mask < (std::size_t(1) << s); ++mask) {
        Monomial mono(n_vars);
        unsigned k = 0;
        for (std::size_t b = 0; b < s; ++b)
            if (mask & (std::size_t(1) << b)) {
                mono.set_exponent(supp[b], 1);
                ++k;
            }
        Rational c = rational_pow2(k - 1);
        bool negative = eq.parity ? (k % 2 == 1) : (k % 2 == 0);
        if (negative) c = -c;
        m_f.add_term(mono, c);
    }
    Polynomial r = Polynomial::variable(n_vars, eq.lead);
    r -= m_f;
    return r;
}

SymbolicG1 build_g1(const Gf2System& sys) {
    if (!sys.rref) throw DomainError("build_g1: system must be in reduced row echelon form");
    SymbolicG1 g1;
    g1.n = sys.n;
    g1.equations = sys.equations;
    for (std::size_t k = sys.rank(); k < sys.n; ++k) g1.square_vars.push_back(k);
    return g1;
}

std::vector<Polynomial> expand_g1(const SymbolicG1& g1, std::size_t expand_threshold) {
    std::vector<Polynomial> out;
    for (const auto& eq : g1.equations) out.push_back(lift_equation(eq, g1.n, expand_threshold));
    for (std::size_t v : g1.square_vars) {
        Polynomial sq = Polynomial::term(Monomial::var(g1.n, v, 2), Rational(1));
        sq -= Polynomial::variable(g1.n, v);
        out.push_back(std::move(sq));
    }
    return out;
}

BooleanTerm xor_terms(const BooleanTerm& a, const BooleanTerm& b) {
    BooleanTerm r;
    r.parity = a.parity ^ b.parity;
    std::set_symmetric_difference(a.support.begin(), a.support.end(), b.support.begin(), b.support.end(),
                                  std::inserter(r.support, r.support.end()));
    return r;
}

void TermCombination::add(const BooleanTerm& t, const Rational& c) {
    if (c == 0) return;
    if (t.support.empty()) {
        if (t.parity) constant += c;  // the constant-one function; (empty, 0) is the zero function
        return;
    }
    auto [it, inserted] = terms.emplace(t, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

TermCombination expand_product(const std::vector<BooleanTerm>& factors) {
    if (factors.empty()) throw DomainError("expand_product: empty factor list");
    const std::size_t m = factors.size();
    TermCombination out;
    Rational scale = Rational(1) / rational_pow2(static_cast<unsigned>(m - 1));
    for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
        BooleanTerm t;
        unsigned k = 0;
        for (std::size_t b = 0; b < m; ++b)
            if (mask & (std::size_t(1) << b)) {
                t = xor_terms(t, factors[b]);
                ++k;
            }
        Rational c = (k % 2 == 1) ? scale : -scale;
        out.add(t, c);
    }
    return out;
}

namespace {

BooleanTerm tail_function(const Gf2System& sys, std::size_t var) {
    if (var < sys.rank()) {
        const Gf2Equation& eq = sys.equations[var];
        return BooleanTerm{eq.support, eq.parity};
    }
    return BooleanTerm{{var}, false};
}

}  // namespace

TermCombination reduce_monomial(const Monomial& q, const Gf2System& sys) {
    if (q.n_vars() != sys.n) throw StructuralError("reduce_monomial: variable count mismatch");
    std::vector<BooleanTerm> factors;
    for (std::size_t v = 0; v < sys.n; ++v)
        for (unsigned k = 0; k < q.exponent(v); ++k) factors.push_back(tail_function(sys, v));
    if (factors.empty()) {
        TermCombination one;
        one.constant = 1;
        return one;
    }
    return expand_product(factors);
}

std::vector<Monomial> monomials_up_to_degree(std::size_t n, unsigned max_degree) {
    std::vector<Monomial> out;
    Monomial current(n);
    // Depth-first composition of exponents, then a sort by the grlex order.
    auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
        if (var + 1 == n) {
            if (remaining > 0) {
                Monomial m = current;
                m.set_exponent(var, remaining);
                out.push_back(std::move(m));
            } else if (!current.is_one()) {
                out.push_back(current);
            }
            return;
        }
        for (unsigned e = 0; e <= remaining; ++e) {
            current.set_exponent(var, e);
            self(self, var + 1, remaining - e);
        }
        current.set_exponent(var, 0);
    };
    for (unsigned d = 1; d <= max_degree; ++d) {
        if (n == 1) {
            out.push_back(Monomial::var(1, 0, d));
        } else {
            rec(rec, 0, d);
        }
    }
    MonomialOrder ord = MonomialOrder::grlex();
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return compare(a, b, ord) < 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GroebnerBasis convert(const Gf2System& sys, unsigned d, ConvertStats* stats) {
    if (!sys.rref) throw DomainError("convert: system must be in reduced row echelon form");
    if (d < 1) throw DomainError("convert: degree bound must be at least 1");
    const std::size_t n = sys.n;

    // Sparse coefficient vector over the standard-monomial list B.
    using Expr = std::map<std::size_t, Rational>;
    auto axpy = [&](Expr& dst, const Rational& c, const Expr& src) {
        for (const auto& [j, v] : src) {
            Rational& slot = dst[j];
            slot += c * v;
            if (slot == 0) dst.erase(j);
            if (stats) ++stats->term_ops;
        }
    };

    std::vector<Monomial> b_list{Monomial::one(n)};
    // Registered longest Boolean terms, keyed by support with the registered
    // parity recorded; (support, parity^1) resolves through f xor 1 = 1 - f.
    struct Entry {
        bool parity;
        Expr expr;
    };
    std::map<std::set<std::size_t>, Entry> registry;
    registry[{}] = Entry{true, Expr{{0, Rational(1)}}};

    auto expr_of = [&](const BooleanTerm& t) -> Expr {
        auto it = registry.find(t.support);
        if (it == registry.end()) throw std::logic_error("convert: unregistered Boolean term");
        if (t.parity == it->second.parity) return it->second.expr;
        Expr r{{0, Rational(1)}};
        axpy(r, Rational(-1), it->second.expr);
        return r;
    };

    std::vector<Polynomial> g2;
    std::vector<Monomial> emitted_lms;
    MonomialOrder internal_ord = MonomialOrder::grlex();

    for (const Monomial& q : monomials_up_to_degree(n, d)) {
        bool skip = false;
        for (const Monomial& lm : emitted_lms)
            if (lm.divides(q)) {
                skip = true;
                break;
            }
        if (skip) continue;
        if (stats) ++stats->monomials_processed;

        TermCombination comb = reduce_monomial(q, sys);
        BooleanTerm longest;
        for (std::size_t v = 0; v < n; ++v)
            for (unsigned k = 0; k < q.exponent(v); ++k) longest = xor_terms(longest, tail_function(sys, v));

        Rational c_longest = longest.support.empty()
                                 ? (longest.parity ? comb.constant : Rational(0))
                                 : [&] {
                                       auto it = comb.terms.find(longest);
                                       return it == comb.terms.end() ? Rational(0) : it->second;
                                   }();

        bool registered = registry.contains(longest.support);
        if (!registered && c_longest != 0) {
            std::size_t idx = b_list.size();
            b_list.push_back(q);
            Expr e{{idx, Rational(1)}};
            if (comb.constant != 0) axpy(e, -comb.constant, Expr{{0, Rational(1)}});
            for (const auto& [t, c] : comb.terms) {
                if (t == longest) continue;
                axpy(e, -c, expr_of(t));
            }
            for (auto& [j, v] : e) v /= c_longest;
            registry[longest.support] = Entry{longest.parity, std::move(e)};
        } else {
            Expr v;
            if (comb.constant != 0) axpy(v, comb.constant, Expr{{0, Rational(1)}});
            for (const auto& [t, c] : comb.terms) axpy(v, c, expr_of(t));
            Polynomial g = Polynomial::term(q, Rational(1));
            for (const auto& [j, c] : v) g.add_term(b_list[j], -c);
            g2.push_back(std::move(g));
            emitted_lms.push_back(q);
        }
    }

    if (stats) {
        stats->basis_emitted = g2.size();
        stats->registry_size = registry.size();
    }

    // Map back to external variable names; the basis order carries the pivot
    // permutation so grlex comparisons stay consistent with the construction.
    GroebnerBasis out;
    out.order = MonomialOrder::grlex(sys.var_order);
    out.reduced = true;
    out.truncated_degree = d;
    for (const Polynomial& g : g2) out.elements.push_back(permute_variables(g, sys.var_order));
    sort_by_leading_monomial(out.elements, out.order);
    return out;
}

}  // namespace gbcsp
