#include "gbcsp/csp.hpp"

#include <algorithm>

namespace gbcsp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool contains(const std::vector<Rational>& v, const Rational& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

std::vector<std::size_t> constraint_scope(const Constraint& c) {
    return std::visit(
        overloaded{
            [](const Gf2LinearConstraint& g) {
                return std::vector<std::size_t>(g.equation.vars.begin(), g.equation.vars.end());
            },
            [](const PermutationConstraint& p) { return std::vector<std::size_t>{p.i, p.j}; },
            [](const CompleteConstraint& p) { return std::vector<std::size_t>{p.i, p.j}; },
            [](const TwoFanConstraint& p) { return std::vector<std::size_t>{p.i, p.j}; },
            [](const RelationConstraint& r) { return r.scope; },
        },
        c);
}

bool constraint_satisfied(const Constraint& c, const std::vector<Rational>& a) {
    return std::visit(
        overloaded{
            [&](const Gf2LinearConstraint& g) {
                bool acc = g.equation.parity;
                for (std::size_t v : g.equation.vars) {
                    if (a[v] == 0) continue;
                    if (a[v] == 1) {
                        acc = !acc;
                        continue;
                    }
                    return false;  // XOR constraints only hold on 0/1 values
                }
                return !acc;
            },
            [&](const PermutationConstraint& p) {
                for (const auto& [u, v] : p.pairs)
                    if (a[p.i] == u && a[p.j] == v) return true;
                return false;
            },
            [&](const CompleteConstraint& p) { return contains(p.di, a[p.i]) && contains(p.dj, a[p.j]); },
            [&](const TwoFanConstraint& p) {
                return (a[p.i] == p.a && contains(p.dj, a[p.j])) ||
                       (a[p.j] == p.b && contains(p.di, a[p.i]));
            },
            [&](const RelationConstraint& r) {
                for (const auto& t : r.tuples) {
                    bool match = true;
                    for (std::size_t k = 0; k < r.scope.size(); ++k)
                        if (a[r.scope[k]] != t[k]) {
                            match = false;
                            break;
                        }
                    if (match) return true;
                }
                return false;
            },
        },
        c);
}

SolutionSet enumerate_solutions(const CspInstance& inst, std::size_t cap) {
    for (const auto& c : inst.constraints)
        for (std::size_t v : constraint_scope(c))
            if (v >= inst.n) throw StructuralError("enumerate_solutions: constraint scope out of range");

    // check_at[v]: constraints whose scope is fully assigned once variable v is set.
    std::vector<std::vector<const Constraint*>> check_at(inst.n);
    for (const auto& c : inst.constraints) {
        auto scope = constraint_scope(c);
        if (scope.empty()) {
            // Constant constraint: unsatisfiable relations have no tuples.
            if (!constraint_satisfied(c, std::vector<Rational>(inst.n))) return {};
            continue;
        }
        check_at[*std::max_element(scope.begin(), scope.end())].push_back(&c);
    }

    SolutionSet out;
    std::vector<Rational> a(inst.n);
    auto rec = [&](auto&& self, std::size_t v) -> void {
        if (out.truncated) return;
        if (v == inst.n) {
            if (out.tuples.size() == cap) {
                out.truncated = true;
                return;
            }
            out.tuples.push_back(a);
            return;
        }
        for (const Rational& val : inst.domain) {
            a[v] = val;
            bool ok = true;
            for (const Constraint* c : check_at[v])
                if (!constraint_satisfied(*c, a)) {
                    ok = false;
                    break;
                }
            if (ok) self(self, v + 1);
        }
    };
    if (inst.n == 0) return out;
    rec(rec, 0);
    return out;
}

bool vanishing_member(const Polynomial& f, const SolutionSet& sols) {
    if (sols.truncated)
        throw DomainError("vanishing_member: solution set was truncated, evaluation is not a membership test");
    for (const auto& t : sols.tuples)
        if (f.evaluate(t) != 0) return false;
    return true;
}

Polynomial indicator_factor(std::size_t n_vars, std::size_t var, const Rational& at,
                            const std::vector<Rational>& nodes) {
    Polynomial f = Polynomial::constant(n_vars, 1);
    for (const Rational& u : nodes) {
        if (u == at) continue;
        Polynomial lin = Polynomial::variable(n_vars, var);
        lin -= Polynomial::constant(n_vars, u);
        f = f * lin * (Rational(1) / (at - u));
    }
    return f;
}

Polynomial domain_polynomial(std::size_t n_vars, std::size_t var, const std::vector<Rational>& values) {
    Polynomial f = Polynomial::constant(n_vars, 1);
    for (const Rational& u : values) {
        Polynomial lin = Polynomial::variable(n_vars, var);
        lin -= Polynomial::constant(n_vars, u);
        f = f * lin;
    }
    return f;
}

namespace {

// Indicator of a single excluded point of a relation: the product of the
// per-variable Lagrange basis polynomials. Vanishes on every allowed tuple.
Polynomial excluded_tuple_indicators(const std::vector<std::size_t>& scope,
                                     const std::vector<Rational>& point, std::size_t n_vars,
                                     const std::vector<Rational>& domain) {
    Polynomial f = Polynomial::constant(n_vars, 1);
    for (std::size_t k = 0; k < scope.size(); ++k)
        f = f * indicator_factor(n_vars, scope[k], point[k], domain);
    return f;
}

void append_relation_generators(std::vector<Polynomial>& out, const std::vector<std::size_t>& scope,
                                const std::vector<std::vector<Rational>>& allowed, std::size_t n_vars,
                                const std::vector<Rational>& domain) {
    // Enumerate domain^|scope| and emit an indicator for each excluded tuple.
    std::vector<Rational> point(scope.size());
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == scope.size()) {
            if (std::find(allowed.begin(), allowed.end(), point) == allowed.end())
                out.push_back(excluded_tuple_indicators(scope, point, n_vars, domain));
            return;
        }
        for (const Rational& u : domain) {
            point[k] = u;
            self(self, k + 1);
        }
    };
    rec(rec, 0);
}

}  // namespace

std::vector<Polynomial> ideal_generators(const CspInstance& inst) {
    if (inst.domain.empty()) throw StructuralError("ideal_generators: empty domain");
    std::vector<Polynomial> out;
    for (std::size_t v = 0; v < inst.n; ++v) out.push_back(domain_polynomial(inst.n, v, inst.domain));

    for (const auto& c : inst.constraints) {
        std::visit(
            overloaded{
                [&](const Gf2LinearConstraint& g) {
                    if (!(inst.domain == std::vector<Rational>{Rational(0), Rational(1)}))
                        throw DomainError("ideal_generators: XOR constraint over a non-Boolean domain");
                    Gf2Equation eq;
                    eq.parity = g.equation.parity;
                    if (g.equation.vars.empty()) {
                        if (eq.parity) out.push_back(Polynomial::constant(inst.n, 1));
                        return;
                    }
                    eq.lead = *g.equation.vars.begin();
                    for (auto it = std::next(g.equation.vars.begin()); it != g.equation.vars.end(); ++it)
                        eq.support.insert(*it);
                    out.push_back(lift_equation(eq, inst.n));
                },
                [&](const PermutationConstraint& p) {
                    std::vector<std::vector<Rational>> allowed;
                    for (const auto& [u, v] : p.pairs) allowed.push_back({u, v});
                    append_relation_generators(out, {p.i, p.j}, allowed, inst.n, inst.domain);
                },
                [&](const CompleteConstraint& p) {
                    out.push_back(domain_polynomial(inst.n, p.i, p.di));
                    out.push_back(domain_polynomial(inst.n, p.j, p.dj));
                },
                [&](const TwoFanConstraint& p) {
                    Polynomial fi = Polynomial::variable(inst.n, p.i);
                    fi -= Polynomial::constant(inst.n, p.a);
                    Polynomial fj = Polynomial::variable(inst.n, p.j);
                    fj -= Polynomial::constant(inst.n, p.b);
                    out.push_back(fi * fj);
                    out.push_back(domain_polynomial(inst.n, p.i, p.di));
                    out.push_back(domain_polynomial(inst.n, p.j, p.dj));
                },
                [&](const RelationConstraint& r) {
                    append_relation_generators(out, r.scope, r.tuples, inst.n, inst.domain);
                },
            },
            c);
    }
    return out;
}

}  // namespace gbcsp
