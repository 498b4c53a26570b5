#include "gbcsp/dualdisc.hpp"

#include <algorithm>

namespace gbcsp {

namespace {

std::vector<Rational> sorted_unique(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<Rational> meet(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool has(const std::vector<Rational>& sorted, const Rational& x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

std::optional<std::vector<std::vector<Rational>>> arc_consistency(const CspInstance& inst) {
    for (const auto& c : inst.constraints)
        if (std::holds_alternative<Gf2LinearConstraint>(c) || std::holds_alternative<RelationConstraint>(c))
            throw StructuralError("arc_consistency: constraints must be permutation, complete or two-fan");
    std::vector<std::vector<Rational>> dom(inst.n, inst.domain);
    std::vector<Rational> probe(inst.n);
    auto supported = [&](const Constraint& c, std::size_t u, const Rational& a, std::size_t w) {
        probe[u] = a;
        for (const Rational& b : dom[w]) {
            probe[w] = b;
            if (constraint_satisfied(c, probe)) return true;
        }
        return false;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : inst.constraints) {
            auto sc = constraint_scope(c);
            if (sc.size() != 2 || sc[0] == sc[1] || sc[0] >= inst.n || sc[1] >= inst.n)
                throw StructuralError("arc_consistency: malformed binary constraint scope");
            for (auto [u, w] : {std::pair{sc[0], sc[1]}, std::pair{sc[1], sc[0]}}) {
                std::vector<Rational> keep;
                for (const Rational& a : dom[u])
                    if (supported(c, u, a, w)) keep.push_back(a);
                if (keep.size() != dom[u].size()) {
                    dom[u] = std::move(keep);
                    changed = true;
                    if (dom[u].empty()) return std::nullopt;
                }
            }
        }
    }
    return dom;
}

bool Cpc::contains(std::size_t v) const { return std::binary_search(vars.begin(), vars.end(), v); }

std::vector<Rational> Cpc::values_of(std::size_t v) const {
    const auto& m = bij.at(v);
    std::vector<Rational> out;
    out.reserve(rep_values.size());
    for (const Rational& t : rep_values) out.push_back(m.at(t));
    std::sort(out.begin(), out.end());
    return out;
}

Rational Cpc::map_value(std::size_t from, std::size_t to, const Rational& value) const {
    const auto& mf = bij.at(from);
    const auto& mt = bij.at(to);
    for (const Rational& t : rep_values)
        if (mf.at(t) == value) return mt.at(t);
    throw DomainError("Cpc::map_value: value not allowed for the source variable");
}

bool Cpc::restrict(const std::function<bool(const Rational&)>& pred) {
    std::vector<Rational> keep;
    for (const Rational& t : rep_values)
        if (pred(t)) keep.push_back(t);
    if (keep.size() != rep_values.size()) {
        for (auto& [v, m] : bij)
            for (auto it = m.begin(); it != m.end();)
                it = std::binary_search(keep.begin(), keep.end(), it->first) ? std::next(it) : m.erase(it);
        rep_values = std::move(keep);
    }
    return !rep_values.empty();
}

namespace {

// Makes the smallest variable the representative, recomputing all bijections
// relative to it.
void re_root(Cpc& c) {
    std::size_t nr = c.vars.front();
    if (nr == c.rep) return;
    std::map<Rational, Rational> inv;  // value of nr -> old rep value
    for (const Rational& t : c.rep_values) inv[c.bij.at(nr).at(t)] = t;
    std::map<std::size_t, std::map<Rational, Rational>> nb;
    for (const auto& [v, m] : c.bij)
        for (const auto& [val, oldt] : inv) nb[v][val] = m.at(oldt);
    std::vector<Rational> nrv;
    for (const auto& [val, oldt] : inv) nrv.push_back(val);
    c.bij = std::move(nb);
    c.rep_values = std::move(nrv);
    c.rep = nr;
}

bool expand_cpc(Cpc& c, std::size_t p, std::size_t q, const std::map<Rational, Rational>& pi) {
    if (!c.restrict([&](const Rational& t) { return pi.contains(c.bij.at(p).at(t)); })) return false;
    auto& mq = c.bij[q];
    for (const Rational& t : c.rep_values) mq[t] = pi.at(c.bij.at(p).at(t));
    c.vars.insert(std::lower_bound(c.vars.begin(), c.vars.end(), q), q);
    re_root(c);
    return true;
}

}  // namespace

bool add_perm_constraint(std::vector<Cpc>& cpcs, const PermutationConstraint& pc) {
    if (pc.i == pc.j) throw StructuralError("permutation constraint on a single variable");
    std::map<Rational, Rational> fwd, inv;
    for (const auto& [a, b] : pc.pairs) {
        fwd[a] = b;
        inv[b] = a;
    }
    if (fwd.size() != pc.pairs.size() || inv.size() != pc.pairs.size())
        throw StructuralError("permutation constraint is not a bijection");
    auto idx_of = [&](std::size_t v) -> std::ptrdiff_t {
        for (std::size_t k = 0; k < cpcs.size(); ++k)
            if (cpcs[k].contains(v)) return static_cast<std::ptrdiff_t>(k);
        return -1;
    };
    std::ptrdiff_t ci = idx_of(pc.i), cj = idx_of(pc.j);

    if (ci < 0 && cj < 0) {
        Cpc c;
        c.vars = {std::min(pc.i, pc.j), std::max(pc.i, pc.j)};
        c.rep = c.vars.front();
        const auto& lead = (pc.i < pc.j) ? fwd : inv;
        for (const auto& [a, b] : lead) {
            c.rep_values.push_back(a);
            c.bij[c.rep][a] = a;
            c.bij[c.vars.back()][a] = b;
        }
        if (c.rep_values.empty()) return false;
        cpcs.push_back(std::move(c));
        return true;
    }
    if (ci >= 0 && cj < 0) return expand_cpc(cpcs[ci], pc.i, pc.j, fwd);
    if (cj >= 0 && ci < 0) return expand_cpc(cpcs[cj], pc.j, pc.i, inv);
    if (ci == cj) {
        Cpc& c = cpcs[ci];
        return c.restrict([&](const Rational& t) {
            auto it = fwd.find(c.bij.at(pc.i).at(t));
            return it != fwd.end() && it->second == c.bij.at(pc.j).at(t);
        });
    }

    // Combine the class of pc.i with the class of pc.j through the bijection.
    Cpc& a = cpcs[ci];
    Cpc& b = cpcs[cj];
    std::map<Rational, Rational> binv;  // value at pc.j -> rep value of b
    for (const Rational& s : b.rep_values) binv[b.bij.at(pc.j).at(s)] = s;
    if (!a.restrict([&](const Rational& t) {
            auto it = fwd.find(a.bij.at(pc.i).at(t));
            return it != fwd.end() && binv.contains(it->second);
        }))
        return false;
    for (std::size_t v : b.vars) {
        auto& mv = a.bij[v];
        for (const Rational& t : a.rep_values)
            mv[t] = b.bij.at(v).at(binv.at(fwd.at(a.bij.at(pc.i).at(t))));
    }
    std::vector<std::size_t> merged;
    std::merge(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(), std::back_inserter(merged));
    a.vars = std::move(merged);
    re_root(a);
    cpcs.erase(cpcs.begin() + cj);
    return true;
}

std::optional<std::vector<Cpc>> build_cpcs(const std::vector<PermutationConstraint>& perms) {
    std::vector<Cpc> cpcs;
    for (const auto& pc : perms)
        if (!add_perm_constraint(cpcs, pc)) return std::nullopt;
    return cpcs;
}

Polynomial lagrange_interpolate(std::size_t n_vars, std::size_t var,
                                const std::vector<std::pair<Rational, Rational>>& points) {
    std::vector<Rational> nodes;
    for (const auto& [x, y] : points) nodes.push_back(x);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j]) throw DomainError("lagrange_interpolate: duplicate nodes");
    Polynomial f = Polynomial::zero(n_vars);
    for (const auto& [x, y] : points) f += indicator_factor(n_vars, var, x, nodes) * y;
    return f;
}

GroebnerBasis cpc_basis(const Cpc& c, std::size_t n_vars) {
    if (c.vars.empty() || c.rep_values.empty()) throw DomainError("cpc_basis: empty class");
    MonomialOrder ord = MonomialOrder::grlex();

    // Group variables with identical columns; the largest index represents
    // the group so the differences x_v - x_rep are auto-reduced.
    std::map<std::vector<Rational>, std::vector<std::size_t>> groups;
    for (std::size_t v : c.vars) {
        std::vector<Rational> col;
        for (const Rational& t : c.rep_values) col.push_back(c.bij.at(v).at(t));
        groups[col].push_back(v);
    }
    std::vector<std::size_t> reps;
    std::vector<Polynomial> diffs;
    for (const auto& [col, vs] : groups) {
        std::size_t r = *std::max_element(vs.begin(), vs.end());
        reps.push_back(r);
        for (std::size_t v : vs)
            if (v != r) diffs.push_back(Polynomial::variable(n_vars, v) - Polynomial::variable(n_vars, r));
    }
    std::sort(reps.begin(), reps.end());

    std::vector<Polynomial> gens;
    for (std::size_t u : reps) gens.push_back(domain_polynomial(n_vars, u, c.values_of(u)));
    for (std::size_t u : reps)
        for (std::size_t w : reps) {
            if (u == w) continue;
            std::vector<std::pair<Rational, Rational>> points;
            for (const Rational& t : c.rep_values) points.emplace_back(c.bij.at(w).at(t), c.bij.at(u).at(t));
            gens.push_back(Polynomial::variable(n_vars, u) - lagrange_interpolate(n_vars, w, points));
        }
    GroebnerBasis local = reduce_basis(buchberger(gens, ord));

    GroebnerBasis out;
    out.order = ord;
    out.reduced = true;
    out.elements = local.elements;
    for (const Polynomial& s : diffs) out.elements.push_back(divide(s, local.elements, ord).remainder);
    sort_by_leading_monomial(out.elements, out.order);
    return out;
}

void CfPool::add_fan(std::size_t i, const Rational& a, std::size_t j, const Rational& b) {
    if (i == j) throw StructuralError("CfPool::add_fan: fan on a single variable");
    if (i < j)
        fans.emplace(i, a, j, b);
    else
        fans.emplace(j, b, i, a);
}

bool CfPool::meet_dom(std::size_t var, const std::vector<Rational>& values) {
    if (auto it = lines.find(var); it != lines.end()) {
        std::vector<Rational> mapped;
        for (const Rational& v : values) mapped.push_back((v - it->second.intercept) / it->second.slope);
        return meet_dom(it->second.other, sorted_unique(std::move(mapped)));
    }
    auto& d = doms.at(var);
    d = meet(d, values);
    return !d.empty();
}

bool CfPool::force_assign(std::size_t var, const Rational& value) {
    if (auto it = lines.find(var); it != lines.end()) {
        LineEntry ln = it->second;
        lines.erase(it);
        doms[var] = {value};
        return force_assign(ln.other, (value - ln.intercept) / ln.slope);
    }
    auto& d = doms.at(var);
    if (!has(d, value)) return false;
    if (d.size() != 1) d = {value};
    return true;
}

std::vector<Polynomial> CfPool::polynomials() const {
    std::vector<Polynomial> out;
    for (const auto& [lead, ln] : lines) {
        Polynomial f = Polynomial::variable(n, lead);
        f -= Polynomial::variable(n, ln.other) * ln.slope;
        f -= Polynomial::constant(n, ln.intercept);
        out.push_back(std::move(f));
    }
    for (const auto& [v, roots] : doms) out.push_back(domain_polynomial(n, v, roots));
    for (const auto& [i, a, j, b] : fans) {
        Polynomial fi = Polynomial::variable(n, i) - Polynomial::constant(n, a);
        Polynomial fj = Polynomial::variable(n, j) - Polynomial::constant(n, b);
        out.push_back(fi * fj);
    }
    return out;
}

namespace {

// One completion pass; returns -1 infeasible, 1 changed, 0 stable.
int cf_pass(CfPool& pool, std::vector<PermutationConstraint>& pending) {
    // Lines whose tail variable is itself eliminated or pinned.
    for (auto& [lead, ln] : pool.lines) {
        if (auto it = pool.lines.find(ln.other); it != pool.lines.end()) {
            ln.intercept += ln.slope * it->second.intercept;
            ln.slope *= it->second.slope;
            ln.other = it->second.other;
            return 1;
        }
        if (auto it = pool.doms.find(ln.other); it != pool.doms.end() && it->second.size() == 1) {
            Rational val = ln.slope * it->second.front() + ln.intercept;
            pool.doms[lead] = {val};
            pool.lines.erase(lead);
            return 1;
        }
    }

    // Substitute lines into fans that mention an eliminated variable.
    for (auto fan : pool.fans) {
        auto [i, a, j, b] = fan;
        auto li = pool.lines.find(i);
        auto lj = pool.lines.find(j);
        if (li == pool.lines.end() && lj == pool.lines.end()) continue;
        pool.fans.erase(fan);
        // (x_i - a) = slope * (x_other - (a - intercept)/slope)
        if (li != pool.lines.end()) {
            a = (a - li->second.intercept) / li->second.slope;
            i = li->second.other;
        }
        if (lj != pool.lines.end()) {
            b = (b - lj->second.intercept) / lj->second.slope;
            j = lj->second.other;
        }
        if (i != j) {
            pool.add_fan(i, a, j, b);
            return 1;
        }
        // Collapsed to a univariate: (x_i - a)(x_i - b).
        if (a == b) return pool.force_assign(i, a) ? 1 : -1;
        return pool.meet_dom(i, sorted_unique({a, b})) ? 1 : -1;
    }

    // Fans against the domain sets (and pinned variables).
    for (auto fan : pool.fans) {
        auto [i, a, j, b] = fan;
        const auto& di = pool.doms.at(i);
        const auto& dj = pool.doms.at(j);
        if ((di.size() == 1 && di.front() == a) || (dj.size() == 1 && dj.front() == b)) {
            pool.fans.erase(fan);
            return 1;
        }
        if (!has(di, a)) {
            pool.fans.erase(fan);
            return pool.force_assign(j, b) ? 1 : -1;
        }
        if (!has(dj, b)) {
            pool.fans.erase(fan);
            return pool.force_assign(i, a) ? 1 : -1;
        }
    }

    // Fan pairs on the same variable pair.
    for (auto f1 : pool.fans)
        for (auto f2 : pool.fans) {
            if (!(f1 < f2)) continue;
            auto [i1, a, j1, b] = f1;
            auto [i2, c, j2, d] = f2;
            if (i1 != i2 || j1 != j2) continue;
            if (a == c) return pool.force_assign(i1, a) ? 1 : -1;
            if (b == d) return pool.force_assign(j1, b) ? 1 : -1;
            // All four values distinct in each coordinate: the common zeros
            // are {(a,d),(c,b)}, a permutation constraint; the completion set
            // is a line through those points plus two-value domain products.
            pending.push_back(PermutationConstraint{i1, j1, {{a, d}, {c, b}}});
            if (!pool.meet_dom(i1, sorted_unique({a, c}))) return -1;
            if (!pool.meet_dom(j1, sorted_unique({b, d}))) return -1;
            if (pool.doms.at(i1).size() == 2 && pool.doms.at(j1).size() == 2) {
                Rational slope = (c - a) / (b - d);
                Rational intercept = a - slope * d;
                std::vector<Rational> pre;
                for (const Rational& r : pool.doms.at(i1)) pre.push_back((r - intercept) / slope);
                if (!pool.meet_dom(j1, sorted_unique(std::move(pre)))) return -1;
                pool.doms.erase(i1);
                pool.lines[i1] = LineEntry{j1, slope, intercept};
                for (auto& [lead, ln] : pool.lines)
                    if (ln.other == i1 && lead != i1) {
                        ln.intercept += ln.slope * intercept;
                        ln.slope *= slope;
                        ln.other = j1;
                    }
            }
            return 1;
        }

    // Fan pairs sharing exactly one variable with different values there:
    // S((x_v-u1)(x_o1-w1), (x_v-u2)(x_o2-w2)) reduces to a multiple of
    // (x_o1-w1)(x_o2-w2).
    for (auto f1 : pool.fans)
        for (auto f2 : pool.fans) {
            if (!(f1 < f2)) continue;
            auto [i1, a1, j1, b1] = f1;
            auto [i2, a2, j2, b2] = f2;
            std::size_t o1, o2;
            Rational u1, u2, w1, w2;
            if (i1 == i2 && j1 != j2) {
                u1 = a1, u2 = a2, o1 = j1, w1 = b1, o2 = j2, w2 = b2;
            } else if (j1 == j2 && i1 != i2) {
                u1 = b1, u2 = b2, o1 = i1, w1 = a1, o2 = i2, w2 = a2;
            } else if (i1 == j2) {
                u1 = a1, u2 = b2, o1 = j1, w1 = b1, o2 = i2, w2 = a2;
            } else if (j1 == i2) {
                u1 = b1, u2 = a2, o1 = i1, w1 = a1, o2 = j2, w2 = b2;
            } else {
                continue;
            }
            if (o1 == o2 || u1 == u2) continue;
            auto key = (o1 < o2) ? std::tuple{o1, w1, o2, w2} : std::tuple{o2, w2, o1, w1};
            if (pool.fans.contains(key)) continue;
            const auto& d1 = pool.doms.at(o1);
            const auto& d2 = pool.doms.at(o2);
            if ((d1.size() == 1 && d1.front() == w1) || (d2.size() == 1 && d2.front() == w2)) continue;
            pool.fans.insert(key);
            return 1;
        }

    return 0;
}

}  // namespace

bool cf_basis(CfPool& pool, std::vector<PermutationConstraint>& pending_perms) {
    for (unsigned long iter = 0; iter < 100'000; ++iter) {
        for (const auto& [v, roots] : pool.doms)
            if (roots.empty()) return false;
        int r = cf_pass(pool, pending_perms);
        if (r < 0) return false;
        if (r == 0) return true;
    }
    throw ResourceError("cf_basis: completion did not stabilize");
}

GroebnerBasis combined_basis(const CspInstance& inst, unsigned long restart_budget) {
    MonomialOrder ord = MonomialOrder::grlex();
    auto unit = [&] {
        GroebnerBasis b;
        b.order = ord;
        b.reduced = true;
        b.elements = {Polynomial::constant(inst.n, 1)};
        return b;
    };

    std::vector<PermutationConstraint> perms;
    CfPool pool;
    pool.n = inst.n;
    std::vector<Rational> base = sorted_unique(inst.domain);
    for (std::size_t v = 0; v < inst.n; ++v) pool.doms[v] = base;
    bool seed_ok = true;
    for (const auto& c : inst.constraints) {
        if (const auto* p = std::get_if<PermutationConstraint>(&c)) {
            perms.push_back(*p);
        } else if (const auto* p = std::get_if<CompleteConstraint>(&c)) {
            seed_ok = pool.meet_dom(p->i, sorted_unique(p->di)) && seed_ok;
            seed_ok = pool.meet_dom(p->j, sorted_unique(p->dj)) && seed_ok;
        } else if (const auto* p = std::get_if<TwoFanConstraint>(&c)) {
            seed_ok = pool.meet_dom(p->i, sorted_unique(p->di)) && seed_ok;
            seed_ok = pool.meet_dom(p->j, sorted_unique(p->dj)) && seed_ok;
            pool.add_fan(p->i, p->a, p->j, p->b);
        } else {
            throw StructuralError("combined_basis: constraints must be permutation, complete or two-fan");
        }
    }
    if (!seed_ok) return unit();
    if (!arc_consistency(inst)) return unit();
    auto cpcs_opt = build_cpcs(perms);
    if (!cpcs_opt) return unit();
    std::vector<Cpc> cpcs = std::move(*cpcs_opt);

    auto cpc_index = [&](std::size_t v) -> std::ptrdiff_t {
        for (std::size_t k = 0; k < cpcs.size(); ++k)
            if (cpcs[k].contains(v)) return static_cast<std::ptrdiff_t>(k);
        return -1;
    };

    for (unsigned long round = 0;; ++round) {
        if (round > restart_budget) throw ResourceError("combined_basis: restart budget exceeded");
        std::vector<PermutationConstraint> pending;
        if (!cf_basis(pool, pending)) return unit();
        bool changed = false;
        for (const auto& pc : pending) {
            if (!add_perm_constraint(cpcs, pc)) return unit();
            changed = true;
        }

        // Keep the per-variable value sets of the classes and the domain
        // products of the pool in agreement.
        for (auto& c : cpcs) {
            for (std::size_t v : c.vars) {
                auto it = pool.doms.find(v);
                if (it == pool.doms.end()) continue;  // eliminated by a line
                std::vector<Rational> sv = c.values_of(v);
                std::vector<Rational> common = meet(sv, it->second);
                if (common.empty()) return unit();
                if (common.size() != sv.size()) {
                    if (!c.restrict([&](const Rational& t) { return has(common, c.bij.at(v).at(t)); }))
                        return unit();
                    changed = true;
                }
                if (common != it->second) {
                    it->second = common;
                    changed = true;
                }
            }
        }

        // Fans against the classes.
        auto snapshot = pool.fans;
        for (const auto& fan : snapshot) {
            if (!pool.fans.contains(fan)) continue;
            auto [p, a, q, b] = fan;
            std::ptrdiff_t cp = cpc_index(p), cq = cpc_index(q);
            if (cp >= 0 && !has(cpcs[cp].values_of(p), a)) {
                pool.fans.erase(fan);
                if (!pool.force_assign(q, b)) return unit();
                changed = true;
                continue;
            }
            if (cq >= 0 && !has(cpcs[cq].values_of(q), b)) {
                pool.fans.erase(fan);
                if (!pool.force_assign(p, a)) return unit();
                changed = true;
                continue;
            }
            if (cp >= 0 && cp == cq) {
                // Both variables chained together: only the tuples meeting
                // the fan survive, after which the fan lies in the class
                // ideal and can be dropped from the pool.
                Cpc& c = cpcs[cp];
                if (!c.restrict([&](const Rational& t) {
                        return c.bij.at(p).at(t) == a || c.bij.at(q).at(t) == b;
                    }))
                    return unit();
                pool.fans.erase(fan);
                changed = true;
                continue;
            }
            if (cp < 0 && cq < 0) continue;

            // Cross-product family: the fan propagates through the
            // bijections of the class(es) touching it.
            std::vector<std::pair<std::size_t, Rational>> left, right;
            if (cp >= 0)
                for (std::size_t k : cpcs[cp].vars) left.emplace_back(k, cpcs[cp].map_value(p, k, a));
            else
                left.emplace_back(p, a);
            if (cq >= 0)
                for (std::size_t l : cpcs[cq].vars) right.emplace_back(l, cpcs[cq].map_value(q, l, b));
            else
                right.emplace_back(q, b);

            std::vector<std::tuple<std::size_t, Rational, std::size_t, Rational>> missing;
            for (const auto& [k, ak] : left)
                for (const auto& [l, bl] : right) {
                    if (k == p && l == q) continue;
                    auto key = (k < l) ? std::tuple{k, ak, l, bl} : std::tuple{l, bl, k, ak};
                    if (!pool.fans.contains(key)) missing.push_back(key);
                }
            if (missing.empty()) continue;
            std::vector<Polynomial> polys = pool.polynomials();
            bool need = false;
            for (const auto& [k, ak, l, bl] : missing) {
                Polynomial h = (Polynomial::variable(inst.n, k) - Polynomial::constant(inst.n, ak)) *
                               (Polynomial::variable(inst.n, l) - Polynomial::constant(inst.n, bl));
                if (!divide(h, polys, ord).remainder.is_zero()) {
                    need = true;
                    break;
                }
            }
            if (need) {
                for (const auto& m : missing) pool.fans.insert(m);
                changed = true;
            }
        }

        if (!changed) break;
    }

    std::vector<Polynomial> all = pool.polynomials();
    for (const auto& c : cpcs)
        for (const Polynomial& g : cpc_basis(c, inst.n).elements) all.push_back(g);
    GroebnerBasis pre;
    pre.elements = std::move(all);
    pre.order = ord;
    return reduce_basis(pre);
}

}  // namespace gbcsp
