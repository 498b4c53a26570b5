#include "gbcsp/buchberger.hpp"

#include <algorithm>
#include <deque>

namespace gbcsp {

namespace {

bool coprime_lms(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
    const Monomial& a = f.leading_monomial(ord);
    const Monomial& b = g.leading_monomial(ord);
    return Monomial::lcm(a, b) == a * b;
}

}  // namespace

void sort_by_leading_monomial(std::vector<Polynomial>& elems, const MonomialOrder& ord) {
    std::stable_sort(elems.begin(), elems.end(), [&](const Polynomial& a, const Polynomial& b) {
        return compare(a.leading_monomial(ord), b.leading_monomial(ord), ord) < 0;
    });
}

GroebnerBasis buchberger(const std::vector<Polynomial>& generators, const MonomialOrder& ord,
                         unsigned long step_budget) {
    if (step_budget == 0) throw DomainError("buchberger: step budget must be positive");
    std::vector<Polynomial> g;
    for (const auto& f : generators) {
        if (f.is_zero()) throw DomainError("buchberger: zero generator");
        g.push_back(f);
    }
    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) pairs.emplace_back(i, j);

    unsigned long steps_used = 0;
    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        if (coprime_lms(g[i], g[j], ord)) continue;
        Polynomial s = s_polynomial(g[i], g[j], ord);
        if (s.is_zero()) continue;
        DivisionResult dr = divide(s, g, ord, step_budget - steps_used);
        steps_used += dr.steps;
        if (steps_used >= step_budget)
            throw ResourceError("buchberger: reduction step budget exhausted");
        if (!dr.remainder.is_zero()) {
            g.push_back(dr.remainder);
            for (std::size_t k = 0; k + 1 < g.size(); ++k) pairs.emplace_back(k, g.size() - 1);
        }
    }
    GroebnerBasis out;
    out.elements = std::move(g);
    out.order = ord;
    out.reduced = false;
    sort_by_leading_monomial(out.elements, out.order);
    return out;
}

GroebnerBasis reduce_basis(const GroebnerBasis& basis) {
    const MonomialOrder& ord = basis.order;
    std::vector<Polynomial> g;
    for (const auto& f : basis.elements)
        if (!f.is_zero()) g.push_back(f.monic(ord));
    sort_by_leading_monomial(g, ord);

    // Minimal basis: drop any element whose leading monomial is divisible by
    // another surviving element's leading monomial (earlier wins on ties).
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Monomial& lm = g[i].leading_monomial(ord);
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (j == i) continue;
            const Monomial& other = g[j].leading_monomial(ord);
            if (other == lm) {
                redundant = j < i;
            } else if (other.divides(lm)) {
                redundant = true;
            }
        }
        if (!redundant) minimal.push_back(g[i]);
    }

    // Tail reduction of every element against all the others. An element
    // reducing to zero is redundant (possible when the input set is a
    // basis with extra ideal members mixed in) and is dropped, restarting
    // the pass.
    std::vector<Polynomial> reduced = minimal;
    for (bool stable = false; !stable;) {
        stable = true;
        for (std::size_t i = 0; i < reduced.size(); ++i) {
            std::vector<Polynomial> others;
            for (std::size_t j = 0; j < reduced.size(); ++j)
                if (j != i) others.push_back(reduced[j]);
            Polynomial r = divide(reduced[i], others, ord).remainder;
            if (r.is_zero()) {
                reduced.erase(reduced.begin() + i);
                stable = false;
                break;
            }
            reduced[i] = r.monic(ord);
        }
    }
    sort_by_leading_monomial(reduced, ord);

    GroebnerBasis out;
    out.elements = std::move(reduced);
    out.order = ord;
    out.reduced = true;
    out.truncated_degree = basis.truncated_degree;
    return out;
}

bool is_groebner(const std::vector<Polynomial>& elements, const MonomialOrder& ord) {
    for (const auto& f : elements)
        if (f.is_zero()) throw DomainError("is_groebner: zero element");
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            if (coprime_lms(elements[i], elements[j], ord)) continue;
            Polynomial s = s_polynomial(elements[i], elements[j], ord);
            if (s.is_zero()) continue;
            if (!divide(s, elements, ord).remainder.is_zero()) return false;
        }
    }
    return true;
}

}  // namespace gbcsp
