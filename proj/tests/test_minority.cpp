#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "gbcsp/csp.hpp"
#include "gbcsp/io.hpp"
#include "gbcsp/minority.hpp"

using namespace gbcsp;

namespace {

Polynomial P(const std::string& text, std::size_t n) { return parse_polynomial(text, n); }

std::vector<RawXor> random_system(std::mt19937& rng, std::size_t n, std::size_t m, unsigned max_width) {
    std::vector<RawXor> raw(m);
    for (auto& eq : raw) {
        std::size_t w = 1 + rng() % max_width;
        for (std::size_t t = 0; t < w; ++t) eq.vars.insert(rng() % n);
        eq.parity = rng() % 2 == 1;
    }
    return raw;
}

// Boolean solutions of a raw system by brute force.
std::vector<std::vector<bool>> gf2_solutions(const std::vector<RawXor>& raw, std::size_t n) {
    std::vector<std::vector<bool>> out;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::vector<bool> a(n);
        for (std::size_t v = 0; v < n; ++v) a[v] = (mask >> v) & 1;
        bool ok = true;
        for (const auto& eq : raw) {
            bool acc = eq.parity;
            for (std::size_t v : eq.vars) acc = acc != a[v];
            ok = ok && !acc;
        }
        if (ok) out.push_back(a);
    }
    return out;
}

std::vector<std::vector<bool>> system_solutions(const Gf2System& sys) {
    std::vector<RawXor> raw;
    for (const auto& eq : sys.equations) {
        RawXor r;
        r.vars.insert(sys.var_order[eq.lead]);
        for (std::size_t v : eq.support) r.vars.insert(sys.var_order[v]);
        r.parity = eq.parity;
        raw.push_back(r);
    }
    return gf2_solutions(raw, sys.n);
}

// Cross-check convert against the generic engine on the full generator set.
void check_convert_against_oracle(const std::vector<RawXor>& raw, std::size_t n, unsigned d) {
    auto sys = gf2_rref(raw, n);
    REQUIRE(sys.has_value());
    GroebnerBasis basis = convert(*sys, d);
    CHECK(basis.reduced);
    CHECK(basis.truncated_degree == d);

    CspInstance inst;
    inst.n = n;
    inst.domain = {Rational(0), Rational(1)};
    for (const auto& r : raw) inst.constraints.push_back(Gf2LinearConstraint{r});
    GroebnerBasis oracle = reduce_basis(buchberger(ideal_generators(inst), basis.order));
    std::vector<Polynomial> expect;
    for (const auto& g : oracle.elements)
        if (g.total_degree() <= d) expect.push_back(g);
    sort_by_leading_monomial(expect, basis.order);
    CHECK(basis.elements == expect);
}

}  // namespace

TEST_CASE("lifting a single equation") {
    Gf2Equation eq;
    eq.lead = 0;
    eq.support = {1, 2};
    eq.parity = false;
    CHECK(lift_equation(eq, 3) == P("x1 - x2 - x3 + 2*x2*x3", 3));

    eq.parity = true;
    // Complementing the right side complements the multilinear tail.
    CHECK(lift_equation(eq, 3) == P("x1 - 1 + x2 + x3 - 2*x2*x3", 3));

    Gf2Equation small;
    small.lead = 1;
    small.support = {};
    small.parity = true;
    CHECK(lift_equation(small, 3) == P("x2 - 1", 3));
    small.parity = false;
    CHECK(lift_equation(small, 3) == P("x2", 3));
}

TEST_CASE("lifted polynomials agree with the parity function on 0/1 points") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        Gf2Equation eq;
        eq.lead = 0;
        std::size_t w = rng() % 4;
        while (eq.support.size() < w) eq.support.insert(1 + rng() % 4);
        eq.parity = rng() % 2 == 1;
        Polynomial f = lift_equation(eq, 5);
        for (unsigned long mask = 0; mask < 32; ++mask) {
            std::vector<Rational> pt(5);
            for (std::size_t v = 0; v < 5; ++v) pt[v] = Rational((mask >> v) & 1);
            bool acc = eq.parity;
            acc = acc != ((mask & 1) != 0);
            for (std::size_t v : eq.support) acc = acc != (((mask >> v) & 1) != 0);
            CHECK((f.evaluate(pt) == 0) == !acc);
        }
    }
}

TEST_CASE("lift size guard") {
    Gf2Equation eq;
    eq.lead = 0;
    for (std::size_t v = 1; v <= 25; ++v) eq.support.insert(v);
    CHECK_THROWS_AS(lift_equation(eq, 30, 20), ResourceError);
}

TEST_CASE("row reduction structure and solution preservation") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + rng() % 5;
        auto raw = random_system(rng, n, 1 + rng() % 4, 3);
        auto brute = gf2_solutions(raw, n);
        auto sys = gf2_rref(raw, n);
        if (!sys) {
            CHECK(brute.empty());
            continue;
        }
        CHECK(sys->rref);
        CHECK(sys->n == n);
        std::vector<std::size_t> check = sys->var_order;
        std::sort(check.begin(), check.end());
        for (std::size_t k = 0; k < n; ++k) CHECK(check[k] == k);
        for (std::size_t i = 0; i < sys->rank(); ++i) {
            CHECK(sys->equations[i].lead == i);
            for (std::size_t v : sys->equations[i].support) CHECK(v >= sys->rank());
        }
        auto renamed = system_solutions(*sys);
        std::sort(brute.begin(), brute.end());
        std::sort(renamed.begin(), renamed.end());
        CHECK(brute == renamed);
        CHECK(brute.size() == (1ul << (n - sys->rank())));
    }
}

TEST_CASE("contradictory systems are detected") {
    RawXor a{{0, 1}, false};
    RawXor b{{0, 1}, true};
    CHECK(!gf2_rref({a, b}, 3).has_value());
    RawXor bare{{}, true};
    CHECK(!gf2_rref({bare}, 2).has_value());
    CHECK(gf2_rref({RawXor{{}, false}}, 2).has_value());
}

TEST_CASE("boolean term algebra") {
    BooleanTerm a{{1, 2}, false};
    BooleanTerm b{{2, 3}, true};
    BooleanTerm c = xor_terms(a, b);
    CHECK(c.support == std::set<std::size_t>{1, 3});
    CHECK(c.parity);
    CHECK(xor_terms(a, a) == BooleanTerm{});

    TermCombination tc;
    tc.add(a, Rational(1, 2));
    tc.add(a, Rational(-1, 2));
    CHECK(tc.terms.empty());
    tc.add(BooleanTerm{{}, true}, Rational(3));  // the constant-one function
    CHECK(tc.terms.empty());
    CHECK(tc.constant == Rational(3));
}

TEST_CASE("product expansion of boolean factors") {
    BooleanTerm x{{0}, false};
    // A single factor expands to itself.
    TermCombination one = expand_product({x});
    CHECK(one.terms.size() == 1);
    CHECK(one.terms.at(x) == Rational(1));
    CHECK(one.constant == 0);

    // x * x = x as a Boolean function.
    TermCombination sq = expand_product({x, x});
    CHECK(sq.terms.size() == 1);
    CHECK(sq.terms.at(x) == Rational(1));

    // Two distinct singletons: xy = (x + y - (x xor y)) / 2.
    BooleanTerm y{{1}, false};
    TermCombination xy = expand_product({x, y});
    CHECK(xy.terms.at(x) == Rational(1, 2));
    CHECK(xy.terms.at(y) == Rational(1, 2));
    CHECK(xy.terms.at(xor_terms(x, y)) == Rational(-1, 2));
    CHECK(xy.constant == 0);

    // Numeric spot check of a three-factor expansion on all 0/1 points.
    BooleanTerm z{{2}, true};
    TermCombination xyz = expand_product({x, y, z});
    for (unsigned mask = 0; mask < 8; ++mask) {
        auto eval_term = [&](const BooleanTerm& t) {
            bool acc = t.parity;
            for (std::size_t v : t.support) acc = acc != (((mask >> v) & 1) != 0);
            return acc ? Rational(1) : Rational(0);
        };
        Rational lhs = eval_term(x) * eval_term(y) * eval_term(z);
        Rational rhs = xyz.constant;
        for (const auto& [t, c] : xyz.terms) rhs += c * eval_term(t);
        CHECK(lhs == rhs);
    }

    CHECK_THROWS_AS(expand_product({}), DomainError);
}

TEST_CASE("order conversion matches the generic engine") {
    // The five-variable appendix-style system.
    std::vector<RawXor> raw{{{0, 2, 3}, false}, {{1, 2, 4}, true}};
    check_convert_against_oracle(raw, 5, 2);
    check_convert_against_oracle(raw, 5, 1);
    check_convert_against_oracle(raw, 5, 3);

    std::mt19937 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + rng() % 5;
        auto raw2 = random_system(rng, n, 1 + rng() % 3, 3);
        if (!gf2_rref(raw2, n)) continue;
        check_convert_against_oracle(raw2, n, 1 + rng() % 2);
    }
}

TEST_CASE("full-rank systems collapse to assignments") {
    // x1 = 1, x2 = 0: rank equals the variable count.
    std::vector<RawXor> raw{{{0}, true}, {{1}, false}};
    auto sys = gf2_rref(raw, 2);
    REQUIRE(sys.has_value());
    CHECK(sys->rank() == 2);
    GroebnerBasis basis = convert(*sys, 2);
    std::vector<Polynomial> expect{P("x1 - 1", 2), P("x2", 2)};
    sort_by_leading_monomial(expect, basis.order);
    CHECK(basis.elements == expect);
}

TEST_CASE("conversion bookkeeping and growth") {
    // Operation counts should scale polynomially in n at fixed d: doubling n
    // must not blow past the expected power-law envelope.
    auto cost = [](std::size_t n, unsigned d) {
        std::vector<RawXor> raw;
        for (std::size_t i = 0; i + 1 < n; i += 2) raw.push_back(RawXor{{i, i + 1}, false});
        auto sys = gf2_rref(raw, n);
        REQUIRE(sys.has_value());
        ConvertStats st;
        convert(*sys, d, &st);
        CHECK(st.basis_emitted > 0);
        CHECK(st.monomials_processed > 0);
        return st.term_ops;
    };
    unsigned d = 2;
    unsigned long small = cost(6, d);
    unsigned long large = cost(12, d);
    CHECK(large <= small * (1ul << (2 * d + 2)));
}

TEST_CASE("degree-one truncation keeps the linear relation") {
    std::vector<RawXor> raw{{{0, 1}, true}};
    auto sys = gf2_rref(raw, 2);
    REQUIRE(sys.has_value());
    GroebnerBasis b1 = convert(*sys, 1);
    REQUIRE(b1.elements.size() == 1);
    CHECK(b1.elements[0] == P("x1 + x2 - 1", 2));
}
