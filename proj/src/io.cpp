#include "gbcsp/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace gbcsp {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw StructuralError(what + " at position " + std::to_string(pos));
    }
};

unsigned long parse_uint(Cursor& c) {
    c.skip_ws();
    if (c.pos >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
        c.fail("expected a number");
    unsigned long v = 0;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
        v = v * 10 + static_cast<unsigned long>(c.s[c.pos] - '0');
        ++c.pos;
    }
    return v;
}

Rational parse_rational(Cursor& c) {
    bool neg = false;
    if (c.eat('-'))
        neg = true;
    else
        c.eat('+');
    Integer num(static_cast<unsigned long>(parse_uint(c)));
    Integer den(1);
    if (c.eat('/')) den = Integer(static_cast<unsigned long>(parse_uint(c)));
    if (den == 0) c.fail("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

// x<k> with k >= 1 in text; 0-based internally.
std::size_t parse_var(Cursor& c, std::size_t n_vars) {
    if (!c.eat('x')) c.fail("expected a variable");
    unsigned long k = parse_uint(c);
    if (k < 1 || k > n_vars) c.fail("variable index out of range");
    return static_cast<std::size_t>(k - 1);
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, std::size_t n_vars) {
    Cursor c{text};
    Polynomial f = Polynomial::zero(n_vars);
    bool first = true;
    while (!c.done()) {
        bool neg = false;
        if (c.eat('-'))
            neg = true;
        else if (!c.eat('+') && !first)
            c.fail("expected + or -");
        first = false;

        Rational coeff(1);
        bool have_coeff = false;
        char ch = c.peek();
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            coeff = parse_rational(c);
            have_coeff = true;
        }
        Monomial m(n_vars);
        bool have_var = false;
        while (true) {
            if (have_coeff || have_var) {
                std::size_t save = c.pos;
                bool star = c.eat('*');
                if (c.peek() != 'x') {
                    if (star) c.fail("expected a variable after *");
                    c.pos = save;
                    break;
                }
            } else if (c.peek() != 'x') {
                break;
            }
            std::size_t v = parse_var(c, n_vars);
            unsigned long e = 1;
            if (c.eat('^')) {
                e = parse_uint(c);
                if (e == 0) c.fail("zero exponent");
            }
            m.set_exponent(v, m.exponent(v) + static_cast<unsigned>(e));
            have_var = true;
        }
        if (!have_coeff && !have_var) c.fail("expected a term");
        f.add_term(m, neg ? Rational(-coeff) : coeff);
    }
    if (first) throw StructuralError("empty polynomial text");
    return f;
}

namespace {

std::string monomial_str(const Monomial& m) {
    std::string out;
    for (std::size_t v = 0; v < m.n_vars(); ++v) {
        unsigned e = m.exponent(v);
        if (e == 0) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(v + 1);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

}  // namespace

std::string format_polynomial(const Polynomial& f, const MonomialOrder& ord) {
    if (f.is_zero()) return "0";
    std::vector<std::pair<Monomial, Rational>> terms(f.terms().begin(), f.terms().end());
    std::sort(terms.begin(), terms.end(),
              [&](const auto& a, const auto& b) { return compare(a.first, b.first, ord) > 0; });
    std::string out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const auto& [m, c] = terms[k];
        bool neg = c < 0;
        if (k == 0) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string ms = monomial_str(m);
        Rational a = neg ? Rational(-c) : c;
        if (ms.empty()) {
            out += a.get_str();
        } else if (a == 1) {
            out += ms;
        } else {
            out += a.get_str() + "*" + ms;
        }
    }
    return out;
}

std::string format_order(const MonomialOrder& ord) {
    std::string out = ord.kind == OrderKind::lex ? "lex" : "grlex";
    if (!ord.priority.empty()) {
        out += " priority ";
        for (std::size_t k = 0; k < ord.priority.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(ord.priority[k] + 1);
        }
    }
    return out;
}

MonomialOrder parse_order(const std::string& text) {
    std::istringstream in(text);
    std::string kind, word;
    in >> kind;
    MonomialOrder ord;
    if (kind == "lex")
        ord.kind = OrderKind::lex;
    else if (kind == "grlex")
        ord.kind = OrderKind::grlex;
    else
        throw StructuralError("unknown monomial order: " + kind);
    if (in >> word) {
        if (word != "priority") throw StructuralError("expected 'priority' in order text");
        std::string list;
        in >> list;
        Cursor c{list};
        while (!c.done()) {
            unsigned long k = parse_uint(c);
            if (k < 1) c.fail("priority entries are 1-based");
            ord.priority.push_back(static_cast<std::size_t>(k - 1));
            if (!c.eat(',')) break;
        }
        std::vector<std::size_t> check = ord.priority;
        std::sort(check.begin(), check.end());
        for (std::size_t k = 0; k < check.size(); ++k)
            if (check[k] != k) throw StructuralError("order priority is not a permutation");
    }
    return ord;
}

namespace {

std::vector<Rational> parse_value_list(Cursor& c, char close) {
    std::vector<Rational> out;
    while (c.peek() != close) {
        out.push_back(parse_rational(c));
        if (!c.eat(',')) break;
    }
    if (!c.eat(close)) c.fail(std::string("expected '") + close + "'");
    return out;
}

}  // namespace

CspInstance parse_instance(std::istream& in) {
    CspInstance inst;
    bool have_vars = false, have_domain = false;
    std::string raw;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) -> void {
        throw StructuralError("line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        std::istringstream probe(line);
        std::string head;
        if (!(probe >> head)) continue;
        std::string rest;
        std::getline(probe, rest);
        Cursor c{rest};
        try {
            if (head == "vars") {
                inst.n = static_cast<std::size_t>(parse_uint(c));
                have_vars = true;
            } else if (head == "domain") {
                while (!c.done()) {
                    inst.domain.push_back(parse_rational(c));
                    if (!c.eat(',')) break;
                }
                std::sort(inst.domain.begin(), inst.domain.end());
                if (std::adjacent_find(inst.domain.begin(), inst.domain.end()) != inst.domain.end())
                    fail("duplicate domain value");
                if (inst.domain.empty()) fail("empty domain");
                have_domain = true;
            } else if (head == "xor") {
                if (!have_vars) fail("vars must come first");
                Gf2LinearConstraint g;
                g.equation.vars.insert(parse_var(c, inst.n));
                while (c.eat('^')) {
                    std::size_t v = parse_var(c, inst.n);
                    if (g.equation.vars.contains(v))
                        g.equation.vars.erase(v);  // repeated variables cancel mod 2
                    else
                        g.equation.vars.insert(v);
                }
                if (!c.eat('=')) c.fail("expected '='");
                unsigned long rhs = parse_uint(c);
                if (rhs > 1) c.fail("xor right side must be 0 or 1");
                g.equation.parity = rhs == 1;
                inst.constraints.push_back(g);
            } else if (head == "perm") {
                if (!have_vars) fail("vars must come first");
                PermutationConstraint p;
                p.i = parse_var(c, inst.n);
                p.j = parse_var(c, inst.n);
                if (p.i == p.j) c.fail("perm needs two distinct variables");
                if (!c.eat(':')) c.fail("expected ':'");
                while (!c.done()) {
                    Rational a = parse_rational(c);
                    if (!c.eat('-') || !c.eat('>')) c.fail("expected '->'");
                    Rational b = parse_rational(c);
                    p.pairs.emplace_back(a, b);
                    if (!c.eat(',')) break;
                }
                if (p.pairs.empty()) c.fail("empty permutation");
                inst.constraints.push_back(std::move(p));
            } else if (head == "complete") {
                if (!have_vars) fail("vars must come first");
                CompleteConstraint p;
                p.i = parse_var(c, inst.n);
                if (!c.eat('{')) c.fail("expected '{'");
                p.di = parse_value_list(c, '}');
                p.j = parse_var(c, inst.n);
                if (!c.eat('{')) c.fail("expected '{'");
                p.dj = parse_value_list(c, '}');
                if (p.i == p.j) c.fail("complete needs two distinct variables");
                if (p.di.empty() || p.dj.empty()) c.fail("empty value set");
                inst.constraints.push_back(std::move(p));
            } else if (head == "twofan") {
                if (!have_vars) fail("vars must come first");
                TwoFanConstraint p;
                p.i = parse_var(c, inst.n);
                p.a = parse_rational(c);
                if (!c.eat('{')) c.fail("expected '{'");
                p.di = parse_value_list(c, '}');
                p.j = parse_var(c, inst.n);
                p.b = parse_rational(c);
                if (!c.eat('{')) c.fail("expected '{'");
                p.dj = parse_value_list(c, '}');
                if (p.i == p.j) c.fail("twofan needs two distinct variables");
                if (std::find(p.di.begin(), p.di.end(), p.a) == p.di.end() ||
                    std::find(p.dj.begin(), p.dj.end(), p.b) == p.dj.end())
                    c.fail("fan center must belong to its value set");
                inst.constraints.push_back(std::move(p));
            } else if (head == "rel") {
                if (!have_vars) fail("vars must come first");
                RelationConstraint r;
                if (!c.eat('(')) c.fail("expected '('");
                while (c.peek() != ')') {
                    r.scope.push_back(parse_var(c, inst.n));
                    if (!c.eat(',')) break;
                }
                if (!c.eat(')')) c.fail("expected ')'");
                if (r.scope.empty()) c.fail("empty scope");
                if (!c.eat(':')) c.fail("expected ':'");
                while (!c.done()) {
                    if (!c.eat('(')) c.fail("expected '('");
                    std::vector<Rational> t = parse_value_list(c, ')');
                    if (t.size() != r.scope.size()) c.fail("tuple arity mismatch");
                    r.tuples.push_back(std::move(t));
                    if (!c.eat(',')) break;
                }
                inst.constraints.push_back(std::move(r));
            } else {
                fail("unknown declaration '" + head + "'");
            }
            if (!c.done()) fail("trailing input");
        } catch (const StructuralError& e) {
            std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) throw;
            fail(msg);
        }
    }
    if (!have_vars) throw StructuralError("instance is missing a 'vars' line");
    if (!have_domain) throw StructuralError("instance is missing a 'domain' line");
    return inst;
}

CspInstance parse_instance_text(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

CspInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open instance file: " + path);
    return parse_instance(in);
}

std::string format_proof(const Polynomial& f, const MembershipProof& proof, const GroebnerBasis& basis) {
    std::ostringstream out;
    out << "vars " << f.n_vars() << "\n";
    out << "order " << format_order(proof.order) << "\n";
    out << "query " << format_polynomial(f, proof.order) << "\n";
    for (std::size_t k = 0; k < proof.basis_ids.size(); ++k) {
        out << "basis " << format_polynomial(basis.elements.at(proof.basis_ids[k]), proof.order) << "\n";
        out << "cofactor " << format_polynomial(proof.cofactors[k], proof.order) << "\n";
    }
    out << "remainder " << format_polynomial(proof.remainder, proof.order) << "\n";
    return out.str();
}

ParsedProof parse_proof(const std::string& text) {
    std::istringstream in(text);
    ParsedProof out;
    std::string line;
    bool have_vars = false, have_order = false, have_query = false, have_remainder = false;
    std::optional<std::string> pending_basis;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) -> void {
        throw StructuralError("proof line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream probe(line);
        std::string head;
        if (!(probe >> head)) continue;
        std::string rest;
        std::getline(probe, rest);
        if (head == "vars") {
            Cursor c{rest};
            out.n_vars = static_cast<std::size_t>(parse_uint(c));
            have_vars = true;
        } else if (head == "order") {
            out.proof.order = parse_order(rest);
            have_order = true;
        } else if (head == "query") {
            if (!have_vars) fail("vars must come first");
            out.query = parse_polynomial(rest, out.n_vars);
            have_query = true;
        } else if (head == "basis") {
            if (!have_vars) fail("vars must come first");
            if (pending_basis) fail("basis line without a matching cofactor");
            pending_basis = rest;
        } else if (head == "cofactor") {
            if (!pending_basis) fail("cofactor line without a basis line");
            out.elements.elements.push_back(parse_polynomial(*pending_basis, out.n_vars));
            out.proof.basis_ids.push_back(out.elements.elements.size() - 1);
            out.proof.cofactors.push_back(parse_polynomial(rest, out.n_vars));
            pending_basis.reset();
        } else if (head == "remainder") {
            if (!have_vars) fail("vars must come first");
            out.proof.remainder = parse_polynomial(rest, out.n_vars);
            have_remainder = true;
        } else {
            fail("unknown line '" + head + "'");
        }
    }
    if (pending_basis) throw StructuralError("proof: basis line without a matching cofactor");
    if (!have_vars || !have_order || !have_query || !have_remainder)
        throw StructuralError("proof: missing vars/order/query/remainder");
    out.elements.order = out.proof.order;
    return out;
}

nlohmann::json basis_to_json(const GroebnerBasis& basis) {
    nlohmann::json j;
    j["order"] = format_order(basis.order);
    j["reduced"] = basis.reduced;
    if (basis.truncated_degree > 0) j["truncated_degree"] = basis.truncated_degree;
    j["elements"] = nlohmann::json::array();
    for (const auto& g : basis.elements) j["elements"].push_back(format_polynomial(g, basis.order));
    return j;
}

nlohmann::json proof_to_json(const Polynomial& f, const MembershipProof& proof, const GroebnerBasis& basis) {
    nlohmann::json j;
    j["query"] = format_polynomial(f, proof.order);
    j["order"] = format_order(proof.order);
    j["member"] = proof.remainder.is_zero();
    j["terms"] = nlohmann::json::array();
    for (std::size_t k = 0; k < proof.basis_ids.size(); ++k) {
        nlohmann::json t;
        t["basis"] = format_polynomial(basis.elements.at(proof.basis_ids[k]), proof.order);
        t["cofactor"] = format_polynomial(proof.cofactors[k], proof.order);
        j["terms"].push_back(t);
    }
    j["remainder"] = format_polynomial(proof.remainder, proof.order);
    return j;
}

}  // namespace gbcsp
