// Command line front end: compute bases, answer membership queries, emit and
// check proof certificates, and cross-validate the pipelines against the
// brute-force oracles.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "gbcsp/dualdisc.hpp"
#include "gbcsp/imp.hpp"
#include "gbcsp/io.hpp"
#include "gbcsp/minority.hpp"

using namespace gbcsp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // infeasible basis / non-member / invalid proof / failed check
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

enum class Pipeline { automatic, minority, dualdisc };

Pipeline detect_pipeline(const CspInstance& inst, Pipeline requested) {
    bool has_xor = false, has_dd = false, has_rel = false;
    for (const auto& c : inst.constraints) {
        if (std::holds_alternative<Gf2LinearConstraint>(c))
            has_xor = true;
        else if (std::holds_alternative<RelationConstraint>(c))
            has_rel = true;
        else
            has_dd = true;
    }
    if (requested != Pipeline::automatic) return requested;
    if (has_rel) throw StructuralError("general relations have no pipeline; use --pipeline or oracle-check");
    if (has_xor && has_dd)
        throw StructuralError("instance mixes XOR and binary constraint families; pick --pipeline");
    return has_xor ? Pipeline::minority : Pipeline::dualdisc;
}

std::vector<RawXor> collect_xors(const CspInstance& inst) {
    std::vector<RawXor> out;
    for (const auto& c : inst.constraints) {
        const auto* g = std::get_if<Gf2LinearConstraint>(&c);
        if (!g) throw StructuralError("the minority pipeline accepts only xor constraints");
        out.push_back(g->equation);
    }
    return out;
}

// Basis for the instance under the chosen pipeline; {1} when infeasible.
GroebnerBasis pipeline_basis(const CspInstance& inst, Pipeline p, unsigned d) {
    if (p == Pipeline::minority) {
        if (inst.domain != std::vector<Rational>{Rational(0), Rational(1)})
            throw StructuralError("the minority pipeline requires domain 0,1");
        auto sys = gf2_rref(collect_xors(inst), inst.n);
        if (!sys) {
            GroebnerBasis b;
            b.order = MonomialOrder::grlex();
            b.reduced = true;
            b.elements = {Polynomial::constant(inst.n, 1)};
            return b;
        }
        return convert(*sys, d);
    }
    return combined_basis(inst);
}

bool is_unit_basis(const GroebnerBasis& b) {
    return b.elements.size() == 1 && b.elements.front() == Polynomial::constant(b.elements.front().n_vars(), 1);
}

struct CommonOpts {
    std::string instance_path;
    std::string pipeline = "auto";
    std::string order = "grlex";
    std::string format = "text";
    unsigned d = 2;
};

Pipeline pipeline_of(const std::string& s) {
    if (s == "auto") return Pipeline::automatic;
    if (s == "minority") return Pipeline::minority;
    if (s == "dualdisc") return Pipeline::dualdisc;
    throw StructuralError("unknown pipeline: " + s);
}

int cmd_basis(const CommonOpts& opt) {
    if (parse_order(opt.order).kind != OrderKind::grlex)
        throw StructuralError("pipeline bases are grlex only");
    CspInstance inst = load_instance(opt.instance_path);
    Pipeline p = detect_pipeline(inst, pipeline_of(opt.pipeline));
    GroebnerBasis basis = pipeline_basis(inst, p, opt.d);
    if (opt.format == "json") {
        std::cout << basis_to_json(basis).dump(2) << "\n";
    } else {
        for (const auto& g : basis.elements) std::cout << format_polynomial(g, basis.order) << "\n";
    }
    return is_unit_basis(basis) ? kExitNegative : kExitOk;
}

int cmd_member(const CommonOpts& opt, const std::string& poly_text, const std::string& proof_path,
               bool always_emit_proof) {
    CspInstance inst = load_instance(opt.instance_path);
    Pipeline p = detect_pipeline(inst, pipeline_of(opt.pipeline));
    Polynomial f = parse_polynomial(poly_text, inst.n);
    GroebnerBasis basis = pipeline_basis(inst, p, opt.d);
    QueryResult qr = query(f, basis, opt.d);
    std::string cert = format_proof(f, qr.proof, basis);
    if (!proof_path.empty()) {
        std::ofstream out(proof_path);
        if (!out) throw StructuralError("cannot write proof file: " + proof_path);
        out << cert;
    }
    if (opt.format == "json") {
        std::cout << proof_to_json(f, qr.proof, basis).dump(2) << "\n";
    } else {
        std::cout << (qr.member ? "MEMBER" : "NOT MEMBER") << "\n";
        if (always_emit_proof && proof_path.empty()) std::cout << cert;
    }
    return qr.member ? kExitOk : kExitNegative;
}

int cmd_verify(const std::string& proof_path) {
    std::ifstream in(proof_path);
    if (!in) throw StructuralError("cannot open proof file: " + proof_path);
    std::stringstream buf;
    buf << in.rdbuf();
    ParsedProof pp = parse_proof(buf.str());
    bool ok = verify(pp.query, pp.proof, pp.elements);
    std::cout << (ok ? "VALID" : "INVALID") << "\n";
    return ok ? kExitOk : kExitNegative;
}

// Shared oracle battery for one instance: pipeline basis vs generic engine,
// Buchberger criterion, and vanishing agreement on sampled polynomials.
bool check_instance(const CspInstance& inst, Pipeline p, unsigned d, std::mt19937& rng,
                    const GroebnerBasis* override_basis, std::ostream& log) {
    bool ok = true;
    auto report = [&](const std::string& name, bool pass) {
        log << "  " << (pass ? "pass" : "FAIL") << "  " << name << "\n";
        ok = ok && pass;
    };

    GroebnerBasis basis = override_basis ? *override_basis : pipeline_basis(inst, p, d);
    SolutionSet sols = enumerate_solutions(inst);
    bool infeasible = sols.tuples.empty() && !sols.truncated;
    report("infeasible instances yield the unit basis", infeasible == is_unit_basis(basis));

    report("basis satisfies the Buchberger criterion", is_groebner(basis.elements, basis.order));

    // Every basis element vanishes on every solution.
    bool vanish = true;
    for (const auto& g : basis.elements)
        if (basis.truncated_degree == 0 || g.total_degree() <= basis.truncated_degree)
            vanish = vanish && vanishing_member(g, sols);
    report("basis elements vanish on all solutions", vanish || infeasible);

    // Generic-engine cross check: same ideal (mutual zero reduction), via
    // the independently constructed generators.
    auto gens = ideal_generators(inst);
    GroebnerBasis oracle = reduce_basis(buchberger(gens, basis.order));
    bool same = true;
    if (basis.truncated_degree > 0) {
        std::vector<Polynomial> truncated;
        for (const auto& g : oracle.elements)
            if (g.total_degree() <= basis.truncated_degree) truncated.push_back(g);
        sort_by_leading_monomial(truncated, basis.order);
        same = truncated == basis.elements;
        report("pipeline basis equals the truncated oracle basis", same);
    } else {
        for (const auto& g : basis.elements)
            same = same && divide(g, oracle.elements, basis.order).remainder.is_zero();
        for (const auto& g : oracle.elements)
            same = same && divide(g, basis.elements, basis.order).remainder.is_zero();
        report("pipeline and oracle bases generate the same ideal", same);
    }

    // Sampled membership agreement against exhaustive evaluation.
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<std::size_t> pick_var(0, inst.n ? inst.n - 1 : 0);
    bool agree = true;
    for (int trial = 0; trial < 40 && !sols.truncated; ++trial) {
        Polynomial f = Polynomial::zero(inst.n);
        int terms = 1 + static_cast<int>(rng() % 4);
        for (int t = 0; t < terms; ++t) {
            Monomial m(inst.n);
            unsigned deg = rng() % (d + 1);
            for (unsigned k = 0; k < deg; ++k) {
                std::size_t v = pick_var(rng);
                m.set_exponent(v, m.exponent(v) + 1);
            }
            f.add_term(m, Rational(coeff(rng)));
        }
        if (trial % 2 == 0 && !basis.elements.empty()) {
            // Bias half the samples toward members.
            const Polynomial& g = basis.elements[rng() % basis.elements.size()];
            if (f.total_degree() + g.total_degree() <= d)
                f = f * g;
            else
                f = g * Polynomial::constant(inst.n, Rational(coeff(rng)));
        }
        if (f.total_degree() > d) continue;
        if (f.is_zero()) continue;
        QueryResult qr = query(f, basis, d);
        bool oracle_member = vanishing_member(f, sols);
        agree = agree && (qr.member == oracle_member);
        if (qr.member) agree = agree && verify(f, qr.proof, basis);
    }
    report("membership matches exhaustive evaluation on samples", agree);
    return ok;
}

CspInstance random_minority_instance(std::mt19937& rng, std::size_t max_n) {
    CspInstance inst;
    inst.n = 2 + rng() % std::max<std::size_t>(1, max_n - 1);
    inst.domain = {Rational(0), Rational(1)};
    std::size_t m = 1 + rng() % inst.n;
    for (std::size_t k = 0; k < m; ++k) {
        Gf2LinearConstraint g;
        std::size_t width = 1 + rng() % 3;
        for (std::size_t t = 0; t < width; ++t) g.equation.vars.insert(rng() % inst.n);
        g.equation.parity = rng() % 2 == 1;
        inst.constraints.push_back(g);
    }
    return inst;
}

CspInstance random_dualdisc_instance(std::mt19937& rng, std::size_t max_n) {
    CspInstance inst;
    inst.n = 2 + rng() % std::max<std::size_t>(1, max_n - 1);
    std::size_t dsize = 2 + rng() % 2;
    for (std::size_t k = 0; k < dsize; ++k) inst.domain.push_back(Rational(static_cast<int>(k)));
    std::size_t m = 1 + rng() % (inst.n + 1);
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t i = rng() % inst.n, j = rng() % inst.n;
        if (i == j) continue;
        auto subset = [&](std::size_t smallest) {
            std::vector<Rational> out;
            while (out.size() < smallest) {
                out.clear();
                for (const auto& v : inst.domain)
                    if (rng() % 2) out.push_back(v);
            }
            return out;
        };
        switch (rng() % 3) {
            case 0: {
                PermutationConstraint p;
                p.i = i;
                p.j = j;
                std::vector<Rational> to = inst.domain;
                std::shuffle(to.begin(), to.end(), rng);
                std::size_t len = 1 + rng() % dsize;
                for (std::size_t t = 0; t < len; ++t) p.pairs.emplace_back(inst.domain[t], to[t]);
                inst.constraints.push_back(std::move(p));
                break;
            }
            case 1: {
                CompleteConstraint p;
                p.i = i;
                p.j = j;
                p.di = subset(1);
                p.dj = subset(1);
                inst.constraints.push_back(std::move(p));
                break;
            }
            default: {
                TwoFanConstraint p;
                p.i = i;
                p.j = j;
                p.di = subset(1);
                p.dj = subset(1);
                p.a = p.di[rng() % p.di.size()];
                p.b = p.dj[rng() % p.dj.size()];
                inst.constraints.push_back(std::move(p));
                break;
            }
        }
    }
    return inst;
}

int cmd_oracle_check(const CommonOpts& opt, unsigned seed, unsigned count, std::size_t max_n,
                     const std::string& basis_path) {
    std::mt19937 rng(seed);
    bool all_ok = true;
    if (!opt.instance_path.empty()) {
        CspInstance inst = load_instance(opt.instance_path);
        Pipeline p = detect_pipeline(inst, pipeline_of(opt.pipeline));
        std::optional<GroebnerBasis> override_basis;
        if (!basis_path.empty()) {
            std::ifstream in(basis_path);
            if (!in) throw StructuralError("cannot open basis file: " + basis_path);
            GroebnerBasis b;
            b.order = parse_order(opt.order);
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                b.elements.push_back(parse_polynomial(line, inst.n));
            }
            override_basis = std::move(b);
        }
        std::cout << "instance " << opt.instance_path << "\n";
        all_ok = check_instance(inst, p, opt.d, rng, override_basis ? &*override_basis : nullptr, std::cout);
    } else {
        Pipeline p = pipeline_of(opt.pipeline);
        for (unsigned k = 0; k < count; ++k) {
            Pipeline pk = p;
            if (pk == Pipeline::automatic) pk = (k % 2 == 0) ? Pipeline::minority : Pipeline::dualdisc;
            CspInstance inst = pk == Pipeline::minority ? random_minority_instance(rng, max_n)
                                                        : random_dualdisc_instance(rng, max_n);
            std::cout << "seed " << seed << " case " << k << " ("
                      << (pk == Pipeline::minority ? "minority" : "dualdisc") << ", n=" << inst.n << ")\n";
            all_ok = check_instance(inst, pk, opt.d, rng, nullptr, std::cout) && all_ok;
        }
    }
    std::cout << (all_ok ? "all checks passed" : "CHECKS FAILED") << "\n";
    return all_ok ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Groebner bases and ideal membership for combinatorial constraint ideals"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::string poly_text, proof_path, basis_path;
    unsigned seed = 1;
    unsigned count = 20;
    std::size_t max_n = 6;

    auto add_common = [&](CLI::App* sub, bool need_instance) {
        auto* io = sub->add_option("--instance", opt.instance_path, "instance file");
        if (need_instance) io->required();
        sub->add_option("--pipeline", opt.pipeline, "auto|minority|dualdisc")->capture_default_str();
        sub->add_option("--d", opt.d, "degree bound for truncated bases and queries")->capture_default_str();
        sub->add_option("--order", opt.order, "monomial order (grlex)")->capture_default_str();
        sub->add_option("--format", opt.format, "text|json")->capture_default_str();
    };

    auto* basis_cmd = app.add_subcommand("basis", "print the basis of the instance ideal");
    add_common(basis_cmd, true);

    auto* member_cmd = app.add_subcommand("member", "decide membership of a polynomial");
    add_common(member_cmd, true);
    member_cmd->add_option("--poly", poly_text, "query polynomial text")->required();
    member_cmd->add_option("--proof", proof_path, "write the certificate to this file");

    auto* prove_cmd = app.add_subcommand("prove", "decide membership and always emit the certificate");
    add_common(prove_cmd, true);
    prove_cmd->add_option("--poly", poly_text, "query polynomial text")->required();
    prove_cmd->add_option("--proof", proof_path, "write the certificate to this file");

    auto* verify_cmd = app.add_subcommand("verify", "check a proof certificate");
    verify_cmd->add_option("--proof", proof_path, "certificate file")->required();

    auto* oracle_cmd = app.add_subcommand("oracle-check", "cross-validate pipelines against brute force");
    add_common(oracle_cmd, false);
    oracle_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
    oracle_cmd->add_option("--count", count, "number of random cases")->capture_default_str();
    oracle_cmd->add_option("--max-n", max_n, "largest variable count for random cases")->capture_default_str();
    oracle_cmd->add_option("--basis", basis_path, "check this basis file instead of computing one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (basis_cmd->parsed()) return cmd_basis(opt);
        if (member_cmd->parsed()) return cmd_member(opt, poly_text, proof_path, false);
        if (prove_cmd->parsed()) return cmd_member(opt, poly_text, proof_path, true);
        if (verify_cmd->parsed()) return cmd_verify(proof_path);
        if (oracle_cmd->parsed()) return cmd_oracle_check(opt, seed, count, max_n, basis_path);
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
