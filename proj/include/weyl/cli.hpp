#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "weyl/selfcheck.hpp"
#include "weyl/sigfile.hpp"

namespace weyl {

namespace cli_detail {

// 0 success, 1 parse/usage, 2 invalid signature, 3 undecided, 4 internal.
inline int exit_code_for(const error& e) {
    switch (e.code()) {
    case errc::parse_error:
    case errc::unknown_axis:
    case errc::alpha_not_in_gamma:
    case errc::axis_out_of_range:
    case errc::zero_element:
    case errc::scalar_input:
        return 1;
    case errc::not_monic:
    case errc::rational_root_found:
    case errc::division_by_zero:
    case errc::field_mismatch:
    case errc::degenerate_group:
    case errc::zero_generators:
    case errc::singular_block:
    case errc::shape_mismatch:
    case errc::signature_mismatch:
    case errc::not_a_basis:
    case errc::tuple_mismatch:
    case errc::witness_invalid:
        return 2;
    case errc::generator_check_failed:
    case errc::internal:
    default:
        return 4;
    }
}

inline std::uint64_t parse_seed(const std::string& text) {
    std::string s = text;
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) s = s.substr(2);
    if (s.empty()) throw error(errc::parse_error, "empty seed");
    std::uint64_t v = 0;
    for (char c : s) {
        int digit;
        if (c >= '0' && c <= '9')
            digit = c - '0';
        else if (c >= 'a' && c <= 'f')
            digit = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            digit = c - 'A' + 10;
        else
            throw error(errc::parse_error, "seed must be hexadecimal");
        v = (v << 4) | static_cast<std::uint64_t>(digit);
    }
    return v;
}

inline std::string seed_header(std::uint64_t seed) {
    std::ostringstream os;
    os << "# seed=0x" << std::hex << seed;
    return os.str();
}

inline std::string minpoly_string(const NumberField& f) {
    std::string s = "[";
    const auto& mp = f.minpoly();
    for (std::size_t k = 0; k < mp.size(); ++k) {
        if (k) s += ", ";
        s += to_string(mp[k]);
    }
    return s + "]";
}

} // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;

    CLI::App app{"exact computation in generalized Weyl algebras"};
    app.require_subcommand(1);

    std::string sig_path, sig_path_b, g_text, expr1, expr2;
    unsigned long ad_steps = 1;
    unsigned radius = 3;
    std::string seed_text = "0xc0ffee";
    unsigned degree_cap = 8;
    long alpha_cap = 4;
    unsigned steps = 0;
    unsigned gen_degree = 4;

    auto* mul = app.add_subcommand("mul", "multiply two elements");
    mul->add_option("-s,--signature", sig_path, "signature file")->required();
    mul->add_option("expr1", expr1)->required();
    mul->add_option("expr2", expr2)->required();

    auto* br = app.add_subcommand("bracket", "Lie bracket of two elements");
    br->add_option("-s,--signature", sig_path, "signature file")->required();
    br->add_option("expr1", expr1)->required();
    br->add_option("expr2", expr2)->required();

    auto* ad = app.add_subcommand("ad", "iterated bracket (ad u)^s v");
    ad->add_option("-s,--signature", sig_path, "signature file")->required();
    ad->add_option("u", expr1)->required();
    ad->add_option("v", expr2)->required();
    ad->add_option("power", ad_steps, "number of applications");

    auto* an = app.add_subcommand("analyze", "classify an element's ad behaviour");
    an->add_option("-s,--signature", sig_path, "signature file")->required();
    an->add_option("expr", expr1)->required();
    an->add_option("--steps", steps, "simplicity probe rounds (0 = skip)");
    an->add_option("--degree-cap", degree_cap, "probe cap on t/d total degree");
    an->add_option("--alpha-cap", alpha_cap, "probe cap on |alpha|_1");

    auto* inv = app.add_subcommand("invariants", "field and lattice invariants");
    inv->add_option("-s,--signature", sig_path, "signature file")->required();

    auto* cls = app.add_subcommand("classify", "decide isomorphism of two signatures");
    cls->add_option("a", sig_path)->required();
    cls->add_option("b", sig_path_b)->required();
    cls->add_option("--radius", radius, "search radius for the witness lattice");

    auto* iso = app.add_subcommand("iso-apply", "apply the isomorphism built from g");
    iso->add_option("a", sig_path)->required();
    iso->add_option("b", sig_path_b)->required();
    iso->add_option("g", g_text)->required();
    iso->add_option("expr", expr1)->required();

    auto* self = app.add_subcommand("selfcheck", "run the invariant suite");
    self->add_option("--seed", seed_text, "hexadecimal RNG seed");
    self->add_option("--steps", steps, "cases per suite");
    self->add_option("--degree-cap", gen_degree, "degree cap for generated elements");

    std::vector<const char*> argv;
    argv.push_back("weyl");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(mul) || app.got_subcommand(br)) {
            Signature sig = load_signature(sig_path);
            WeylElement u = parse_element(sig, expr1);
            WeylElement v = parse_element(sig, expr2);
            out << to_string(app.got_subcommand(mul) ? op_mul(u, v) : bracket(u, v)) << "\n";
            return 0;
        }
        if (app.got_subcommand(ad)) {
            Signature sig = load_signature(sig_path);
            WeylElement u = parse_element(sig, expr1);
            WeylElement v = parse_element(sig, expr2);
            out << to_string(ad_power(u, v, static_cast<unsigned>(ad_steps))) << "\n";
            return 0;
        }
        if (app.got_subcommand(an)) {
            Signature sig = load_signature(sig_path);
            WeylElement u = parse_element(sig, expr1);
            LocalClass lc = classify_local(u);
            out << verdict_name(lc.verdict) << " (" << lc.reason << ")\n";
            out << "E(F): " << (is_in_e_of_f(u) ? "yes" : "no") << "\n";
            out << "N(N): " << (is_in_n_of_n(u) ? "yes" : "no") << "\n";
            if (steps > 0) {
                ProbeCaps caps;
                caps.total_degree = degree_cap;
                caps.alpha_norm = alpha_cap;
                ProbeResult pr = simplicity_probe(u, steps, caps);
                if (pr.reached_one)
                    out << "simplicity: ReachedOne round=" << pr.rounds_used << "\n";
                else
                    out << "simplicity: Exhausted rounds=" << steps << "\n";
            }
            return 0;
        }
        if (app.got_subcommand(inv)) {
            Signature sig = load_signature(sig_path);
            out << "field: degree=" << sig.field().degree() << " minpoly=" << minpoly_string(sig.field())
                << " irreducible=" << (sig.field().irreducibility_checked() ? "checked" : "unchecked") << "\n";
            GammaInvariants gi = gamma_invariants(sig.gamma(), sig.l2(), sig.l3());
            out << "gamma: rank=" << gi.rank << " rank_cap_V2=" << gi.rank_cap_v2
                << " rank_proj3=" << gi.rank_proj3 << "\n";
            return 0;
        }
        if (app.got_subcommand(cls)) {
            Signature a = load_signature(sig_path);
            Signature b = load_signature(sig_path_b);
            IsoVerdict v = decide_isomorphism(a, b, radius);
            switch (v.kind) {
            case IsoVerdict::Kind::isomorphic:
                out << "EQUIVALENT g=" << to_string(v.sigma->g.full()) << "\n";
                return 0;
            case IsoVerdict::Kind::not_isomorphic:
                out << "INEQUIVALENT invariant=" << v.invariant << " lhs=" << v.lhs << " rhs=" << v.rhs << "\n";
                return 0;
            case IsoVerdict::Kind::undecided:
            default:
                out << "UNDECIDED radius=" << v.radius << "\n";
                return 3;
            }
        }
        if (app.got_subcommand(iso)) {
            Signature a = load_signature(sig_path);
            Signature b = load_signature(sig_path_b);
            BlockMatrix g = parse_block_matrix(a.field(), a.l2(), a.l3(), g_text);
            SigmaMap s = build_sigma(g, a, b);
            WeylElement u = parse_element(a, expr1);
            out << to_string(apply_sigma(s, u)) << "\n";
            return 0;
        }
        if (app.got_subcommand(self)) {
            std::uint64_t seed = parse_seed(seed_text);
            unsigned trials = steps == 0 ? 20 : steps;
            out << seed_header(seed) << "\n";
            std::vector<SuiteResult> results = run_selfcheck(trials, seed, gen_degree);
            bool all_ok = true;
            for (const auto& r : results) {
                if (r.ok) {
                    out << "ok " << r.name << " (" << r.cases << " cases)\n";
                } else {
                    all_ok = false;
                    out << "FAIL " << r.name << ": " << r.detail << "\n";
                }
            }
            if (all_ok) {
                out << "SELFCHECK PASS (" << results.size() << " suites)\n";
                return 0;
            }
            out << "SELFCHECK FAIL\n";
            return 4;
        }
    } catch (const error& e) {
        err << e.what() << "\n";
        return exit_code_for(e);
    }
    return 1;
}

} // namespace weyl
