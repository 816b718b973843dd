#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "golden_cases.hpp"
#include "weyl/cli.hpp"
#include "weyl/expr.hpp"
#include "weyl/random_gen.hpp"
#include "weyl/sigfile.hpp"

using namespace weyl;

namespace {

Signature sig_w100() {
    NumberField q = NumberField::rationals();
    return Signature::make(1, 0, 0, q, GammaGroup::make(q, 0, {}));
}

Signature sig_w110_2z() {
    NumberField q = NumberField::rationals();
    return Signature::make(1, 1, 0, q, GammaGroup::make(q, 1, {{q.from_int(2)}}));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CliRun {
    int exit_code;
    std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("parse_element basics", "[parser]") {
    Signature s = sig_w100();
    SECTION("products evaluate left to right") {
        REQUIRE(parse_element(s, "d1*t1") == op_mul(d_elem(s, 1), t_elem(s, 1)));
        REQUIRE(parse_element(s, "t1*d1") == monomial_elem(s, make_monomial(s, {}, {1}, {1}), s.field().one()));
    }
    SECTION("rational and parenthesized scalars") {
        REQUIRE(parse_element(s, "1/2 * t1 + (3 - 1)*d1") ==
                make_rational(1, 2) * t_elem(s, 1) + Rational(2) * d_elem(s, 1));
    }
    SECTION("powers") {
        REQUIRE(parse_element(s, "(t1 + 1)^2") ==
                parse_element(s, "t1^2 + 2*t1 + 1"));
    }
    SECTION("leading minus") { REQUIRE(parse_element(s, "-t1") == Rational(-1) * t_elem(s, 1)); }
}

TEST_CASE("parse_element errors", "[parser]") {
    Signature s = sig_w110_2z();
    SECTION("position is reported") {
        try {
            parse_element(s, "t1 + %");
            FAIL("expected ParseError");
        } catch (const parse_error& e) {
            REQUIRE(e.pos() == 5);
        }
    }
    SECTION("unknown axis") {
        try {
            parse_element(s, "t3");
            FAIL("expected UnknownAxis");
        } catch (const parse_error& e) {
            REQUIRE(e.code() == errc::unknown_axis);
        }
        try {
            parse_element(s, "d4");
            FAIL("expected UnknownAxis");
        } catch (const parse_error& e) {
            REQUIRE(e.code() == errc::unknown_axis);
        }
    }
    SECTION("alpha must lie in Gamma") {
        try {
            parse_element(s, "x[1]");
            FAIL("expected AlphaNotInGamma");
        } catch (const parse_error& e) {
            REQUIRE(e.code() == errc::alpha_not_in_gamma);
        }
        REQUIRE(parse_element(s, "x[4]") == x_elem(s, {2}));
    }
    SECTION("truncated input") { REQUIRE_THROWS_AS(parse_element(s, "t1 +"), parse_error); }
}

TEST_CASE("theta literals", "[parser]") {
    NumberField f = NumberField::make({Rational(-2), Rational(0), Rational(1)});
    Signature s = Signature::make(0, 1, 0, f, GammaGroup::make(f, 1, {{f.one()}, {f.theta()}}));
    REQUIRE(parse_element(s, "1/2 + 3*th") == scalar_elem(s, f.element({make_rational(1, 2), Rational(3)})));
    REQUIRE(parse_element(s, "th^2") == scalar_elem(s, f.from_int(2)));
    REQUIRE(parse_element(s, "x[th]") == x_elem(s, {0, 1}));
    REQUIRE(parse_element(s, "x[1 + th]") == x_elem(s, {1, 1}));
}

TEST_CASE("print parse round trip", "[parser]") {
    NumberField f2 = NumberField::make({Rational(-2), Rational(0), Rational(1)});
    std::vector<Signature> sigs;
    sigs.push_back(sig_w100());
    sigs.push_back(sig_w110_2z());
    sigs.push_back(Signature::make(1, 1, 1, f2,
                                   GammaGroup::make(f2, 2,
                                                    {{f2.one(), f2.zero()},
                                                     {f2.zero(), f2.one()},
                                                     {f2.theta(), f2.theta()}})));
    Rng rng(kDefaultSeed);
    GenLimits lim;
    for (int t = 0; t < 120; ++t) {
        const Signature& s = sigs[t % sigs.size()];
        WeylElement u = random_element(rng, s, lim);
        REQUIRE(parse_element(s, to_string(u)) == u);
    }
    REQUIRE(to_string(WeylElement(sigs[0])) == "0");
    REQUIRE(parse_element(sigs[0], "0").is_zero());
}

TEST_CASE("signature files", "[parser]") {
    SECTION("example from the format notes") {
        Signature s = parse_signature_text("l1 = 1\nl2 = 1\nl3 = 0\nminpoly = [0, 1]\ngen = [2]\n");
        REQUIRE(s.l1() == 1);
        REQUIRE(s.gamma().rank() == 1);
        REQUIRE(s.gamma().basis()[0][0] == s.field().from_int(2));
    }
    SECTION("comments and blank lines") {
        Signature s = parse_signature_text("# header\n\nl1 = 0\nl2 = 1\nl3 = 0 # trailing\nminpoly = [0, 1]\ngen = [1]\n");
        REQUIRE(s.l2() == 1);
    }
    SECTION("round trip on canonical form") {
        NumberField f = NumberField::make({Rational(-2), Rational(0), Rational(1)});
        Signature s = Signature::make(0, 1, 1, f,
                                      GammaGroup::make(f, 2, {{f.one(), f.one()}, {f.theta(), -f.theta()}}));
        Signature back = parse_signature_text(save_signature(s));
        REQUIRE(back.same_as(s));
        REQUIRE(save_signature(back) == save_signature(s));
    }
    SECTION("load from disk") {
        Signature s = load_signature(golden::data("qs2_a.sig"));
        REQUIRE(s.field().degree() == 2);
        REQUIRE(s.gamma().rank() == 2);
        REQUIRE_THROWS_AS(load_signature(golden::data("missing.sig")), error);
    }
    SECTION("degenerate group is a semantic error") {
        REQUIRE_THROWS_MATCHES(
            parse_signature_text("l1 = 0\nl2 = 2\nl3 = 0\nminpoly = [0, 1]\ngen = [1, 1]\n"), error,
            Catch::Matchers::Predicate<error>([](const error& e) { return e.code() == errc::degenerate_group; }));
    }
    SECTION("syntax garbage is a parse error") {
        REQUIRE_THROWS_AS(parse_signature_text("l1 : 1\n"), parse_error);
    }
}

TEST_CASE("golden transcripts are byte stable", "[cli]") {
    for (const auto& c : golden::cases()) {
        CAPTURE(c.name);
        CliRun first = run(c.args);
        CliRun second = run(c.args);
        REQUIRE(first.exit_code == c.expected_exit);
        REQUIRE(second.exit_code == c.expected_exit);
        REQUIRE(first.out == second.out);
        std::string golden_text = read_file(std::string(WEYL_GOLDEN_DIR) + "/" + c.name + ".txt");
        REQUIRE(first.out == golden_text);
    }
}

TEST_CASE("cli exit codes", "[cli]") {
    SECTION("usage error") {
        CliRun r = run({"mul", "-s", golden::data("w100.sig"), "t1 + %", "t1"});
        REQUIRE(r.exit_code == 1);
    }
    SECTION("unknown axis is a usage error") {
        CliRun r = run({"mul", "-s", golden::data("w100.sig"), "t2", "t1"});
        REQUIRE(r.exit_code == 1);
    }
    SECTION("invalid signature") {
        std::string bad = (std::filesystem::temp_directory_path() / "weyl_bad_degenerate.sig").string();
        {
            std::ofstream out(bad);
            out << "l1 = 0\nl2 = 2\nl3 = 0\nminpoly = [0, 1]\ngen = [1, 1]\n";
        }
        CliRun r = run({"invariants", "-s", bad});
        REQUIRE(r.exit_code == 2);
    }
    SECTION("iso-apply with a bad witness") {
        CliRun r = run({"iso-apply", golden::data("w110_2z.sig"), golden::data("w110_z.sig"), "[[1]]", "t2"});
        REQUIRE(r.exit_code == 2);
    }
    SECTION("iso-apply applies the scalar witness") {
        CliRun r = run({"iso-apply", golden::data("w110_2z.sig"), golden::data("w110_z.sig"), "[[2]]", "t2*d2"});
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.out == "t2*d2\n");
        CliRun r2 = run({"iso-apply", golden::data("w110_2z.sig"), golden::data("w110_z.sig"), "[[2]]", "x[2]"});
        REQUIRE(r2.out == "x[1]\n");
    }
    SECTION("invariants output") {
        CliRun r = run({"invariants", "-s", golden::data("qs2_b.sig")});
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.out == "field: degree=2 minpoly=[-2, 0, 1] irreducible=checked\n"
                         "gamma: rank=2 rank_cap_V2=1 rank_proj3=1\n");
    }
    SECTION("degree four fields are flagged unchecked") {
        std::string path = (std::filesystem::temp_directory_path() / "weyl_deg4.sig").string();
        {
            std::ofstream out(path);
            out << "l1 = 0\nl2 = 1\nl3 = 0\nminpoly = [1, 0, 0, 0, 1]\ngen = [1]\ngen = [th]\n";
        }
        CliRun r = run({"invariants", "-s", path});
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.out.find("irreducible=unchecked") != std::string::npos);
    }
    SECTION("ad command") {
        CliRun r = run({"ad", "-s", golden::data("w100.sig"), "t1", "d1", "2"});
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.out == "0\n");
    }
}

TEST_CASE("selfcheck runs clean at small size", "[cli]") {
    CliRun r = run({"selfcheck", "--steps", "4"});
    CAPTURE(r.out);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.rfind("# seed=0xc0ffee\n", 0) == 0);
    REQUIRE(r.out.find("SELFCHECK PASS") != std::string::npos);
}
