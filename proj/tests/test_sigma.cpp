#include <catch2/catch_amalgamated.hpp>

#include "weyl/expr.hpp"
#include "weyl/sigma.hpp"

using namespace weyl;

namespace {

NumberField q() { return NumberField::rationals(); }

Signature make_sig(std::size_t l1, std::size_t l2, std::size_t l3, const NumberField& f,
                   const Mat<FieldElement>& gens) {
    return Signature::make(l1, l2, l3, f, GammaGroup::make(f, l2 + l3, gens));
}

} // namespace

TEST_CASE("build_sigma scalar case", "[sigma]") {
    NumberField f = q();
    Signature a = make_sig(0, 1, 0, f, {{f.from_int(2)}});
    Signature b = make_sig(0, 1, 0, f, {{f.one()}});
    BlockMatrix g(f, 1, 0, {{f.from_int(2)}}, {}, {});
    SigmaMap s = build_sigma(g, a, b);

    SECTION("x^2 maps to x'^1") {
        REQUIRE(apply_sigma(s, parse_element(a, "x[2]")) == parse_element(b, "x[1]"));
    }
    SECTION("dbar = 2 d'") {
        REQUIRE(sigma_d_image(s, 1) == parse_element(b, "2*d1"));
    }
    SECTION("t maps to t'/2") {
        REQUIRE(apply_sigma(s, parse_element(a, "t1")) == parse_element(b, "1/2*t1"));
    }
    SECTION("euler operator is preserved") {
        REQUIRE(apply_sigma(s, parse_element(a, "t1*d1")) == parse_element(b, "t1*d1"));
    }
    SECTION("scalars are fixed") {
        REQUIRE(apply_sigma(s, parse_element(a, "-7/3")) == parse_element(b, "-7/3"));
    }
}

TEST_CASE("build_sigma identity", "[sigma]") {
    NumberField f = q();
    Signature a = make_sig(1, 1, 0, f, {{f.from_int(2)}});
    SigmaMap s = build_sigma(BlockMatrix::identity(f, 1, 0), a, a);
    Rng rng(kDefaultSeed);
    for (int t = 0; t < 10; ++t) {
        WeylElement u = random_element(rng, a, {});
        REQUIRE(apply_sigma(s, u) == u);
    }
}

TEST_CASE("build_sigma rejects bad input", "[sigma]") {
    NumberField f = q();
    SECTION("tuple mismatch") {
        Signature a = make_sig(1, 1, 0, f, {{f.one()}});
        Signature b = make_sig(0, 1, 1, f, {{f.one(), f.zero()}, {f.zero(), f.one()}});
        try {
            build_sigma(BlockMatrix::identity(f, 1, 0), a, b);
            FAIL("expected TupleMismatch");
        } catch (const error& e) {
            REQUIRE(e.code() == errc::tuple_mismatch);
        }
    }
    SECTION("invalid witness") {
        Signature a = make_sig(0, 1, 0, f, {{f.from_int(2)}});
        Signature b = make_sig(0, 1, 0, f, {{f.from_int(3)}});
        try {
            build_sigma(BlockMatrix::identity(f, 1, 0), a, b);
            FAIL("expected WitnessInvalid");
        } catch (const error& e) {
            REQUIRE(e.code() == errc::witness_invalid);
        }
    }
}

TEST_CASE("verify_sigma", "[sigma]") {
    NumberField f = q();
    Signature a = make_sig(1, 1, 0, f, {{f.from_int(2)}});
    Signature b = make_sig(1, 1, 0, f, {{f.one()}});
    BlockMatrix g(f, 1, 0, {{f.from_int(2)}}, {}, {});
    SigmaMap s = build_sigma(g, a, b);

    SECTION("valid map passes 100 trials") {
        SigmaReport rep = verify_sigma(s, 100);
        REQUIRE(rep.ok);
        REQUIRE(rep.trials == 100);
    }
    SECTION("corrupted t image is caught") {
        SigmaMap bad = s;
        bad.t_images[1] = Rational(2) * bad.t_images[1];
        SigmaReport rep = verify_sigma(bad, 50);
        REQUIRE_FALSE(rep.ok);
        REQUIRE_FALSE(rep.failure.empty());
    }
}

TEST_CASE("grading is preserved", "[sigma]") {
    NumberField f = q();
    Signature a = make_sig(1, 1, 1, f, {{f.one(), f.zero()}, {f.zero(), f.one()}});
    Rng rng(kDefaultSeed);
    GenLimits lim;
    lim.coeff_range = 2;
    BlockMatrix g = random_block_matrix(rng, f, 1, 1, lim);
    Signature b = Signature::make(1, 1, 1, f, gamma_apply(g, a.gamma()));
    SigmaMap s = build_sigma(g, a, b);
    for (int t = 0; t < 10; ++t) {
        IntVec alpha = random_alpha(rng, a, 2);
        WeylElement u = op_mul(x_elem(a, alpha), random_element(rng, a, lim));
        // every term of u sits at one alpha; images stay homogeneous at tau(alpha)
        for (const auto& [av, comp] : alpha_components(u)) {
            WeylElement img = apply_sigma(s, comp);
            auto comps = alpha_components(img);
            if (img.is_zero()) continue;
            REQUIRE(comps.size() == 1);
            REQUIRE(comps[0].first == tau_coords(s, av));
        }
    }
}

TEST_CASE("composition of witnesses", "[sigma]") {
    NumberField f = q();
    Rng rng(kDefaultSeed + 1);
    GenLimits lim;
    lim.coeff_range = 2;
    for (int t = 0; t < 6; ++t) {
        Mat<FieldElement> id{{f.one(), f.zero()}, {f.zero(), f.one()}};
        Signature a = make_sig(1, 1, 1, f, id);
        BlockMatrix g1 = random_block_matrix(rng, f, 1, 1, lim);
        Signature b = Signature::make(1, 1, 1, f, gamma_apply(g1, a.gamma()));
        BlockMatrix g2 = random_block_matrix(rng, f, 1, 1, lim);
        Signature c = Signature::make(1, 1, 1, f, gamma_apply(g2, b.gamma()));
        SigmaMap s1 = build_sigma(g1, a, b);
        SigmaMap s2 = build_sigma(g2, b, c);
        SigmaMap s12 = build_sigma(g2 * g1, a, c);
        for (int k = 0; k < 5; ++k) {
            WeylElement u = random_element(rng, a, lim);
            REQUIRE(apply_sigma(s2, apply_sigma(s1, u)) == apply_sigma(s12, u));
        }
    }
}

TEST_CASE("witnesses always yield verified isomorphisms", "[sigma]") {
    NumberField f = q();
    Rng rng(kDefaultSeed + 2);
    GenLimits lim;
    lim.coeff_range = 2;
    const std::vector<std::pair<std::size_t, std::size_t>> shapes{{1, 0}, {0, 1}, {1, 1}};
    for (const auto& [l2, l3] : shapes) {
        for (int t = 0; t < 3; ++t) {
            std::size_t n = l2 + l3;
            Mat<FieldElement> id(n, std::vector<FieldElement>(n, f.zero()));
            for (std::size_t i = 0; i < n; ++i) id[i][i] = f.one();
            Signature a = Signature::make(1, l2, l3, f, GammaGroup::make(f, n, id));
            BlockMatrix g = random_block_matrix(rng, f, l2, l3, lim);
            Signature b = Signature::make(1, l2, l3, f, gamma_apply(g, a.gamma()));
            REQUIRE(verify_witness(g, a.gamma(), b.gamma()));
            SigmaMap s = build_sigma(g, a, b);
            REQUIRE(verify_sigma(s, 20, kDefaultSeed + t).ok);
        }
    }
}

TEST_CASE("decide_isomorphism", "[sigma]") {
    NumberField f = q();
    NumberField s2 = NumberField::make({Rational(-2), Rational(0), Rational(1)});
    SECTION("scaled lattices are isomorphic") {
        Signature a = make_sig(1, 1, 0, f, {{f.from_int(2)}});
        Signature b = make_sig(1, 1, 0, f, {{f.one()}});
        IsoVerdict v = decide_isomorphism(a, b, 3);
        REQUIRE(v.kind == IsoVerdict::Kind::isomorphic);
        REQUIRE(verify_sigma(*v.sigma, 25).ok);
    }
    SECTION("tuple certificate") {
        Signature a = make_sig(1, 1, 0, f, {{f.one()}});
        Signature b = make_sig(0, 1, 1, f, {{f.one(), f.zero()}, {f.zero(), f.one()}});
        IsoVerdict v = decide_isomorphism(a, b, 3);
        REQUIRE(v.kind == IsoVerdict::Kind::not_isomorphic);
        REQUIRE(v.invariant == "tuple");
        REQUIRE(v.lhs == "(1,1,0)");
        REQUIRE(v.rhs == "(0,1,1)");
    }
    SECTION("lattice certificate over Q(th)") {
        Signature a = make_sig(0, 1, 1, s2, {{s2.one(), s2.one()}, {s2.theta(), -s2.theta()}});
        Signature b = make_sig(0, 1, 1, s2, {{s2.one(), s2.zero()}, {s2.zero(), s2.theta()}});
        IsoVerdict v = decide_isomorphism(a, b, 3);
        REQUIRE(v.kind == IsoVerdict::Kind::not_isomorphic);
        REQUIRE(v.invariant == "rank_cap_V2");
        REQUIRE(v.lhs == "0");
        REQUIRE(v.rhs == "1");
    }
}
