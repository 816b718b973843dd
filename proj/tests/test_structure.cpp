#include <catch2/catch_amalgamated.hpp>

#include "weyl/expr.hpp"
#include "weyl/random_gen.hpp"
#include "weyl/structure.hpp"

using namespace weyl;

namespace {

Signature sig_w100() {
    NumberField q = NumberField::rationals();
    return Signature::make(1, 0, 0, q, GammaGroup::make(q, 0, {}));
}

Signature sig_w010() {
    NumberField q = NumberField::rationals();
    return Signature::make(0, 1, 0, q, GammaGroup::make(q, 1, {{q.one()}}));
}

Signature sig_w110() {
    NumberField q = NumberField::rationals();
    return Signature::make(1, 1, 0, q, GammaGroup::make(q, 1, {{q.one()}}));
}

Signature sig_w111() {
    NumberField q = NumberField::rationals();
    return Signature::make(1, 1, 1, q, GammaGroup::make(q, 2, {{q.one(), q.zero()}, {q.zero(), q.one()}}));
}

// Proven upper bound for the nilpotency index of ad(u), u in A+D1, applied
// to v: each A-factor lowers the d level and each D1-factor lowers the
// first-block t level, which the A-factors can raise by at most deg(u).
unsigned nilpotency_bound(const WeylElement& u, const WeylElement& v) {
    unsigned i1 = 0;
    for (const auto& [m, c] : v.terms()) {
        unsigned s = 0;
        for (std::size_t p = 0; p < v.sig().l1(); ++p) s += m.i[p];
        i1 = std::max(i1, s);
    }
    return max_mu_level(v) * (1 + total_degree(u)) + i1 + 1;
}

} // namespace

TEST_CASE("ad_power", "[structure]") {
    Signature s = sig_w010();
    SECTION("zeroth power is the identity") {
        Rng rng(2);
        for (int t = 0; t < 10; ++t) {
            WeylElement u = random_element(rng, s, {});
            WeylElement v = random_element(rng, s, {});
            REQUIRE(ad_power(u, v, 0) == v);
        }
    }
    SECTION("derivations act diagonally on x^alpha") {
        Rng rng(4);
        GenLimits lim;
        for (int t = 0; t < 10; ++t) {
            DerivationVector dv(s.ell(), s.field().zero());
            for (auto& e : dv) e = random_field_elem(rng, s.field(), lim);
            IntVec alpha = random_alpha(rng, s, 3);
            FieldElement ev = pairing(s, dv, alpha);
            for (unsigned p = 0; p <= 3; ++p)
                REQUIRE(ad_power(derivation_elem(s, dv), x_elem(s, alpha), p) == ev.pow(p) * x_elem(s, alpha));
        }
    }
    SECTION("A is commutative") {
        REQUIRE(ad_power(parse_element(s, "x[1]"), parse_element(s, "x[2] + t1"), 1).is_zero());
    }
}

TEST_CASE("classify_local", "[structure]") {
    Signature s = sig_w110();
    SECTION("A plus D1 certifies nilpotence") {
        LocalClass c = classify_local(parse_element(s, "x[1] + t1"));
        REQUIRE(c.verdict == LocalClass::Verdict::cert_nilpotent);
        LocalClass c2 = classify_local(parse_element(s, "t1 + d1"));
        REQUIRE(c2.verdict == LocalClass::Verdict::cert_nilpotent);
    }
    SECTION("outer derivation is finite but not nilpotent") {
        LocalClass c = classify_local(parse_element(s, "d2"));
        REQUIRE(c.verdict == LocalClass::Verdict::cert_finite_not_nilpotent);
    }
    SECTION("t1 d2 is not locally finite") {
        LocalClass c = classify_local(parse_element(s, "t1*d2"));
        REQUIRE(c.verdict == LocalClass::Verdict::not_locally_finite);
    }
    SECTION("Euler operator lands in the gap") {
        LocalClass c = classify_local(parse_element(s, "t1*d1"));
        REQUIRE(c.verdict == LocalClass::Verdict::inconclusive);
    }
    SECTION("mixed element with a D part") {
        LocalClass c = classify_local(parse_element(s, "t1*d1 + d2"));
        REQUIRE(c.verdict == LocalClass::Verdict::not_nilpotent_unknown_finite);
    }
    SECTION("zero rejected") {
        try {
            classify_local(WeylElement(s));
            FAIL("expected ZeroElement");
        } catch (const error& e) {
            REQUIRE(e.code() == errc::zero_element);
        }
    }
}

TEST_CASE("ad_growth", "[structure]") {
    SECTION("multiplication operator is nilpotent on d") {
        Signature s = sig_w100();
        GrowthResult g = ad_growth(t_elem(s, 1), d_elem(s, 1), 10);
        REQUIRE(g.nilpotent_at == 2);
    }
    SECTION("eigenvector keeps dimension one") {
        Signature s = sig_w010();
        GrowthResult g = ad_growth(d_elem(s, 1), parse_element(s, "x[1]"), 8);
        REQUIRE_FALSE(g.nilpotent_at);
        REQUIRE(g.span_dims.back() == 1);
    }
    SECTION("span contains the seed") {
        Signature s = sig_w010();
        GrowthResult g = ad_growth(parse_element(s, "x[1]"), parse_element(s, "x[1]"), 3);
        REQUIRE((g.nilpotent_at.has_value() || !g.span_dims.empty()));
        if (!g.span_dims.empty()) REQUIRE(g.span_dims.front() >= 1);
    }
    SECTION("unbounded growth for t1 d2") {
        Signature s = sig_w110();
        GrowthResult g = ad_growth(parse_element(s, "t1*d2"), parse_element(s, "x[1]"), 12);
        REQUIRE_FALSE(g.nilpotent_at);
        REQUIRE(g.span_dims.back() == 13);
    }
}

TEST_CASE("classify agrees with growth", "[structure]") {
    std::vector<Signature> sigs{sig_w010(), sig_w110(), sig_w111()};
    Rng rng(kDefaultSeed);
    GenLimits lim;
    lim.max_degree = 3;
    lim.max_terms = 2;
    for (int t = 0; t < 40; ++t) {
        const Signature& s = sigs[t % sigs.size()];
        // Certified nilpotent: random A element plus a random D1 vector.
        WeylElement u = random_a_element(rng, s, lim);
        for (std::size_t p = 1; p <= s.l1(); ++p)
            if (rng.flip()) u = u + random_field_elem(rng, s.field(), lim, true) * d_elem(s, p);
        if (u.is_zero()) continue;
        REQUIRE(classify_local(u).verdict == LocalClass::Verdict::cert_nilpotent);
        WeylElement v = random_element(rng, s, lim);
        unsigned bound = nilpotency_bound(u, v);
        GrowthResult g = ad_growth(u, v, bound);
        REQUIRE(g.nilpotent_at.has_value());
        REQUIRE(*g.nilpotent_at <= bound);
    }
}

TEST_CASE("mixed A+D1 elements can exceed the naive degree bound", "[structure]") {
    // The nilpotency index of ad(t1^3 + d1) on d1^3 is 10, strictly above
    // total_degree(u*v) + 2 = 8; the proven bound still holds.
    Signature s = sig_w100();
    WeylElement u = parse_element(s, "t1^3 + d1");
    WeylElement v = parse_element(s, "d1^3");
    GrowthResult g = ad_growth(u, v, 20);
    REQUIRE(g.nilpotent_at == 10);
    REQUIRE(total_degree(op_mul(u, v)) + 2 == 8);
    REQUIRE(*g.nilpotent_at <= nilpotency_bound(u, v));
}

TEST_CASE("unbounded span for NotLocallyFinite samples", "[structure]") {
    std::vector<Signature> sigs{sig_w010(), sig_w110(), sig_w111()};
    Rng rng(77);
    GenLimits lim;
    lim.max_degree = 2;
    lim.max_terms = 2;
    const unsigned S = 12;
    for (int t = 0; t < 30; ++t) {
        const Signature& s = sigs[t % sigs.size()];
        WeylElement u = random_nonzero_element(rng, s, lim);
        if (classify_local(u).verdict != LocalClass::Verdict::not_locally_finite) continue;
        std::size_t best = 0;
        std::vector<WeylElement> candidates;
        for (std::size_t k = 0; k < s.gamma().rank(); ++k) {
            for (long c : {1L, -1L, 2L, -2L}) {
                IntVec a(s.gamma().rank(), 0);
                a[k] = c;
                candidates.push_back(x_elem(s, a));
            }
        }
        for (std::size_t qx = 1; qx <= s.t_axes(); ++qx) candidates.push_back(t_elem(s, qx));
        for (std::size_t p = 1; p <= s.ell(); ++p) candidates.push_back(d_elem(s, p));
        for (const auto& v : candidates) {
            GrowthResult g = ad_growth(u, v, S);
            if (!g.nilpotent_at) best = std::max(best, g.span_dims.back());
            if (best >= S / 2) break;
        }
        REQUIRE(best >= S / 2);
    }
}

TEST_CASE("eigenvector set of F", "[structure]") {
    Signature s = sig_w110();
    SECTION("multiples of x^alpha belong") {
        REQUIRE(is_in_e_of_f(parse_element(s, "5*x[1]")));
        REQUIRE(is_in_e_of_f(parse_element(s, "x[-2]")));
    }
    SECTION("two distinct exponents break the eigen property") {
        WeylElement u = parse_element(s, "x[1] + x[2]");
        REQUIRE_FALSE(is_in_e_of_f(u));
        // demonstrate the violation: bracket with d2 is not a multiple of u
        REQUIRE_FALSE(is_multiple_of(bracket(d_elem(s, 2), u), u));
    }
    SECTION("t or d parts break it") {
        REQUIRE_FALSE(is_in_e_of_f(parse_element(s, "t1")));
        REQUIRE_FALSE(is_in_e_of_f(parse_element(s, "x[1]*d1")));
    }
}

TEST_CASE("centralizer of N", "[structure]") {
    Signature s = sig_w110();
    REQUIRE(is_in_n_of_n(parse_element(s, "t2")));
    REQUIRE(is_in_n_of_n(parse_element(s, "x[1]*t2^3 + 4")));
    REQUIRE_FALSE(is_in_n_of_n(parse_element(s, "t1")));
    REQUIRE_FALSE(is_in_n_of_n(parse_element(s, "x[1]*d1")));
    Signature w = sig_w010();
    // with l1 = 0 the t axis lies in the middle block
    REQUIRE(is_in_n_of_n(parse_element(w, "t1")));
}

TEST_CASE("centralizer_check", "[structure]") {
    Signature s = sig_w110();
    std::vector<WeylElement> xs;
    xs.push_back(parse_element(s, "x[1]"));
    xs.push_back(parse_element(s, "x[-1]"));
    SECTION("A[D1] elements commute with every x^alpha") {
        REQUIRE(centralizer_check(parse_element(s, "t1*d1 + x[2]"), xs));
        REQUIRE(centralizer_check(parse_element(s, "7"), xs));
    }
    SECTION("outer derivations do not") { REQUIRE_FALSE(centralizer_check(parse_element(s, "d2"), xs)); }
}

TEST_CASE("simplicity_probe", "[structure]") {
    SECTION("t1 reaches 1 through the Weyl relation") {
        Signature s = sig_w100();
        ProbeResult r = simplicity_probe(parse_element(s, "t1"), 6);
        REQUIRE(r.reached_one);
        REQUIRE(r.rounds_used <= 2);
        REQUIRE_FALSE(r.trace.empty());
    }
    SECTION("x^1 reaches 1 through its inverse") {
        Signature s = sig_w010();
        ProbeResult r = simplicity_probe(parse_element(s, "x[1]"), 6);
        REQUIRE(r.reached_one);
        REQUIRE(r.rounds_used <= 2);
    }
    SECTION("t1^2 reaches 1 within two rounds") {
        Signature s = sig_w100();
        ProbeResult r = simplicity_probe(parse_element(s, "t1^2"), 6);
        REQUIRE(r.reached_one);
        REQUIRE(r.rounds_used <= 2);
    }
    SECTION("scalars are rejected") {
        Signature s = sig_w100();
        try {
            simplicity_probe(parse_element(s, "3"), 6);
            FAIL("expected ScalarInput");
        } catch (const error& e) {
            REQUIRE(e.code() == errc::scalar_input);
        }
    }
}
