#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "weyl/dual.hpp"
#include "weyl/equivalence.hpp"
#include "weyl/expr.hpp"
#include "weyl/random_gen.hpp"
#include "weyl/sigma.hpp"
#include "weyl/structure.hpp"

namespace weyl {

struct SuiteResult {
    std::string name;
    bool ok = true;
    unsigned cases = 0;
    std::string detail; // first failure, empty when ok
};

namespace selfcheck_detail {

struct Harness {
    std::vector<SuiteResult> results;

    void suite(const std::string& name, unsigned cases, const std::function<std::string()>& body) {
        SuiteResult r{name, true, cases, ""};
        std::string fail = body();
        if (!fail.empty()) {
            r.ok = false;
            r.detail = fail;
        }
        results.push_back(std::move(r));
    }
};

inline std::vector<Signature> standard_signatures() {
    NumberField q = NumberField::rationals();
    NumberField qs2 = NumberField::make({Rational(-2), Rational(0), Rational(1)});
    std::vector<Signature> sigs;
    sigs.push_back(Signature::make(1, 0, 0, q, GammaGroup::make(q, 0, {})));
    sigs.push_back(Signature::make(0, 1, 0, q, GammaGroup::make(q, 1, {{q.one()}})));
    sigs.push_back(Signature::make(1, 1, 0, q, GammaGroup::make(q, 1, {{q.from_int(2)}})));
    sigs.push_back(Signature::make(1, 1, 1, q,
                                   GammaGroup::make(q, 2, {{q.one(), q.zero()}, {q.zero(), q.one()}})));
    sigs.push_back(Signature::make(1, 1, 1, qs2,
                                   GammaGroup::make(qs2, 2,
                                                    {{qs2.one(), qs2.zero()},
                                                     {qs2.zero(), qs2.one()},
                                                     {qs2.theta(), qs2.theta()}})));
    return sigs;
}

} // namespace selfcheck_detail

// The full invariant suite at configurable size. Deterministic for a fixed
// seed; every check is exact.
inline std::vector<SuiteResult> run_selfcheck(unsigned trials, std::uint64_t seed, unsigned degree_cap = 4) {
    using selfcheck_detail::Harness;
    Harness h;
    std::vector<Signature> sigs = selfcheck_detail::standard_signatures();
    NumberField q = NumberField::rationals();
    NumberField qs2 = NumberField::make({Rational(-2), Rational(0), Rational(1)});
    GenLimits lim;
    lim.max_terms = 2;
    lim.max_degree = degree_cap;
    lim.alpha_norm = 2;
    lim.coeff_range = 3;

    h.suite("field-axioms", trials, [&]() -> std::string {
        Rng rng(seed);
        for (unsigned t = 0; t < trials; ++t) {
            for (const NumberField& f : {q, qs2}) {
                FieldElement a = random_field_elem(rng, f, lim);
                FieldElement b = random_field_elem(rng, f, lim);
                FieldElement c = random_field_elem(rng, f, lim);
                if ((a + b) + c != a + (b + c)) return "additive associativity";
                if ((a * b) * c != a * (b * c)) return "multiplicative associativity";
                if (a * b != b * a) return "commutativity";
                if (a * (b + c) != a * b + a * c) return "distributivity";
                if (!a.is_zero() && a * a.inverse() != f.one()) return "inverse";
            }
        }
        return "";
    });

    h.suite("reduction-idempotence", trials, [&]() -> std::string {
        Rng rng(seed + 1);
        for (unsigned t = 0; t < trials; ++t) {
            std::vector<Rational> poly(2 * qs2.degree() - 1);
            for (auto& c : poly) c = random_rational(rng, 5);
            auto once = reduce_mod(poly, qs2.minpoly());
            auto twice = reduce_mod(once, qs2.minpoly());
            if (once != twice) return "reduction not idempotent";
        }
        return "";
    });

    h.suite("hnf-canonicalization", trials, [&]() -> std::string {
        Rng rng(seed + 2);
        for (unsigned t = 0; t < trials; ++t) {
            // Random generators, then a redundant shuffled regeneration.
            Mat<FieldElement> gens;
            for (int k = 0; k < 3; ++k) {
                gens.push_back({random_field_elem(rng, qs2, lim), random_field_elem(rng, qs2, lim)});
            }
            GammaGroup g1 = [&]() -> GammaGroup {
                try {
                    return GammaGroup::make(qs2, 2, gens);
                } catch (const error&) {
                    Mat<FieldElement> fallback{{qs2.one(), qs2.zero()}, {qs2.zero(), qs2.one()}};
                    return GammaGroup::make(qs2, 2, fallback);
                }
            }();
            // Regenerate from sums and a permutation of the canonical basis.
            Mat<FieldElement> regen;
            const auto& b = g1.basis();
            for (std::size_t i = b.size(); i-- > 0;) regen.push_back(b[i]);
            if (b.size() >= 2) {
                FVec sum = b[0];
                for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = sum[j] + b[1][j];
                regen.push_back(sum);
            }
            GammaGroup g2 = GammaGroup::make(qs2, 2, regen);
            if (!g1.same_group(g2)) return "canonical basis differs for a regenerated group";
            for (const auto& row : g2.basis())
                if (!g1.contains(row)) return "mutual membership failed";
        }
        return "";
    });

    h.suite("gamma-action-composition", trials, [&]() -> std::string {
        Rng rng(seed + 3);
        GammaGroup gamma = GammaGroup::make(q, 2, {{q.one(), q.zero()}, {q.zero(), q.one()}});
        for (unsigned t = 0; t < trials; ++t) {
            BlockMatrix g = random_block_matrix(rng, q, 1, 1, lim);
            BlockMatrix g2 = random_block_matrix(rng, q, 1, 1, lim);
            if (!gamma_apply(g * g2, gamma).same_group(gamma_apply(g, gamma_apply(g2, gamma))))
                return "action does not compose";
        }
        return "";
    });

    h.suite("gamma-invariants-under-action", trials, [&]() -> std::string {
        Rng rng(seed + 4);
        GammaGroup gamma = GammaGroup::make(qs2, 2, {{qs2.one(), qs2.zero()}, {qs2.zero(), qs2.theta()}});
        for (unsigned t = 0; t < trials; ++t) {
            BlockMatrix g = random_block_matrix(rng, qs2, 1, 1, lim);
            if (gamma_invariants(gamma_apply(g, gamma), 1, 1) != gamma_invariants(gamma, 1, 1))
                return "invariants moved along an orbit";
        }
        return "";
    });

    h.suite("mul-associativity", trials, [&]() -> std::string {
        Rng rng(seed + 5);
        for (unsigned t = 0; t < trials; ++t) {
            const Signature& sig = sigs[t % sigs.size()];
            WeylElement u = random_element(rng, sig, lim);
            WeylElement v = random_element(rng, sig, lim);
            WeylElement w = random_element(rng, sig, lim);
            if (op_mul(op_mul(u, v), w) != op_mul(u, op_mul(v, w))) return "associativity";
        }
        return "";
    });

    h.suite("jacobi", trials, [&]() -> std::string {
        Rng rng(seed + 6);
        for (unsigned t = 0; t < trials; ++t) {
            const Signature& sig = sigs[t % sigs.size()];
            WeylElement u = random_element(rng, sig, lim);
            WeylElement v = random_element(rng, sig, lim);
            WeylElement w = random_element(rng, sig, lim);
            if (!bracket(u, u).is_zero()) return "antisymmetry";
            WeylElement jac = bracket(u, bracket(v, w)) + bracket(v, bracket(w, u)) + bracket(w, bracket(u, v));
            if (!jac.is_zero()) return "jacobi";
        }
        return "";
    });

    h.suite("leibniz", trials, [&]() -> std::string {
        Rng rng(seed + 7);
        for (unsigned t = 0; t < trials; ++t) {
            const Signature& sig = sigs[t % sigs.size()];
            WeylElement u = random_element(rng, sig, lim);
            WeylElement v = random_element(rng, sig, lim);
            WeylElement w = random_element(rng, sig, lim);
            if (bracket(u, op_mul(v, w)) != op_mul(bracket(u, v), w) + op_mul(v, bracket(u, w)))
                return "leibniz";
        }
        return "";
    });

    h.suite("derivations-commute", trials, [&]() -> std::string {
        Rng rng(seed + 8);
        for (unsigned t = 0; t < trials; ++t) {
            const Signature& sig = sigs[t % sigs.size()];
            WeylElement a = random_a_element(rng, sig, lim);
            for (std::size_t p = 1; p <= sig.ell(); ++p)
                for (std::size_t r = 1; r <= sig.ell(); ++r)
                    if (derive(p, derive(r, a)) != derive(r, derive(p, a))) return "derivations do not commute";
        }
        return "";
    });

    h.suite("scalars-central", trials, [&]() -> std::string {
        Rng rng(seed + 9);
        for (unsigned t = 0; t < trials; ++t) {
            const Signature& sig = sigs[t % sigs.size()];
            WeylElement u = random_element(rng, sig, lim);
            WeylElement c = scalar_elem(sig, random_field_elem(rng, sig.field(), lim));
            if (!bracket(c, u).is_zero()) return "scalar not central";
        }
        return "";
    });

    h.suite("weyl-relations", trials, [&]() -> std::string {
        Rng rng(seed + 10);
        for (unsigned t = 0; t < trials; ++t) {
            const Signature& sig = sigs[t % sigs.size()];
            for (std::size_t p = 1; p <= sig.ell(); ++p)
                for (std::size_t qx = 1; qx <= sig.t_axes(); ++qx) {
                    WeylElement br = bracket(d_elem(sig, p), t_elem(sig, qx));
                    WeylElement want = p == qx ? one_elem(sig) : WeylElement(sig);
                    if (br != want) return "[d_p, t_q] != delta";
                }
            DerivationVector dv(sig.ell(), sig.field().zero());
            for (auto& e : dv) e = random_field_elem(rng, sig.field(), lim);
            IntVec alpha = random_alpha(rng, sig, lim.alpha_norm);
            WeylElement lhs = bracket(derivation_elem(sig, dv), x_elem(sig, alpha));
            WeylElement rhs = pairing(sig, dv, alpha) * x_elem(sig, alpha);
            if (lhs != rhs) return "[d, x^alpha] != <d,alpha> x^alpha";
        }
        return "";
    });

    h.suite("operator-oracle", trials, [&]() -> std::string {
        Rng rng(seed + 11);
        for (unsigned t = 0; t < trials; ++t) {
            const Signature& sig = sigs[t % sigs.size()];
            WeylElement u = random_element(rng, sig, lim);
            WeylElement v = random_element(rng, sig, lim);
            WeylElement a = random_a_element(rng, sig, lim);
            if (act_on_a(op_mul(u, v), a) != act_on_a(u, act_on_a(v, a))) return "operator composition";
        }
        return "";
    });

    h.suite("compare-total-order", trials, [&]() -> std::string {
        Rng rng(seed + 12);
        for (unsigned t = 0; t < trials; ++t) {
            MultiIndex a(3), b(3), c(3);
            for (int k = 0; k < 3; ++k) {
                a[k] = static_cast<unsigned>(rng.range(0, 3));
                b[k] = static_cast<unsigned>(rng.range(0, 3));
                c[k] = static_cast<unsigned>(rng.range(0, 3));
            }
            auto ab = compare_index(a, b);
            auto ba = compare_index(b, a);
            if (ab == std::strong_ordering::equal && a != b) return "false equality";
            if (ab == std::strong_ordering::less && ba != std::strong_ordering::greater) return "antisymmetry";
            if (compare_index(a, b) == std::strong_ordering::less &&
                compare_index(b, c) == std::strong_ordering::less &&
                compare_index(a, c) != std::strong_ordering::less)
                return "transitivity";
        }
        return "";
    });

    h.suite("dual-roundtrip", trials, [&]() -> std::string {
        Rng rng(seed + 13);
        for (unsigned t = 0; t < trials; ++t) {
            const Signature& sig = sigs[t % sigs.size()];
            if (sig.n() == 0) continue;
            std::vector<IntVec> chosen;
            for (unsigned attempt = 0; attempt < 50; ++attempt) {
                chosen.clear();
                for (std::size_t k = 0; k < sig.n(); ++k) chosen.push_back(random_alpha(rng, sig, 2));
                try {
                    dual_basis(sig, chosen);
                    break;
                } catch (const error&) {
                    chosen.clear();
                }
            }
            if (chosen.empty()) continue;
            DualBasis db = dual_basis(sig, chosen);
            WeylElement u = random_element(rng, sig, lim);
            if (from_dual(rewrite_in_dual(u, db), db) != u) return "dual basis round trip";
        }
        return "";
    });

    h.suite("print-parse-roundtrip", trials, [&]() -> std::string {
        Rng rng(seed + 14);
        for (unsigned t = 0; t < trials; ++t) {
            const Signature& sig = sigs[t % sigs.size()];
            WeylElement u = random_element(rng, sig, lim);
            if (parse_element(sig, to_string(u)) != u) return "print/parse mismatch: " + to_string(u);
        }
        return "";
    });

    h.suite("sigma-witnesses", trials, [&]() -> std::string {
        Rng rng(seed + 15);
        for (unsigned t = 0; t < trials; ++t) {
            std::size_t l2 = 1 + static_cast<std::size_t>(rng.below(2));
            std::size_t l3 = t % 2;
            NumberField f = q;
            std::size_t n = l2 + l3;
            Mat<FieldElement> id;
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<FieldElement> row(n, f.zero());
                row[i] = f.one();
                id.push_back(row);
            }
            GammaGroup gamma = GammaGroup::make(f, n, id);
            BlockMatrix g = random_block_matrix(rng, f, l2, l3, lim);
            GammaGroup gamma2 = gamma_apply(g, gamma);
            Signature a = Signature::make(1, l2, l3, f, gamma);
            Signature b = Signature::make(1, l2, l3, f, gamma2);
            SigmaMap s = build_sigma(g, a, b);
            SigmaReport rep = verify_sigma(s, 5, seed + t);
            if (!rep.ok) return rep.failure;
        }
        return "";
    });

    h.suite("equivalence-rational", trials, [&]() -> std::string {
        Rng rng(seed + 16);
        for (unsigned t = 0; t < trials; ++t) {
            std::size_t l2 = 1, l3 = t % 2;
            std::size_t n = l2 + l3;
            auto random_lattice = [&]() {
                while (true) {
                    Mat<FieldElement> gens(n, std::vector<FieldElement>(n, q.zero()));
                    for (auto& row : gens)
                        for (auto& e : row) e = q.from_rational(random_rational(rng, 3));
                    try {
                        return GammaGroup::make(q, n, gens);
                    } catch (const error&) {
                    }
                }
            };
            GammaGroup a = random_lattice();
            GammaGroup b = random_lattice();
            EquivalenceVerdict v = decide_equivalence(a, b, l2, l3, 2);
            if (v.kind != EquivalenceVerdict::Kind::equivalent) return "rational pair not decided equivalent";
            if (!verify_witness(*v.witness, a, b)) return "witness failed verification";
        }
        return "";
    });

    return h.results;
}

} // namespace weyl
