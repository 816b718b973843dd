#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weyl/element.hpp"
#include "weyl/equivalence.hpp"
#include "weyl/random_gen.hpp"

namespace weyl {

// Isomorphism W -> W' induced by a witness g. Stored by generator images
// only; images of composite monomials are recomputed on demand through the
// extension formula, so every application stays exact.
struct SigmaMap {
    Signature source, target;
    BlockMatrix g;
    std::vector<DerivationVector> dbar; // images of d_1..d_ell as target derivations
    std::vector<WeylElement> t_images;  // images of t_1..t_{l1+l2} as target A elements
};

// tau: alpha -> alpha g^{-1}, in target coordinates.
inline IntVec tau_coords(const SigmaMap& s, const IntVec& alpha) {
    FVec image = s.g.apply(s.source.gamma().embed(alpha));
    auto coords = s.target.gamma().member(image);
    if (!coords) throw error(errc::internal, "tau image escaped the target group");
    return *coords;
}

namespace detail {

inline WeylElement apply_derivation(const Signature& sig, const DerivationVector& dv, const WeylElement& a) {
    WeylElement r(sig);
    for (std::size_t p = 0; p < sig.ell(); ++p) {
        if (dv[p].is_zero()) continue;
        r = r + dv[p] * derive(p + 1, a);
    }
    return r;
}

} // namespace detail

inline SigmaMap build_sigma(const BlockMatrix& g, const Signature& source, const Signature& target) {
    if (!source.same_tuple(target)) throw error(errc::tuple_mismatch, "(l1,l2,l3) differ");
    if (!source.field().same_as(target.field())) throw error(errc::field_mismatch, "different coefficient fields");
    if (g.l2() != source.l2() || g.l3() != source.l3())
        throw error(errc::shape_mismatch, "witness blocks do not match (l2,l3)");
    if (!verify_witness(g, source.gamma(), target.gamma()))
        throw error(errc::witness_invalid, "g does not map Gamma onto Gamma'");

    const std::size_t l1 = source.l1();
    const std::size_t ell = source.ell();
    const NumberField& field = source.field();

    // (dbar_1..dbar_ell) = (d'_1..d'_ell) (I_{l1} 0; 0 g)
    std::vector<DerivationVector> dbar;
    dbar.reserve(ell);
    for (std::size_t p = 0; p < ell; ++p) {
        DerivationVector dv(ell, field.zero());
        if (p < l1) {
            dv[p] = field.one();
        } else {
            const std::size_t j = p - l1;
            for (std::size_t k = 0; k < source.n(); ++k) dv[l1 + k] = g.full()[k][j];
        }
        dbar.push_back(std::move(dv));
    }

    // (sigma(t_1)..sigma(t_{l1+l2})) = (t'_1..t'_{l1+l2}) (I_{l1} 0; 0 (A^t)^{-1})
    std::vector<WeylElement> t_images;
    t_images.reserve(source.t_axes());
    Mat<FieldElement> at(source.l2(), std::vector<FieldElement>(source.l2(), field.zero()));
    {
        Mat<FieldElement> a = g.block_a();
        for (std::size_t i = 0; i < source.l2(); ++i)
            for (std::size_t j = 0; j < source.l2(); ++j) at[i][j] = a[j][i];
    }
    std::optional<Mat<FieldElement>> at_inv;
    if (source.l2() > 0) {
        at_inv = mat_inverse(at, field.zero(), field.one());
        if (!at_inv) throw error(errc::internal, "A^t not invertible despite invertible A");
    }
    for (std::size_t q = 0; q < source.t_axes(); ++q) {
        if (q < l1) {
            t_images.push_back(t_elem(target, q + 1));
        } else {
            const std::size_t j = q - l1;
            WeylElement img(target);
            for (std::size_t k = 0; k < source.l2(); ++k) {
                FieldElement coef = (*at_inv)[k][j];
                if (!coef.is_zero()) img = img + coef * t_elem(target, l1 + k + 1);
            }
            t_images.push_back(std::move(img));
        }
    }

    SigmaMap s{source, target, g, std::move(dbar), std::move(t_images)};

    // Generator identities: sigma(d_p)(sigma(t_q)) = delta_{p,q} and
    // sigma(d_p)(sigma(x^alpha)) = sigma(d_p(x^alpha)) on the basis of Gamma.
    for (std::size_t p = 1; p <= ell; ++p) {
        for (std::size_t q = 1; q <= source.t_axes(); ++q) {
            WeylElement got = detail::apply_derivation(target, s.dbar[p - 1], s.t_images[q - 1]);
            WeylElement want = (p == q) ? one_elem(target) : WeylElement(target);
            if (got != want) throw error(errc::generator_check_failed, "sigma(d_p)(sigma(t_q)) != delta");
        }
        for (std::size_t k = 0; k < source.gamma().rank(); ++k) {
            IntVec alpha(source.gamma().rank(), 0);
            alpha[k] = 1;
            FieldElement lhs = pairing(target, s.dbar[p - 1], tau_coords(s, alpha));
            FieldElement rhs = alpha_coord(source, alpha, p);
            if (lhs != rhs) throw error(errc::generator_check_failed, "pairing mismatch on a basis element");
        }
    }
    return s;
}

inline WeylElement sigma_x_image(const SigmaMap& s, const IntVec& alpha) {
    return x_elem(s.target, tau_coords(s, alpha));
}

inline WeylElement sigma_d_image(const SigmaMap& s, std::size_t p /*1-based*/) {
    return derivation_elem(s.target, s.dbar[p - 1]);
}

// Linear extension: sigma(x^{alpha,i} d^mu) =
//   sigma(x^alpha) prod_q sigma(t_q)^{i_q} prod_p sigma(d_p)^{mu_p}.
inline WeylElement apply_sigma(const SigmaMap& s, const WeylElement& u) {
    if (!u.sig().same_as(s.source)) throw error(errc::signature_mismatch, "element not in the source algebra");
    WeylElement out(s.target);
    for (const auto& [m, c] : u.terms()) {
        WeylElement acc = sigma_x_image(s, m.alpha);
        for (std::size_t q = 0; q < s.source.t_axes(); ++q)
            for (unsigned k = 0; k < m.i[q]; ++k) acc = op_mul(acc, s.t_images[q]);
        for (std::size_t p = 0; p < s.source.ell(); ++p) {
            if (m.mu[p] == 0) continue;
            WeylElement dp = sigma_d_image(s, p + 1);
            for (unsigned k = 0; k < m.mu[p]; ++k) acc = op_mul(acc, dp);
        }
        out = out + c * acc;
    }
    return out;
}

struct SigmaReport {
    bool ok = true;
    unsigned trials = 0;
    std::string failure; // empty when ok
};

// Randomized exact checks: multiplicativity, bracket preservation, and the
// factorization of mixed monomial images over the first l1 axes.
inline SigmaReport verify_sigma(const SigmaMap& s, unsigned trials, std::uint64_t seed = kDefaultSeed) {
    SigmaReport rep;
    rep.trials = trials;
    Rng rng(seed);
    GenLimits lim;
    lim.max_terms = 2;
    lim.max_degree = 2;
    lim.alpha_norm = 2;
    lim.coeff_range = 2;

    for (unsigned t = 0; t < trials; ++t) {
        WeylElement u = random_element(rng, s.source, lim);
        WeylElement v = random_element(rng, s.source, lim);
        if (apply_sigma(s, op_mul(u, v)) != op_mul(apply_sigma(s, u), apply_sigma(s, v))) {
            rep.ok = false;
            rep.failure = "multiplicativity failed at trial " + std::to_string(t);
            return rep;
        }
        if (apply_sigma(s, bracket(u, v)) != bracket(apply_sigma(s, u), apply_sigma(s, v))) {
            rep.ok = false;
            rep.failure = "bracket preservation failed at trial " + std::to_string(t);
            return rep;
        }

        // Image factorization over the first l1 axes: i in J12, j/mu in J11.
        const Signature& src = s.source;
        IntVec alpha = random_alpha(rng, src, lim.alpha_norm);
        MultiIndex i(src.ell(), 0), j(src.ell(), 0), mu(src.ell(), 0);
        for (std::size_t p = src.l1(); p < src.t_axes(); ++p) i[p] = static_cast<unsigned>(rng.range(0, 2));
        for (std::size_t p = 0; p < src.l1(); ++p) {
            j[p] = static_cast<unsigned>(rng.range(0, 2));
            mu[p] = static_cast<unsigned>(rng.range(0, 2));
        }
        WeylElement lhs = apply_sigma(s, monomial_elem(src, Monomial{alpha, index_add(i, j), mu}, src.field().one()));
        WeylElement rhs = apply_sigma(s, monomial_elem(src, Monomial{alpha, i, MultiIndex(src.ell(), 0)},
                                                       src.field().one()));
        for (std::size_t p = 0; p < src.l1(); ++p)
            for (unsigned k = 0; k < j[p]; ++k) rhs = op_mul(rhs, s.t_images[p]);
        for (std::size_t p = 0; p < src.l1(); ++p) {
            if (mu[p] == 0) continue;
            WeylElement dp = sigma_d_image(s, p + 1);
            for (unsigned k = 0; k < mu[p]; ++k) rhs = op_mul(rhs, dp);
        }
        if (lhs != rhs) {
            rep.ok = false;
            rep.failure = "mixed-monomial factorization failed at trial " + std::to_string(t);
            return rep;
        }
    }
    return rep;
}

struct IsoVerdict {
    enum class Kind { isomorphic, not_isomorphic, undecided };

    Kind kind;
    std::optional<SigmaMap> sigma; // isomorphic
    std::string invariant;         // not_isomorphic: certificate name
    std::string lhs, rhs;
    unsigned radius = 0;
};

inline std::string tuple_string(const Signature& s) {
    return "(" + std::to_string(s.l1()) + "," + std::to_string(s.l2()) + "," + std::to_string(s.l3()) + ")";
}

// Tuple equality is necessary; beyond it the question reduces to the group
// equivalence decision, and an Equivalent verdict is upgraded to a checked
// isomorphism. NotIsomorphic is only ever certificate-backed.
inline IsoVerdict decide_isomorphism(const Signature& a, const Signature& b, unsigned radius) {
    if (!a.same_tuple(b))
        return IsoVerdict{IsoVerdict::Kind::not_isomorphic, std::nullopt, "tuple", tuple_string(a), tuple_string(b), 0};
    EquivalenceVerdict v = decide_equivalence(a.gamma(), b.gamma(), a.l2(), a.l3(), radius);
    switch (v.kind) {
    case EquivalenceVerdict::Kind::equivalent: {
        SigmaMap s = build_sigma(*v.witness, a, b);
        return IsoVerdict{IsoVerdict::Kind::isomorphic, std::move(s), "", "", "", 0};
    }
    case EquivalenceVerdict::Kind::inequivalent:
        return IsoVerdict{IsoVerdict::Kind::not_isomorphic, std::nullopt, v.invariant, v.lhs, v.rhs, 0};
    case EquivalenceVerdict::Kind::undecided:
    default:
        return IsoVerdict{IsoVerdict::Kind::undecided, std::nullopt, "", "", "", v.radius};
    }
}

} // namespace weyl
