#pragma once

#include <map>
#include <utility>
#include <vector>

#include "weyl/element.hpp"
#include "weyl/linalg.hpp"
#include "weyl/signature.hpp"

namespace weyl {

// Derivations d_{l1+1}..d_ell dual to chosen group elements, d_p = the plain
// axis derivation for p <= l1. Columns of `d_in_partial` express each d_q in
// the axis basis; `partial_in_d` is its inverse and performs the way back.
struct DualBasis {
    Signature sig;
    std::vector<IntVec> chosen;       // n group elements (coordinates in Gamma)
    Mat<FieldElement> d_in_partial;   // C = E^{-1}
    Mat<FieldElement> partial_in_d;   // E (rows: embeddings of the chosen elements)
};

inline DualBasis dual_basis(const Signature& sig, std::vector<IntVec> chosen) {
    const std::size_t n = sig.n();
    if (chosen.size() != n) throw error(errc::not_a_basis, "need exactly l2+l3 group elements");
    Mat<FieldElement> e;
    e.reserve(n);
    for (const auto& coords : chosen) e.push_back(sig.gamma().embed(coords));
    auto c = mat_inverse(e, sig.field().zero(), sig.field().one());
    if (!c) throw error(errc::not_a_basis, "chosen elements are F-linearly dependent");
    return DualBasis{sig, std::move(chosen), std::move(*c), std::move(e)};
}

// The derivation vector of d_q (1-based over all ell axes).
inline DerivationVector dual_derivation(const DualBasis& db, std::size_t q) {
    const Signature& sig = db.sig;
    DerivationVector dv(sig.ell(), sig.field().zero());
    if (q < 1 || q > sig.ell()) throw error(errc::axis_out_of_range, "dual axis out of range");
    if (q <= sig.l1()) {
        dv[q - 1] = sig.field().one();
    } else {
        const std::size_t col = q - sig.l1() - 1;
        for (std::size_t r = 0; r < sig.n(); ++r) dv[sig.l1() + r] = db.d_in_partial[r][col];
    }
    return dv;
}

// An element written in the commuting d^nu basis; the A part is untouched.
struct DualExpansion {
    Signature sig;
    std::map<Monomial, FieldElement> terms; // mu holds d exponents
};

namespace detail {

using SparsePoly = std::map<MultiIndex, FieldElement>; // exponents -> coefficient

inline SparsePoly poly_mul_sparse(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            FieldElement c = ca * cb;
            if (c.is_zero()) continue;
            MultiIndex e = index_add(ea, eb);
            auto it = r.find(e);
            if (it == r.end())
                r.emplace(std::move(e), std::move(c));
            else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.erase(it);
            }
        }
    return r;
}

// Expand prod_p (sum_q coef[q][p] y_q)^{mu_p} as a sparse polynomial in the
// commuting variables y_1..y_ell; axes p <= l1 map to themselves.
inline SparsePoly substitute_exponents(const Signature& sig, const Mat<FieldElement>& coef,
                                       const MultiIndex& mu) {
    SparsePoly acc{{MultiIndex(sig.ell(), 0), sig.field().one()}};
    for (std::size_t p = 0; p < sig.ell(); ++p) {
        if (mu[p] == 0) continue;
        SparsePoly lin;
        if (p < sig.l1()) {
            lin.emplace(unit_index(sig.ell(), p + 1), sig.field().one());
        } else {
            const std::size_t col = p - sig.l1();
            for (std::size_t q = 0; q < sig.n(); ++q) {
                if (coef[q][col].is_zero()) continue;
                lin.emplace(unit_index(sig.ell(), sig.l1() + q + 1), coef[q][col]);
            }
        }
        for (unsigned k = 0; k < mu[p]; ++k) acc = poly_mul_sparse(acc, lin);
    }
    return acc;
}

} // namespace detail

// Substitutes each axis derivation by its expression in the dual basis and
// expands multinomially (the d's commute). Inverse of from_dual.
inline DualExpansion rewrite_in_dual(const WeylElement& u, const DualBasis& db) {
    if (!u.sig().same_as(db.sig)) throw error(errc::signature_mismatch, "dual basis over a different algebra");
    DualExpansion out{db.sig, {}};
    for (const auto& [m, c] : u.terms()) {
        detail::SparsePoly poly = detail::substitute_exponents(db.sig, db.partial_in_d, m.mu);
        for (const auto& [expo, pc] : poly) {
            Monomial key{m.alpha, m.i, expo};
            FieldElement v = c * pc;
            auto it = out.terms.find(key);
            if (it == out.terms.end())
                out.terms.emplace(std::move(key), std::move(v));
            else {
                it->second = it->second + v;
                if (it->second.is_zero()) out.terms.erase(it);
            }
        }
    }
    return out;
}

inline WeylElement from_dual(const DualExpansion& e, const DualBasis& db) {
    WeylElement out(db.sig);
    for (const auto& [m, c] : e.terms) {
        detail::SparsePoly poly = detail::substitute_exponents(db.sig, db.d_in_partial, m.mu);
        for (const auto& [expo, pc] : poly) out.add_term(Monomial{m.alpha, m.i, expo}, c * pc);
    }
    return out;
}

} // namespace weyl
