#pragma once

#include <map>
#include <utility>
#include <vector>

#include "weyl/error.hpp"
#include "weyl/rational.hpp"
#include "weyl/signature.hpp"

namespace weyl {

// Basis monomial x^{alpha,i} d^mu. alpha is stored as integer coordinates in
// Gamma's Z-basis, which keeps group arithmetic exact and equality cheap.
struct Monomial {
    IntVec alpha;
    MultiIndex i;  // zero on the last l3 axes
    MultiIndex mu;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.alpha == b.alpha && a.i == b.i && a.mu == b.mu;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.alpha != b.alpha) return a.alpha < b.alpha;
        if (auto c = compare_index(a.i, b.i); c != 0) return c < 0;
        return compare_index(a.mu, b.mu) < 0;
    }
};

inline bool is_pure_a(const Monomial& m) { return level(m.mu) == 0; }

// Sparse F-linear combination of basis monomials; zero coefficients are
// never stored, so map equality is element equality.
class WeylElement {
  public:
    explicit WeylElement(Signature sig) : sig_(std::move(sig)) {}

    const Signature& sig() const { return sig_; }
    const std::map<Monomial, FieldElement>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_scalar() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        const Monomial& m = terms_.begin()->first;
        return level(m.i) == 0 && level(m.mu) == 0 && m.alpha == IntVec(m.alpha.size(), 0);
    }
    bool is_pure_a() const {
        for (const auto& [m, c] : terms_)
            if (level(m.mu) != 0) return false;
        return true;
    }

    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const FieldElement& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend bool operator==(const WeylElement& a, const WeylElement& b) {
        return a.sig_.same_as(b.sig_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }

    friend WeylElement operator+(const WeylElement& a, const WeylElement& b) {
        a.check_sig(b);
        WeylElement r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend WeylElement operator-(const WeylElement& a, const WeylElement& b) {
        a.check_sig(b);
        WeylElement r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend WeylElement operator-(const WeylElement& a) {
        WeylElement r(a.sig_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend WeylElement operator*(const FieldElement& s, const WeylElement& a) {
        WeylElement r(a.sig_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : a.terms_) r.add_term(m, s * c);
        return r;
    }
    friend WeylElement operator*(const Rational& s, const WeylElement& a) {
        return a.sig_.field().from_rational(s) * a;
    }

    void check_sig(const WeylElement& o) const {
        if (!sig_.same_as(o.sig_)) throw error(errc::signature_mismatch, "elements of different algebras");
    }

  private:
    Signature sig_;
    std::map<Monomial, FieldElement> terms_;
};

// ---------------------------------------------------------------------------
// Builders

inline Monomial make_monomial(const Signature& sig, IntVec alpha, MultiIndex i, MultiIndex mu) {
    if (alpha.size() != sig.gamma().rank()) throw error(errc::shape_mismatch, "alpha coordinate length");
    if (i.size() != sig.ell() || mu.size() != sig.ell()) throw error(errc::shape_mismatch, "index length != ell");
    for (std::size_t p = sig.t_axes(); p < sig.ell(); ++p)
        if (i[p] != 0) throw error(errc::shape_mismatch, "i must vanish on the last l3 axes");
    return Monomial{std::move(alpha), std::move(i), std::move(mu)};
}

inline WeylElement scalar_elem(const Signature& sig, const FieldElement& c) {
    WeylElement r(sig);
    r.add_term(Monomial{IntVec(sig.gamma().rank(), 0), MultiIndex(sig.ell(), 0), MultiIndex(sig.ell(), 0)}, c);
    return r;
}

inline WeylElement one_elem(const Signature& sig) { return scalar_elem(sig, sig.field().one()); }

inline WeylElement monomial_elem(const Signature& sig, const Monomial& m, const FieldElement& c) {
    WeylElement r(sig);
    r.add_term(m, c);
    return r;
}

inline WeylElement x_elem(const Signature& sig, IntVec alpha) {
    return monomial_elem(sig, make_monomial(sig, std::move(alpha), MultiIndex(sig.ell(), 0), MultiIndex(sig.ell(), 0)),
                         sig.field().one());
}

inline WeylElement t_elem(const Signature& sig, std::size_t k /*1-based*/) {
    if (k < 1 || k > sig.t_axes()) throw error(errc::axis_out_of_range, "t axis out of range");
    return monomial_elem(
        sig, make_monomial(sig, IntVec(sig.gamma().rank(), 0), unit_index(sig.ell(), k), MultiIndex(sig.ell(), 0)),
        sig.field().one());
}

inline WeylElement d_elem(const Signature& sig, std::size_t p /*1-based*/) {
    if (p < 1 || p > sig.ell()) throw error(errc::axis_out_of_range, "d axis out of range");
    return monomial_elem(
        sig, make_monomial(sig, IntVec(sig.gamma().rank(), 0), MultiIndex(sig.ell(), 0), unit_index(sig.ell(), p)),
        sig.field().one());
}

// ---------------------------------------------------------------------------
// Degree helpers

inline unsigned total_degree(const WeylElement& u) {
    unsigned deg = 0;
    for (const auto& [m, c] : u.terms()) deg = std::max(deg, level(m.i) + level(m.mu));
    return deg;
}

inline unsigned max_mu_level(const WeylElement& u) {
    unsigned deg = 0;
    for (const auto& [m, c] : u.terms()) deg = std::max(deg, level(m.mu));
    return deg;
}

inline Int max_alpha_norm1(const WeylElement& u) {
    Int best = 0;
    for (const auto& [m, c] : u.terms()) {
        Int s = 0;
        for (const auto& v : m.alpha) s += abs(v);
        if (s > best) best = s;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Semigroup product and derivations on the commutative part A

inline Monomial semigroup_mul(const Monomial& a, const Monomial& b) {
    if (!is_pure_a(a) || !is_pure_a(b)) throw error(errc::signature_mismatch, "semigroup product needs mu = 0");
    IntVec alpha(a.alpha.size());
    for (std::size_t k = 0; k < alpha.size(); ++k) alpha[k] = a.alpha[k] + b.alpha[k];
    return Monomial{std::move(alpha), index_add(a.i, b.i), a.mu};
}

// Product in A extended bilinearly.
inline WeylElement a_mul(const WeylElement& u, const WeylElement& v) {
    u.check_sig(v);
    if (!u.is_pure_a() || !v.is_pure_a()) throw error(errc::signature_mismatch, "A-product of non-A elements");
    WeylElement r(u.sig());
    for (const auto& [ma, ca] : u.terms())
        for (const auto& [mb, cb] : v.terms()) r.add_term(semigroup_mul(ma, mb), ca * cb);
    return r;
}

// F-coordinate of alpha on axis p (1-based over all ell axes; zero on the
// first l1 axes where alpha has no coordinates).
inline FieldElement alpha_coord(const Signature& sig, const IntVec& alpha, std::size_t p) {
    if (p <= sig.l1()) return sig.field().zero();
    FVec emb = sig.gamma().embed(alpha);
    return emb[p - sig.l1() - 1];
}

// d_p acting on a pure A element:
// x^{alpha,i} -> alpha_p x^{alpha,i} + i_p x^{alpha,i-1_[p]}, vanishing
// pieces dropped.
inline WeylElement derive(std::size_t p /*1-based*/, const WeylElement& a) {
    const Signature& sig = a.sig();
    if (p < 1 || p > sig.ell()) throw error(errc::axis_out_of_range, "derivation axis out of range");
    if (!a.is_pure_a()) throw error(errc::signature_mismatch, "derive expects a pure A element");
    WeylElement r(sig);
    for (const auto& [m, c] : a.terms()) {
        FieldElement ap = alpha_coord(sig, m.alpha, p);
        if (!ap.is_zero()) r.add_term(m, c * ap);
        if (m.i[p - 1] > 0) {
            Monomial lowered = m;
            lowered.i[p - 1] -= 1;
            r.add_term(lowered, c * Rational(m.i[p - 1]));
        }
    }
    return r;
}

// d^lambda applied to a pure A element (the axis derivations commute).
inline WeylElement derive_multi(const MultiIndex& lambda, const WeylElement& a) {
    WeylElement r = a;
    for (std::size_t p = 0; p < lambda.size(); ++p)
        for (unsigned k = 0; k < lambda[p] && !r.is_zero(); ++k) r = derive(p + 1, r);
    return r;
}

inline Int multi_binom(const MultiIndex& mu, const MultiIndex& lambda) {
    if (mu.size() != lambda.size()) throw error(errc::shape_mismatch, "multi-indices of different length");
    Int r = 1;
    for (std::size_t p = 0; p < mu.size(); ++p) {
        if (lambda[p] > mu[p]) return 0;
        r *= binomial(mu[p], lambda[p]);
    }
    return r;
}

// ---------------------------------------------------------------------------
// The associative product
//   u d^mu * v d^nu = sum_lambda (mu choose lambda) u d^lambda(v) d^{mu+nu-lambda},
// summed over the finite box lambda <= mu.

inline WeylElement op_mul(const WeylElement& u, const WeylElement& v) {
    u.check_sig(v);
    const Signature& sig = u.sig();
    WeylElement r(sig);
    for (const auto& [m1, c1] : u.terms()) {
        for (const auto& [m2, c2] : v.terms()) {
            const FieldElement cc = c1 * c2;
            WeylElement v_a = monomial_elem(sig, Monomial{m2.alpha, m2.i, MultiIndex(sig.ell(), 0)}, sig.field().one());
            MultiIndex lambda(sig.ell(), 0);
            while (true) {
                Int binom = multi_binom(m1.mu, lambda);
                WeylElement w = derive_multi(lambda, v_a);
                if (!w.is_zero()) {
                    MultiIndex mu_out = index_sub(index_add(m1.mu, m2.mu), lambda);
                    FieldElement scale = cc * Rational(binom);
                    for (const auto& [ma, caw] : w.terms()) {
                        IntVec alpha(m1.alpha.size());
                        for (std::size_t k = 0; k < alpha.size(); ++k) alpha[k] = m1.alpha[k] + ma.alpha[k];
                        r.add_term(Monomial{std::move(alpha), index_add(m1.i, ma.i), mu_out}, scale * caw);
                    }
                }
                // Next lambda in the box lambda <= m1.mu.
                std::size_t pos = 0;
                while (pos < lambda.size() && lambda[pos] == m1.mu[pos]) {
                    lambda[pos] = 0;
                    ++pos;
                }
                if (pos == lambda.size()) break;
                ++lambda[pos];
            }
        }
    }
    return r;
}

inline WeylElement bracket(const WeylElement& u, const WeylElement& v) {
    return op_mul(u, v) - op_mul(v, u);
}

// Pairing <d, alpha> = sum_{p > l1} a_p alpha_p.
using DerivationVector = std::vector<FieldElement>;

inline FieldElement pairing(const Signature& sig, const DerivationVector& dv, const IntVec& alpha) {
    if (dv.size() != sig.ell()) throw error(errc::shape_mismatch, "derivation vector length != ell");
    FVec emb = sig.gamma().embed(alpha);
    FieldElement acc = sig.field().zero();
    for (std::size_t p = sig.l1(); p < sig.ell(); ++p) acc = acc + dv[p] * emb[p - sig.l1()];
    return acc;
}

inline WeylElement derivation_elem(const Signature& sig, const DerivationVector& dv) {
    if (dv.size() != sig.ell()) throw error(errc::shape_mismatch, "derivation vector length != ell");
    WeylElement r(sig);
    for (std::size_t p = 0; p < sig.ell(); ++p)
        if (!dv[p].is_zero())
            r.add_term(make_monomial(sig, IntVec(sig.gamma().rank(), 0), MultiIndex(sig.ell(), 0),
                                     unit_index(sig.ell(), p + 1)),
                       dv[p]);
    return r;
}

// Independent realization of a Weyl element as an operator on A: apply d^mu,
// then multiply by x^{alpha,i} in the semigroup. Deliberately built from
// derive and semigroup_mul only, never from op_mul.
inline WeylElement act_on_a(const WeylElement& u, const WeylElement& a) {
    u.check_sig(a);
    if (!a.is_pure_a()) throw error(errc::signature_mismatch, "act_on_a expects a pure A element");
    const Signature& sig = u.sig();
    WeylElement r(sig);
    for (const auto& [m, c] : u.terms()) {
        WeylElement w = derive_multi(m.mu, a);
        if (w.is_zero()) continue;
        Monomial shift{m.alpha, m.i, MultiIndex(sig.ell(), 0)};
        for (const auto& [ma, ca] : w.terms()) r.add_term(semigroup_mul(shift, ma), c * ca);
    }
    return r;
}

// Homogeneous components along the Gamma grading.
inline std::vector<std::pair<IntVec, WeylElement>> alpha_components(const WeylElement& u) {
    std::map<IntVec, WeylElement> buckets;
    for (const auto& [m, c] : u.terms()) {
        auto it = buckets.find(m.alpha);
        if (it == buckets.end()) it = buckets.emplace(m.alpha, WeylElement(u.sig())).first;
        it->second.add_term(m, c);
    }
    return {buckets.begin(), buckets.end()};
}

} // namespace weyl
