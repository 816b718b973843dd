#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "weyl/element.hpp"
#include "weyl/gamma.hpp"
#include "weyl/signature.hpp"

namespace weyl {

constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

// mt19937_64 is algorithmically pinned by the standard, so streams are
// byte-identical across platforms and runs.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    long below(long n) { return static_cast<long>(eng_() % static_cast<std::uint64_t>(n)); }
    long range(long lo, long hi) { return lo + below(hi - lo + 1); } // inclusive
    bool flip() { return (eng_() & 1) != 0; }

  private:
    std::mt19937_64 eng_;
};

struct GenLimits {
    unsigned max_terms = 3;
    unsigned max_degree = 3;  // cap on level(i) + level(mu) per term
    long alpha_norm = 2;      // cap on |Gamma coordinates|_1 per term
    long coeff_range = 3;     // numerators drawn from [-range, range]
    bool use_theta = true;    // mix th powers into coefficients when degree > 1
};

inline Rational random_rational(Rng& rng, long range, bool nonzero = false) {
    while (true) {
        long num = rng.range(-range, range);
        if (nonzero && num == 0) continue;
        long den = rng.range(1, 2);
        return make_rational(num, den);
    }
}

inline FieldElement random_field_elem(Rng& rng, const NumberField& field, const GenLimits& lim,
                                      bool nonzero = false) {
    while (true) {
        std::vector<Rational> c(field.degree(), Rational(0));
        c[0] = random_rational(rng, lim.coeff_range);
        if (lim.use_theta)
            for (std::size_t k = 1; k < c.size(); ++k)
                if (rng.below(2) == 0) c[k] = random_rational(rng, lim.coeff_range);
        FieldElement e = field.element(std::move(c));
        if (nonzero && e.is_zero()) continue;
        return e;
    }
}

inline IntVec random_alpha(Rng& rng, const Signature& sig, long norm) {
    IntVec a(sig.gamma().rank(), 0);
    long budget = norm;
    for (std::size_t k = 0; k < a.size() && budget > 0; ++k) {
        long v = rng.range(-budget, budget);
        a[k] = v;
        budget -= std::abs(v);
    }
    return a;
}

inline MultiIndex random_i_index(Rng& rng, const Signature& sig, unsigned budget) {
    MultiIndex i(sig.ell(), 0);
    for (std::size_t p = 0; p < sig.t_axes() && budget > 0; ++p) {
        unsigned v = static_cast<unsigned>(rng.range(0, budget));
        i[p] = v;
        budget -= v;
    }
    return i;
}

inline MultiIndex random_mu_index(Rng& rng, const Signature& sig, unsigned budget) {
    MultiIndex mu(sig.ell(), 0);
    for (std::size_t p = 0; p < sig.ell() && budget > 0; ++p) {
        unsigned v = static_cast<unsigned>(rng.range(0, budget));
        mu[p] = v;
        budget -= v;
    }
    return mu;
}

inline WeylElement random_element(Rng& rng, const Signature& sig, const GenLimits& lim = {}) {
    WeylElement u(sig);
    unsigned terms = static_cast<unsigned>(rng.range(1, lim.max_terms));
    for (unsigned t = 0; t < terms; ++t) {
        unsigned deg = static_cast<unsigned>(rng.range(0, lim.max_degree));
        unsigned ideg = static_cast<unsigned>(rng.range(0, deg));
        Monomial m{random_alpha(rng, sig, lim.alpha_norm), random_i_index(rng, sig, ideg),
                   random_mu_index(rng, sig, deg - ideg)};
        u.add_term(m, random_field_elem(rng, sig.field(), lim, true));
    }
    return u;
}

inline WeylElement random_nonzero_element(Rng& rng, const Signature& sig, const GenLimits& lim = {}) {
    while (true) {
        WeylElement u = random_element(rng, sig, lim);
        if (!u.is_zero()) return u;
    }
}

inline WeylElement random_a_element(Rng& rng, const Signature& sig, const GenLimits& lim = {}) {
    GenLimits l = lim;
    WeylElement u(sig);
    unsigned terms = static_cast<unsigned>(rng.range(1, l.max_terms));
    for (unsigned t = 0; t < terms; ++t) {
        unsigned deg = static_cast<unsigned>(rng.range(0, l.max_degree));
        Monomial m{random_alpha(rng, sig, l.alpha_norm), random_i_index(rng, sig, deg),
                   MultiIndex(sig.ell(), 0)};
        u.add_term(m, random_field_elem(rng, sig.field(), l, true));
    }
    return u;
}

inline Mat<FieldElement> random_invertible(Rng& rng, const NumberField& field, std::size_t n,
                                           const GenLimits& lim = {}) {
    while (true) {
        Mat<FieldElement> m(n, std::vector<FieldElement>(n, field.zero()));
        for (auto& row : m)
            for (auto& e : row) e = random_field_elem(rng, field, lim);
        if (n == 0 || mat_inverse(m, field.zero(), field.one())) return m;
    }
}

inline BlockMatrix random_block_matrix(Rng& rng, const NumberField& field, std::size_t l2, std::size_t l3,
                                       const GenLimits& lim = {}) {
    Mat<FieldElement> a = random_invertible(rng, field, l2, lim);
    Mat<FieldElement> c = random_invertible(rng, field, l3, lim);
    Mat<FieldElement> b(l3, std::vector<FieldElement>(l2, field.zero()));
    for (auto& row : b)
        for (auto& e : row) e = random_field_elem(rng, field, lim);
    return BlockMatrix(field, l2, l3, std::move(a), std::move(b), std::move(c));
}

} // namespace weyl
