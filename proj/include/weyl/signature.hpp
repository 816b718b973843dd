#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "weyl/error.hpp"
#include "weyl/gamma.hpp"
#include "weyl/numberfield.hpp"

namespace weyl {

// Exponent vector over the ell axes.
using MultiIndex = std::vector<unsigned>;

inline unsigned level(const MultiIndex& mu) {
    return std::accumulate(mu.begin(), mu.end(), 0u);
}

inline MultiIndex unit_index(std::size_t ell, std::size_t p /*1-based*/) {
    MultiIndex mu(ell, 0);
    mu[p - 1] = 1;
    return mu;
}

// Total order: level first, ties broken at the first differing axis.
inline std::strong_ordering compare_index(const MultiIndex& mu, const MultiIndex& nu) {
    if (mu.size() != nu.size()) throw error(errc::shape_mismatch, "multi-indices of different length");
    unsigned lm = level(mu), ln = level(nu);
    if (lm != ln) return lm <=> ln;
    for (std::size_t p = 0; p < mu.size(); ++p)
        if (mu[p] != nu[p]) return mu[p] <=> nu[p];
    return std::strong_ordering::equal;
}

inline MultiIndex index_add(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) r[p] = a[p] + b[p];
    return r;
}

inline MultiIndex index_sub(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) r[p] = a[p] - b[p];
    return r;
}

inline bool index_leq(const MultiIndex& a, const MultiIndex& b) {
    for (std::size_t p = 0; p < a.size(); ++p)
        if (a[p] > b[p]) return false;
    return true;
}

// The data (l1, l2, l3, field, Gamma) defining one algebra W. Handles are
// cheap copies; equality is structural so separately loaded signatures of
// the same algebra interoperate.
class Signature {
  public:
    static Signature make(std::size_t l1, std::size_t l2, std::size_t l3, const NumberField& field,
                          const GammaGroup& gamma) {
        if (l1 + l2 + l3 == 0) throw error(errc::shape_mismatch, "l1+l2+l3 must be positive");
        if (gamma.ambient_dim() != l2 + l3)
            throw error(errc::shape_mismatch, "Gamma lives in the wrong ambient dimension");
        if (!gamma.field().same_as(field)) throw error(errc::field_mismatch, "Gamma over a different field");
        return Signature(std::make_shared<const Rep>(Rep{l1, l2, l3, field, gamma}));
    }

    std::size_t l1() const { return rep_->l1; }
    std::size_t l2() const { return rep_->l2; }
    std::size_t l3() const { return rep_->l3; }
    std::size_t ell() const { return rep_->l1 + rep_->l2 + rep_->l3; }
    std::size_t n() const { return rep_->l2 + rep_->l3; }     // Gamma's ambient dimension
    std::size_t t_axes() const { return rep_->l1 + rep_->l2; } // axes carrying t variables

    const NumberField& field() const { return rep_->field; }
    const GammaGroup& gamma() const { return rep_->gamma; }

    bool same_as(const Signature& o) const {
        if (rep_ == o.rep_) return true;
        return l1() == o.l1() && l2() == o.l2() && l3() == o.l3() && field().same_as(o.field()) &&
               gamma().same_group(o.gamma());
    }

    bool same_tuple(const Signature& o) const {
        return l1() == o.l1() && l2() == o.l2() && l3() == o.l3();
    }

  private:
    struct Rep {
        std::size_t l1, l2, l3;
        NumberField field;
        GammaGroup gamma;
    };

    explicit Signature(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

    std::shared_ptr<const Rep> rep_;
};

} // namespace weyl
