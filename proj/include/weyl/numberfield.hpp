#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "weyl/error.hpp"
#include "weyl/rational.hpp"

namespace weyl {

class FieldElement;

// Polynomial remainder of `poly` modulo the monic polynomial `minpoly`,
// both in ascending-degree coefficient order.
inline std::vector<Rational> reduce_mod(std::vector<Rational> poly,
                                        const std::vector<Rational>& minpoly) {
    const std::size_t d = minpoly.size() - 1;
    while (poly.size() > d) {
        Rational lead = poly.back();
        std::size_t k = poly.size() - 1;
        poly.pop_back();
        if (lead == 0) continue;
        for (std::size_t j = 0; j < d; ++j) poly[k - d + j] -= lead * minpoly[j];
    }
    poly.resize(d, Rational(0));
    return poly;
}

namespace detail {

// All monic rational roots p/q of an integer polynomial, p | c0, q | cn.
// Trial-division divisor enumeration; exact and complete.
inline bool has_rational_root(const std::vector<Int>& c) {
    const std::size_t n = c.size() - 1;
    if (c[0] == 0) return true; // x divides
    auto divisors = [](Int v) {
        std::vector<Int> ds;
        v = abs(v);
        for (Int i = 1; i * i <= v; ++i) {
            if (v % i == 0) {
                ds.push_back(i);
                if (i * i != v) ds.push_back(v / i);
            }
        }
        return ds;
    };
    const std::vector<Int> ps = divisors(c[0]);
    const std::vector<Int> qs = divisors(c[n]);
    for (const Int& p : ps) {
        for (const Int& q : qs) {
            if (gcd(p, q) != 1) continue;
            for (int sign : {1, -1}) {
                Rational r = make_rational(sign * p, q);
                Rational acc(0);
                for (std::size_t k = c.size(); k-- > 0;) acc = acc * r + Rational(c[k]);
                if (acc == 0) return true;
            }
        }
    }
    return false;
}

} // namespace detail

// The coefficient field F = Q or F = Q(th) for a monic minimal polynomial.
// Handles are cheap to copy and structurally comparable: two handles denote
// the same field iff their minimal polynomials coincide.
class NumberField {
  public:
    static NumberField rationals() { return make({Rational(0), Rational(1)}); }

    static NumberField make(std::vector<Rational> minpoly) {
        if (minpoly.size() < 2) throw error(errc::not_monic, "minpoly must have degree >= 1");
        if (minpoly.back() != 1) throw error(errc::not_monic, "leading coefficient must be 1");
        const std::size_t d = minpoly.size() - 1;
        bool checked = true;
        if (d >= 2) {
            Int den(1);
            for (const auto& q : minpoly) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
            std::vector<Int> ic;
            ic.reserve(minpoly.size());
            for (const auto& q : minpoly) {
                Rational s = q * Rational(den);
                ic.push_back(s.get_num());
            }
            if (detail::has_rational_root(ic))
                throw error(errc::rational_root_found, "minpoly has a rational root");
            // No rational root settles degrees 2 and 3 only.
            checked = d <= 3;
        }
        auto rep = std::make_shared<const Rep>(Rep{std::move(minpoly), checked});
        return NumberField(std::move(rep));
    }

    std::size_t degree() const { return rep_->minpoly.size() - 1; }
    const std::vector<Rational>& minpoly() const { return rep_->minpoly; }
    bool irreducibility_checked() const { return rep_->checked; }
    bool is_rational_field() const { return degree() == 1; }

    bool same_as(const NumberField& o) const {
        return rep_ == o.rep_ || rep_->minpoly == o.rep_->minpoly;
    }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_rational(const Rational& q) const;
    FieldElement from_int(long v) const;
    FieldElement theta() const;
    FieldElement element(std::vector<Rational> coords) const;

  private:
    struct Rep {
        std::vector<Rational> minpoly; // ascending degree, monic
        bool checked;
    };

    explicit NumberField(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

    std::shared_ptr<const Rep> rep_;
};

// An element of F as its coordinate vector in powers of th (length = degree).
// Values are immutable; every operation returns a reduced, canonical result.
class FieldElement {
  public:
    FieldElement(NumberField field, std::vector<Rational> coords)
        : field_(std::move(field)), c_(std::move(coords)) {
        if (c_.size() != field_.degree())
            throw error(errc::field_mismatch, "coordinate vector length != field degree");
    }

    const NumberField& field() const { return field_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& q : c_)
            if (q != 0) return false;
        return true;
    }
    bool is_one() const {
        if (c_[0] != 1) return false;
        for (std::size_t k = 1; k < c_.size(); ++k)
            if (c_[k] != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t k = 1; k < c_.size(); ++k)
            if (c_[k] != 0) return false;
        return true;
    }
    const Rational& rational_value() const {
        if (!is_rational()) throw error(errc::internal, "element is not rational");
        return c_[0];
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_.same_as(b.field_) && a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    friend FieldElement operator-(const FieldElement& a) {
        std::vector<Rational> r(a.c_.size());
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = -a.c_[k];
        return FieldElement(a.field_, std::move(r));
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_field(b);
        std::vector<Rational> r(a.c_.size());
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.c_[k] + b.c_[k];
        return FieldElement(a.field_, std::move(r));
    }

    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check_field(b);
        std::vector<Rational> r(a.c_.size());
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.c_[k] - b.c_[k];
        return FieldElement(a.field_, std::move(r));
    }

    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_field(b);
        const std::size_t d = a.c_.size();
        std::vector<Rational> prod(2 * d - 1, Rational(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (b.c_[j] == 0) continue;
                prod[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return FieldElement(a.field_, reduce_mod(std::move(prod), a.field_.minpoly()));
    }

    friend FieldElement operator*(const FieldElement& a, const Rational& s) {
        std::vector<Rational> r(a.c_.size());
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.c_[k] * s;
        return FieldElement(a.field_, std::move(r));
    }
    friend FieldElement operator*(const Rational& s, const FieldElement& a) { return a * s; }

    FieldElement inverse() const {
        if (is_zero()) throw error(errc::division_by_zero, "inverse of zero");
        // Extended gcd of the representing polynomial with the minpoly.
        std::vector<Rational> r0 = field_.minpoly();
        std::vector<Rational> r1 = c_;
        trim(r1);
        std::vector<Rational> s0{}, s1{Rational(1)}; // cofactors of this element
        while (true) {
            trim(r1);
            if (r1.empty()) throw error(errc::internal, "gcd(element, minpoly) not a unit; minpoly is reducible");
            if (r1.size() == 1) break;
            auto [q, rem] = poly_divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(rem);
            std::vector<Rational> s2 = poly_sub(s0, poly_mul(q, s1));
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        const Rational unit = r1[0];
        std::vector<Rational> inv = s1;
        for (auto& q : inv) q /= unit;
        return FieldElement(field_, reduce_mod(std::move(inv), field_.minpoly()));
    }

    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        a.check_field(b);
        return a * b.inverse();
    }

    FieldElement pow(unsigned long e) const {
        FieldElement base = *this;
        FieldElement acc = field_.one();
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

  private:
    void check_field(const FieldElement& o) const {
        if (!field_.same_as(o.field_)) throw error(errc::field_mismatch, "elements of different fields");
    }

    static void trim(std::vector<Rational>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    }

    static std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    }

    static std::vector<Rational> poly_sub(const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> r(std::max(a.size(), b.size()), Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        trim(r);
        return r;
    }

    static std::pair<std::vector<Rational>, std::vector<Rational>>
    poly_divmod(std::vector<Rational> num, const std::vector<Rational>& den) {
        trim(num);
        std::vector<Rational> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rational(0));
        while (num.size() >= den.size()) {
            Rational f = num.back() / den.back();
            std::size_t shift = num.size() - den.size();
            quot[shift] = f;
            for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= f * den[i];
            trim(num); // leading term cancels, so the degree strictly drops
        }
        return {quot, num};
    }

    NumberField field_;
    std::vector<Rational> c_;
};

inline FieldElement NumberField::zero() const {
    return FieldElement(*this, std::vector<Rational>(degree(), Rational(0)));
}

inline FieldElement NumberField::one() const { return from_rational(Rational(1)); }

inline FieldElement NumberField::from_rational(const Rational& q) const {
    std::vector<Rational> c(degree(), Rational(0));
    c[0] = q;
    return FieldElement(*this, std::move(c));
}

inline FieldElement NumberField::from_int(long v) const { return from_rational(Rational(v)); }

inline FieldElement NumberField::theta() const {
    std::vector<Rational> x(degree() + 1, Rational(0));
    if (x.size() >= 2) x[1] = 1;
    return FieldElement(*this, reduce_mod(std::move(x), minpoly()));
}

inline FieldElement NumberField::element(std::vector<Rational> coords) const {
    return FieldElement(*this, std::move(coords));
}

// Renders `1/2 + 3*th`, `-th^2`, `0`, ... matching the expression grammar.
// With spaced=false the same string without blanks (used in witness output).
inline std::string to_string(const FieldElement& a, bool spaced = true) {
    const auto& c = a.coords();
    std::string out;
    const char* plus = spaced ? " + " : "+";
    const char* minus = spaced ? " - " : "-";
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        Rational v = c[k];
        bool neg = v < 0;
        if (neg) v = -v;
        std::string mag;
        if (k == 0) {
            mag = to_string(v);
        } else {
            std::string power = (k == 1) ? "th" : "th^" + std::to_string(k);
            mag = (v == 1) ? power : to_string(v) + "*" + power;
        }
        if (out.empty())
            out = (neg ? "-" : "") + mag;
        else
            out += (neg ? minus : plus) + mag;
    }
    return out.empty() ? "0" : out;
}

} // namespace weyl
