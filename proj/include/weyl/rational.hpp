#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace weyl {

// Exact arbitrary-precision integers and rationals (GMP). All arithmetic in
// the library is exact; there is no floating point anywhere.
using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Int& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Int binomial(unsigned n, unsigned k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// lcm of all denominators; 1 for an empty range.
inline Int common_denominator(const std::vector<Rational>& qs) {
    Int d = 1;
    for (const auto& q : qs) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den().get_mpz_t());
    return d;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

} // namespace weyl
