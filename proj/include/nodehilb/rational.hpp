#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nodehilb {

// Arbitrary-precision rationals. GMP keeps every result of the arithmetic
// operators in canonical form (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw std::domain_error("make_rational: zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline bool is_canonical(const Rational& r)
{
    if (sgn(r.get_den()) <= 0) {
        return false;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return g == 1;
}

/// "p/q" for non-integers, "p" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer factorial(std::uint32_t n)
{
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

inline Integer binomial(std::uint64_t n, std::uint64_t k)
{
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

// a (a-1) ... (a-k+1); zero when k > a.
inline Integer falling_factorial(std::uint32_t a, std::uint32_t k)
{
    if (k > a) {
        return 0;
    }
    Integer out = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        out *= a - i;
    }
    return out;
}

} // namespace nodehilb
