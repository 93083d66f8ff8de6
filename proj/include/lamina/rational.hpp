#pragma once

#include <gmpxx.h>

#include <string>

namespace lamina {

using Integer  = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// floor(p/q) as an exact integer
Integer floor_rational(const Rational& r);

// largest n with n*n <= v (v >= 0)
Integer isqrt(const Integer& v);

inline bool is_perfect_square(const Integer& v) {
    if (v < 0) return false;
    Integer s = isqrt(v);
    return s * s == v;
}

// Parse "p" or "p/q" (optional sign). Throws ParseError on garbage.
Rational parse_rational(const std::string& text);

inline std::string to_string(const Rational& r) { return r.get_str(); }

} // namespace lamina
