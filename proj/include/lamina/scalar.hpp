#pragma once

#include "lamina/rational.hpp"

#include <iosfwd>
#include <string>

namespace lamina {

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_of(int cmp) {
    return cmp < 0 ? Sign::Negative : (cmp > 0 ? Sign::Positive : Sign::Zero);
}

/// An element a + b*sqrt(d) of a real quadratic field, with a, b rational and
/// d a square-free non-negative integer.  Canonical form: b == 0 forces d == 0,
/// and d is reduced square-free at construction (sqrt(12) becomes 2*sqrt(3)).
///
/// All comparisons are exact.  Field arithmetic mixing two distinct radicands
/// throws UnsupportedFieldError; pure order queries across radicands are still
/// decidable and exposed separately as order_mixed().
class QuadraticScalar {
public:
    QuadraticScalar() : a_(0), b_(0), d_(0) {}
    QuadraticScalar(const Rational& a) : a_(a), b_(0), d_(0) { a_.canonicalize(); }
    QuadraticScalar(long n) : a_(n), b_(0), d_(0) {}
    QuadraticScalar(const Rational& a, const Rational& b, const Integer& d);

    static QuadraticScalar sqrt_of(long d) { return QuadraticScalar(0, 1, d); }

    const Rational& rational_part() const { return a_; }
    const Rational& surd_coefficient() const { return b_; }
    const Integer& radicand() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return b_ == 0 && a_ == 0; }
    bool is_integer() const { return b_ == 0 && a_.get_den() == 1; }

    Sign sign() const;

    QuadraticScalar operator-() const { return QuadraticScalar(-a_, -b_, d_); }
    QuadraticScalar conjugate() const { return QuadraticScalar(a_, -b_, d_); }
    QuadraticScalar inverse() const;

    QuadraticScalar& operator+=(const QuadraticScalar& o);
    QuadraticScalar& operator-=(const QuadraticScalar& o);
    QuadraticScalar& operator*=(const QuadraticScalar& o);
    QuadraticScalar& operator/=(const QuadraticScalar& o);

    friend QuadraticScalar operator+(QuadraticScalar l, const QuadraticScalar& r) { return l += r; }
    friend QuadraticScalar operator-(QuadraticScalar l, const QuadraticScalar& r) { return l -= r; }
    friend QuadraticScalar operator*(QuadraticScalar l, const QuadraticScalar& r) { return l *= r; }
    friend QuadraticScalar operator/(QuadraticScalar l, const QuadraticScalar& r) { return l /= r; }

    /// Exact sign of (*this - o).  Requires a shared radicand or one rational
    /// side; otherwise throws UnsupportedFieldError.
    Sign compare(const QuadraticScalar& o) const;

    /// Exact order across different radicands.  Never a field operation:
    /// decides sign(a1 + b1*sqrt(d1) - a2 - b2*sqrt(d2)) by repeated squaring.
    static Sign order_mixed(const QuadraticScalar& x, const QuadraticScalar& y);

    bool operator==(const QuadraticScalar& o) const {
        return a_ == o.a_ && b_ == o.b_ && d_ == o.d_;
    }
    bool operator!=(const QuadraticScalar& o) const { return !(*this == o); }
    bool operator<(const QuadraticScalar& o) const { return compare(o) == Sign::Negative; }
    bool operator>(const QuadraticScalar& o) const { return compare(o) == Sign::Positive; }
    bool operator<=(const QuadraticScalar& o) const { return compare(o) != Sign::Positive; }
    bool operator>=(const QuadraticScalar& o) const { return compare(o) != Sign::Negative; }

    Integer floor() const;
    /// x - floor(x), in [0, 1)
    QuadraticScalar fractional_part() const;

    double to_double() const;   // rendering/diagnostics only
    std::string str() const;    // "a", "a+b*sqrt(d)" style

    /// Parse "1/2", "-3", "sqrt(5)", "1/2+1/2*sqrt(5)", "1-sqrt(2)" ...
    static QuadraticScalar parse(const std::string& text);

private:
    Rational a_, b_;
    Integer d_;
};

std::ostream& operator<<(std::ostream& os, const QuadraticScalar& s);

// sign(c*sqrt(e) - q), all exact; e >= 0
Sign sign_surd_minus_rational(const Rational& c, const Integer& e, const Rational& q);

} // namespace lamina
