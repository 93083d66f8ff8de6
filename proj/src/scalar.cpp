#include "lamina/scalar.hpp"

#include "lamina/errors.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace lamina {

namespace {

// Pull square factors out of d: d = k^2 * d' with d' square-free.
// Trial division is fine at the radicand sizes scenarios use.
void square_free_reduce(Integer& d, Integer& k) {
    k = 1;
    if (d <= 1) return;
    Integer rest = d, p = 2;
    Integer reduced = 1;
    while (p * p <= rest) {
        int e = 0;
        while (rest % p == 0) { rest /= p; ++e; }
        if (e) {
            for (int i = 0; i + 1 < e; i += 2) k *= p;
            if (e % 2) reduced *= p;
        }
        p += (p == 2) ? 1 : 2;
    }
    reduced *= rest;
    d = reduced;
}

} // namespace

QuadraticScalar::QuadraticScalar(const Rational& a, const Rational& b, const Integer& d)
    : a_(a), b_(b), d_(d) {
    a_.canonicalize();
    b_.canonicalize();
    if (d_ < 0) throw Error("negative radicand");
    if (b_ == 0) { d_ = 0; return; }
    if (d_ == 0) { b_ = 0; return; }
    Integer k;
    square_free_reduce(d_, k);
    if (k != 1) b_ *= Rational(k);
    if (d_ == 1) { a_ += b_; b_ = 0; d_ = 0; }
}

Sign sign_surd_minus_rational(const Rational& c, const Integer& e, const Rational& q) {
    // sign(c*sqrt(e) - q)
    int cs = sgn(c), qs = sgn(q);
    if (e == 0 || cs == 0) return sign_of(-qs);
    if (qs <= 0 && cs > 0) return (qs < 0 || cs > 0) ? Sign::Positive : Sign::Zero;
    if (qs >= 0 && cs < 0) return Sign::Negative;
    if (qs < 0 && cs < 0) {
        // both negative: sign(|q| - |c|sqrt(e))
        Rational l = q * q, r = c * c * Rational(e);
        return sign_of(cmp(l, r));
    }
    // both positive: compare c^2 e with q^2
    Rational l = c * c * Rational(e), r = q * q;
    return sign_of(cmp(l, r));
}

Sign QuadraticScalar::sign() const {
    if (b_ == 0) return sign_of(sgn(a_));
    return sign_surd_minus_rational(b_, d_, -a_);
}

QuadraticScalar QuadraticScalar::inverse() const {
    if (is_zero()) throw Error("division by zero");
    if (b_ == 0) return QuadraticScalar(1 / a_);
    // 1/(a+b√d) = (a-b√d)/(a²-b²d); the norm is nonzero since √d is irrational
    Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
    return QuadraticScalar(a_ / norm, -b_ / norm, d_);
}

QuadraticScalar& QuadraticScalar::operator+=(const QuadraticScalar& o) {
    if (b_ != 0 && o.b_ != 0 && d_ != o.d_)
        throw UnsupportedFieldError("cannot add sqrt(" + d_.get_str() + ") and sqrt(" + o.d_.get_str() + ") terms");
    a_ += o.a_;
    b_ += o.b_;
    if (b_ == 0) d_ = 0;
    else if (d_ == 0) d_ = o.d_;
    return *this;
}

QuadraticScalar& QuadraticScalar::operator-=(const QuadraticScalar& o) {
    return *this += -o;
}

QuadraticScalar& QuadraticScalar::operator*=(const QuadraticScalar& o) {
    if (b_ != 0 && o.b_ != 0 && d_ != o.d_)
        throw UnsupportedFieldError("cannot multiply across radicands " + d_.get_str() + " and " + o.d_.get_str());
    Integer d = (b_ != 0) ? d_ : o.d_;
    Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d);
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = a;
    b_ = b;
    d_ = (b == 0) ? Integer(0) : d;
    return *this;
}

QuadraticScalar& QuadraticScalar::operator/=(const QuadraticScalar& o) {
    return *this *= o.inverse();
}

Sign QuadraticScalar::compare(const QuadraticScalar& o) const {
    if (b_ != 0 && o.b_ != 0 && d_ != o.d_)
        throw UnsupportedFieldError("comparison across radicands " + d_.get_str() + " and " + o.d_.get_str() +
                                    " (use order_mixed for pure ordering)");
    QuadraticScalar diff = *this;
    diff -= o;
    return diff.sign();
}

Sign QuadraticScalar::order_mixed(const QuadraticScalar& x, const QuadraticScalar& y) {
    if (x.b_ == 0 || y.b_ == 0 || x.d_ == y.d_) return x.compare(y);
    // sign of (a1-a2) + b1√d1 - b2√d2, distinct square-free d1, d2 > 1.
    // Compare b1√d1 against q + b2√d2 where q = a2 - a1.
    Rational q = y.a_ - x.a_;
    const Rational& b1 = x.b_;
    const Rational& b2 = y.b_;
    Sign lhs_sign = sign_surd_minus_rational(b1, x.d_, Rational(0));
    Sign rhs_sign = sign_surd_minus_rational(b2, y.d_, -q);
    if (lhs_sign != rhs_sign) {
        if (lhs_sign == Sign::Zero) return rhs_sign == Sign::Positive ? Sign::Negative : Sign::Positive;
        if (rhs_sign == Sign::Zero) return lhs_sign;
        return lhs_sign;
    }
    if (lhs_sign == Sign::Zero) return Sign::Zero;
    // Same nonzero sign: compare squares, possibly flipping for negatives.
    // (b1√d1)² = b1²d1 ; (q + b2√d2)² = q² + b2²d2 + 2 q b2 √d2
    Rational l = b1 * b1 * Rational(x.d_);
    Rational r = q * q + b2 * b2 * Rational(y.d_);
    // sign(l - r - 2 q b2 √d2) = -sign(2 q b2 √d2 - (l - r))
    Sign sq = sign_surd_minus_rational(2 * q * b2, y.d_, l - r);
    Sign mag = (sq == Sign::Zero) ? Sign::Zero
                                  : (sq == Sign::Positive ? Sign::Negative : Sign::Positive);
    // equality of distinct-field irrationals is impossible, but the algebra
    // above already yields Zero only when the values coincide as reals
    if (lhs_sign == Sign::Negative && mag != Sign::Zero)
        mag = (mag == Sign::Positive) ? Sign::Negative : Sign::Positive;
    return mag;
}

Integer QuadraticScalar::floor() const {
    if (b_ == 0) return floor_rational(a_);
    // x = (A + B√d)/Q over a common positive denominator Q
    Integer qa = a_.get_den(), qb = b_.get_den();
    Integer Q = qa * qb;
    Integer A = a_.get_num() * qb;
    Integer B = b_.get_num() * qa;
    // S = floor(B√d)
    Integer s2 = B * B * d_;
    Integer root = isqrt(s2);
    Integer S;
    if (B >= 0) S = root;
    else if (root * root == s2) S = -root;
    else S = -root - 1;
    Integer cand;
    mpz_fdiv_q(cand.get_mpz_t(), Integer(A + S).get_mpz_t(), Q.get_mpz_t());
    // true floor is cand or cand+1; settle by one exact comparison
    QuadraticScalar next(Rational(cand + 1));
    if (compare(next) != Sign::Negative) return cand + 1;
    return cand;
}

QuadraticScalar QuadraticScalar::fractional_part() const {
    QuadraticScalar r = *this - QuadraticScalar(Rational(floor()));
    return r;
}

double QuadraticScalar::to_double() const {
    double v = a_.get_d();
    if (b_ != 0) v += b_.get_d() * std::sqrt(d_.get_d());
    return v;
}

std::string QuadraticScalar::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadraticScalar& s) {
    if (s.surd_coefficient() == 0) return os << s.rational_part().get_str();
    if (s.rational_part() != 0) os << s.rational_part().get_str();
    const Rational& b = s.surd_coefficient();
    if (b == 1) { if (s.rational_part() != 0) os << "+"; }
    else if (b == -1) os << "-";
    else {
        if (s.rational_part() != 0 && b > 0) os << "+";
        os << b.get_str() << "*";
    }
    os << "sqrt(" << s.radicand().get_str() << ")";
    return os;
}

namespace {

// token scanner for the tiny scalar grammar:
//   expr   := term (('+'|'-') term)*
//   term   := rational | [rational'*'] 'sqrt(' integer ')'
struct Scanner {
    const std::string& s;
    size_t i = 0;
    explicit Scanner(const std::string& str) : s(str) {}
    void skip_ws() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    bool peek_sqrt() {
        skip_ws();
        return s.compare(i, 5, "sqrt(") == 0;
    }
    Rational rational() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        while (i < s.size() && (std::isdigit((unsigned char)s[i]) || s[i] == '/')) ++i;
        if (start == i) throw ParseError("expected number in '" + s + "'");
        return parse_rational(s.substr(start, i - start));
    }
};

} // namespace

QuadraticScalar QuadraticScalar::parse(const std::string& text) {
    Scanner sc(text);
    QuadraticScalar acc(0);
    bool first = true;
    while (true) {
        sc.skip_ws();
        if (sc.i >= sc.s.size()) break;
        Rational sign(1);
        if (sc.eat('+')) {}
        else if (sc.eat('-')) sign = -1;
        else if (!first) throw ParseError("expected '+'/'-' in scalar '" + text + "'");
        QuadraticScalar term(0);
        if (sc.peek_sqrt()) {
            sc.i += 5;
            Rational d = sc.rational();
            if (!sc.eat(')')) throw ParseError("missing ')' in '" + text + "'");
            if (d.get_den() != 1) throw ParseError("radicand must be an integer in '" + text + "'");
            term = QuadraticScalar(Rational(0), sign, d.get_num());
        } else {
            Rational coeff = sign * sc.rational();
            if (sc.eat('*')) {
                if (!sc.peek_sqrt()) throw ParseError("expected sqrt(...) after '*' in '" + text + "'");
                sc.i += 5;
                Rational d = sc.rational();
                if (!sc.eat(')')) throw ParseError("missing ')' in '" + text + "'");
                if (d.get_den() != 1) throw ParseError("radicand must be an integer in '" + text + "'");
                term = QuadraticScalar(Rational(0), coeff, d.get_num());
            } else {
                term = QuadraticScalar(coeff);
            }
        }
        acc += term;
        first = false;
    }
    if (first) throw ParseError("empty scalar literal");
    return acc;
}

} // namespace lamina
