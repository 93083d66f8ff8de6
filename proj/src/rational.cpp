#include "lamina/rational.hpp"

#include "lamina/errors.hpp"

namespace lamina {

Integer floor_rational(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Integer isqrt(const Integer& v) {
    Integer s;
    mpz_sqrt(s.get_mpz_t(), v.get_mpz_t());
    return s;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw ParseError("bad rational literal: '" + text + "'");
    if (r.get_den() == 0) throw ParseError("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

} // namespace lamina
