#include "lamina/moebius.hpp"

#include <sstream>

namespace lamina {

MoebiusMap::MoebiusMap(const QuadraticScalar& a, const QuadraticScalar& b,
                       const QuadraticScalar& c, const QuadraticScalar& d)
    : e_{a, b, c, d} {
    QuadraticScalar det = a * d - b * c;
    if (det.is_zero()) throw Error("singular matrix is not a circle map");
    det_positive_ = det.sign() == Sign::Positive;
    for (auto& x : e_) {
        if (!x.is_zero()) {
            QuadraticScalar scale = x.inverse();
            for (auto& y : e_) y *= scale;
            break;
        }
    }
}

MoebiusMap MoebiusMap::identity() { return from_integers(1, 0, 0, 1); }

MoebiusMap MoebiusMap::from_integers(long a, long b, long c, long d) {
    return MoebiusMap(QuadraticScalar(a), QuadraticScalar(b), QuadraticScalar(c), QuadraticScalar(d));
}

QuadraticScalar MoebiusMap::determinant() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

QuadraticScalar MoebiusMap::trace() const { return e_[0] + e_[3]; }

bool MoebiusMap::is_identity() const {
    return e_[1].is_zero() && e_[2].is_zero() && e_[0] == e_[3];
}

MoebiusMap MoebiusMap::inverse() const {
    return MoebiusMap(e_[3], -e_[1], -e_[2], e_[0]);
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& g) const {
    return MoebiusMap(e_[0] * g.e_[0] + e_[1] * g.e_[2], e_[0] * g.e_[1] + e_[1] * g.e_[3],
                      e_[2] * g.e_[0] + e_[3] * g.e_[2], e_[2] * g.e_[1] + e_[3] * g.e_[3]);
}

MoebiusMap MoebiusMap::power(long k) const {
    MoebiusMap base = (k < 0) ? inverse() : *this;
    long n = (k < 0) ? -k : k;
    MoebiusMap acc = identity();
    for (long i = 0; i < n; ++i) acc = acc.compose(base);
    return acc;
}

CirclePoint MoebiusMap::apply(const CirclePoint& p) const {
    if (p.model() != Model::ProjectiveLine)
        throw ModelMismatchError("Moebius maps act on the projective line model");
    const auto& pp = p.as_proj();
    if (pp.infinite) {
        if (e_[2].is_zero()) return CirclePoint::infinity();
        return CirclePoint::projective(e_[0] / e_[2]);
    }
    QuadraticScalar den = e_[2] * pp.value + e_[3];
    if (den.is_zero()) return CirclePoint::infinity();
    return CirclePoint::projective((e_[0] * pp.value + e_[1]) / den);
}

QuadraticScalar MoebiusMap::apply_finite(const QuadraticScalar& x) const {
    QuadraticScalar den = e_[2] * x + e_[3];
    if (den.is_zero()) throw Error("point maps to infinity");
    return (e_[0] * x + e_[1]) / den;
}

std::string MoebiusMap::str() const {
    std::ostringstream os;
    os << "[[" << e_[0] << ", " << e_[1] << "], [" << e_[2] << ", " << e_[3] << "]]";
    return os.str();
}

namespace {

int scalar_cmp_key(const QuadraticScalar& x, const QuadraticScalar& y) {
    if (int c = cmp(x.rational_part(), y.rational_part()); c != 0) return c;
    if (int c = cmp(x.surd_coefficient(), y.surd_coefficient()); c != 0) return c;
    return cmp(x.radicand(), y.radicand());
}

} // namespace

bool moebius_less(const MoebiusMap& x, const MoebiusMap& y) {
    const QuadraticScalar* xs[4] = {&x.a(), &x.b(), &x.c(), &x.d()};
    const QuadraticScalar* ys[4] = {&y.a(), &y.b(), &y.c(), &y.d()};
    for (int i = 0; i < 4; ++i)
        if (int c = scalar_cmp_key(*xs[i], *ys[i]); c != 0) return c < 0;
    return false;
}

namespace {

// square root of a field element, staying inside a quadratic field when
// possible; nullopt when the root leaves every supported field
std::optional<QuadraticScalar> field_sqrt(const QuadraticScalar& v) {
    Sign s = v.sign();
    if (s == Sign::Negative) return std::nullopt;
    if (s == Sign::Zero) return QuadraticScalar(0);
    if (v.is_rational()) {
        // sqrt(p/q) = sqrt(p q)/q
        Rational r = v.rational_part();
        Integer pq = r.get_num() * r.get_den();
        return QuadraticScalar(Rational(0), Rational(1, r.get_den()), pq);
    }
    // v = u + w sqrt(d): try (p + q sqrt(d))^2 = v, which needs u^2 - w^2 d to
    // be the square of a rational
    Rational u = v.rational_part(), w = v.surd_coefficient();
    Rational n2 = u * u - w * w * Rational(v.radicand());
    if (n2 < 0) return std::nullopt;
    Rational nn = n2;
    nn.canonicalize();
    if (!is_perfect_square(nn.get_num()) || !is_perfect_square(nn.get_den())) return std::nullopt;
    Rational n(isqrt(nn.get_num()), isqrt(nn.get_den()));
    for (int sign : {1, -1}) {
        Rational p2 = (u + Rational(sign) * n) / 2;
        p2.canonicalize();
        if (p2 < 0) continue;
        if (!is_perfect_square(p2.get_num()) || !is_perfect_square(p2.get_den())) continue;
        Rational p(isqrt(p2.get_num()), isqrt(p2.get_den()));
        if (p == 0) continue;
        Rational q = w / (2 * p);
        QuadraticScalar cand(p, q, v.radicand());
        if (cand * cand == v && cand.sign() == Sign::Positive) return cand;
        cand = -cand;
        if (cand * cand == v && cand.sign() == Sign::Positive) return cand;
    }
    return std::nullopt;
}

// a rational point strictly inside the ccw arc (from, to) on RP^1
CirclePoint sample_in_proj_arc(const CirclePoint& from, const CirclePoint& to) {
    const auto& f = from.as_proj();
    const auto& t = to.as_proj();
    if (f.infinite) {
        // arc (infinity, t) = reals below t
        return CirclePoint::projective(QuadraticScalar(Rational(t.value.floor() - 1)));
    }
    if (t.infinite) {
        return CirclePoint::projective(QuadraticScalar(Rational(f.value.floor() + 1)));
    }
    if (QuadraticScalar::order_mixed(f.value, t.value) == Sign::Negative)
        return CirclePoint::projective(QuadraticScalar(rational_between(f.value, t.value)));
    // wrapping arc: anything beyond f
    return CirclePoint::projective(QuadraticScalar(Rational(f.value.floor() + 1)));
}

CirclePoint sample_in_angle_arc(const CirclePoint& from, const CirclePoint& to) {
    const auto& f = from.as_angle().turns;
    const auto& t = to.as_angle().turns;
    if (QuadraticScalar::order_mixed(f, t) == Sign::Negative)
        return CirclePoint::angle(QuadraticScalar(rational_between(f, t)));
    return CirclePoint::angle(QuadraticScalar(rational_between(f, QuadraticScalar(1))));
}

} // namespace

CirclePoint sample_point_in_arc(const CirclePoint& from, const CirclePoint& to) {
    if (from.model() != to.model()) throw ModelMismatchError("arc endpoints from different models");
    switch (from.model()) {
        case Model::ProjectiveLine: return sample_in_proj_arc(from, to);
        case Model::Angle: return sample_in_angle_arc(from, to);
        default: throw Error("arc sampling unsupported in this model");
    }
}

MoebiusClassification classify_moebius(const MoebiusMap& m) {
    if (!m.orientation_preserving())
        throw MapDomainError("classification defined for orientation-preserving maps only");
    if (m.is_identity()) return {MoebiusClass::Identity, std::nullopt, std::nullopt};

    QuadraticScalar disc = m.trace() * m.trace() - QuadraticScalar(4) * m.determinant();
    Sign ds = disc.sign();
    if (ds == Sign::Negative) return {MoebiusClass::Elliptic, std::nullopt, std::nullopt};

    // fixed points: c x^2 + (d - a) x - b = 0, plus infinity when c == 0
    std::optional<CirclePoint> f1, f2;
    if (m.c().is_zero()) {
        f1 = CirclePoint::infinity();
        if (ds != Sign::Zero) f2 = CirclePoint::projective(m.b() / (m.d() - m.a()));
    } else {
        auto root = field_sqrt(disc);
        if (!root)
            throw UnsupportedFieldError("fixed points leave the quadratic field of the entries");
        QuadraticScalar half = (m.a() - m.d()) / (QuadraticScalar(2) * m.c());
        QuadraticScalar offset = *root / (QuadraticScalar(2) * m.c());
        f1 = CirclePoint::projective(half + offset);
        if (ds != Sign::Zero) f2 = CirclePoint::projective(half - offset);
    }

    if (ds == Sign::Zero) return {MoebiusClass::Parabolic, f1, std::nullopt};

    // decide attracting vs repelling by the displacement sign on a sample
    // between the fixed points
    CirclePoint s = sample_point_in_arc(*f1, *f2);
    CirclePoint img = m.apply(s);
    bool toward_f2 = in_open_arc(img, s, *f2);
    if (!toward_f2 && !in_open_arc(img, *f1, s))
        throw Error("sample escaped its invariant arc");
    CirclePoint att = toward_f2 ? *f2 : *f1;
    CirclePoint rep = toward_f2 ? *f1 : *f2;
    return {MoebiusClass::Hyperbolic, att, rep};
}

Chord moebius_axis(const MoebiusMap& m) {
    auto cls = classify_moebius(m);
    if (cls.kind != MoebiusClass::Hyperbolic)
        throw MapDomainError("axis requires a hyperbolic map");
    return Chord(*cls.fixed, *cls.repelling);
}

} // namespace lamina
