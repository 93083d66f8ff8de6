#include <doctest.h>

#include "lamina/circle.hpp"

#include <random>
#include <vector>

using namespace lamina;

namespace {

CirclePoint ang(long n, long d) { return CirclePoint::angle(QuadraticScalar(Rational(n, d))); }
CirclePoint proj(long n, long d = 1) { return CirclePoint::projective(QuadraticScalar(Rational(n, d))); }

} // namespace

TEST_CASE("cyclic order convention per model") {
    CHECK(cyclic_order(ang(0, 1), ang(1, 4), ang(1, 2)) == Orientation::Positive);
    CHECK(cyclic_order(ang(0, 1), ang(1, 2), ang(1, 4)) == Orientation::Negative);
    CHECK(cyclic_order(ang(0, 1), ang(0, 1), ang(1, 4)) == Orientation::Degenerate);
    // projective line: increasing reals, infinity after all reals
    CHECK(cyclic_order(proj(0), proj(1), CirclePoint::infinity()) == Orientation::Positive);
    CHECK(cyclic_order(CirclePoint::infinity(), proj(-3), proj(7)) == Orientation::Positive);
}

TEST_CASE("cyclic invariance and antisymmetry on random triples") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 17);
    for (int it = 0; it < 800; ++it) {
        CirclePoint a = ang(num(rng), den(rng));
        CirclePoint b = ang(num(rng), den(rng));
        CirclePoint c = ang(num(rng), den(rng));
        auto o = cyclic_order(a, b, c);
        CHECK(cyclic_order(b, c, a) == o);
        if (o != Orientation::Degenerate) {
            auto rev = cyclic_order(a, c, b);
            CHECK(rev != o);
            CHECK(rev != Orientation::Degenerate);
        }
    }
    for (int it = 0; it < 800; ++it) {
        CirclePoint pts[3] = {proj(num(rng), den(rng)), proj(num(rng), den(rng)),
                              (it % 5 == 0) ? CirclePoint::infinity() : proj(num(rng), den(rng))};
        auto o = cyclic_order(pts[0], pts[1], pts[2]);
        CHECK(cyclic_order(pts[1], pts[2], pts[0]) == o);
    }
}

TEST_CASE("mixed models are rejected") {
    CHECK_THROWS_AS((void)cyclic_order(ang(0, 1), proj(1), proj(2)), ModelMismatchError);
    CHECK_THROWS_AS((void)point_cmp(ang(0, 1), CirclePoint::infinity()), ModelMismatchError);
}

TEST_CASE("chords are unordered and reject degenerate input") {
    Chord c1(ang(1, 4), ang(3, 4));
    Chord c2(ang(3, 4), ang(1, 4));
    CHECK(c1 == c2);
    CHECK_THROWS(Chord(ang(1, 4), ang(1, 4)));
}

TEST_CASE("linking predicate on pinned angle examples") {
    Chord a(ang(0, 1), ang(1, 2));
    Chord b(ang(1, 4), ang(3, 4));
    Chord c(ang(0, 1), ang(1, 4));
    Chord d(ang(1, 2), ang(3, 4));
    Chord e(ang(1, 2), ang(3, 4));
    CHECK(linked(a, b) == LinkResult::Linked);
    CHECK(linked(c, d) == LinkResult::Unlinked);
    CHECK(linked(a, e) == LinkResult::SharedEndpoint);
    CHECK(linked(d, e) == LinkResult::Identical);
}

TEST_CASE("linking is symmetric and two-valued for distinct endpoints") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> num(0, 100);
    for (int it = 0; it < 600; ++it) {
        long v[4];
        bool distinct = true;
        for (int i = 0; i < 4; ++i) {
            v[i] = num(rng);
            for (int j = 0; j < i; ++j) distinct &= (v[i] != v[j]);
        }
        if (!distinct) continue;
        Chord c1(ang(v[0], 101), ang(v[1], 101));
        Chord c2(ang(v[2], 101), ang(v[3], 101));
        auto r = linked(c1, c2);
        CHECK(linked(c2, c1) == r);
        CHECK((r == LinkResult::Linked || r == LinkResult::Unlinked));
    }
}

TEST_CASE("blown-up model: order, equality and orbit membership") {
    auto alpha = QuadraticScalar::parse("-1/2+1/2*sqrt(5)");  // golden fractional part
    auto chart = make_denjoy_chart(alpha, QuadraticScalar(0), 3);

    CHECK(chart->orbit_index_of(QuadraticScalar(0)) == 0);
    CHECK(chart->orbit_index_of(alpha) == 1);
    CHECK(chart->orbit_index_of(angle_mod1(alpha * QuadraticScalar(7))) == 7);
    CHECK(chart->orbit_index_of(angle_mod1(alpha * QuadraticScalar(-4))) == -4);
    CHECK(!chart->orbit_index_of(QuadraticScalar(Rational(1, 3))));

    // base points must avoid the orbit
    CHECK_THROWS(CirclePoint::blown_base(chart, alpha));
    auto b = CirclePoint::blown_base(chart, QuadraticScalar(Rational(1, 3)));

    auto i0a = CirclePoint::blown_interval(chart, 0, Rational(0));
    auto i0b = CirclePoint::blown_interval(chart, 0, Rational(1));
    auto i1 = CirclePoint::blown_interval(chart, 1, Rational(1, 2));
    // collapsed order: I_0 at 0, base at 1/3, I_1 at 0.618...
    CHECK(point_cmp(i0a, i0b) < 0);
    CHECK(point_cmp(i0b, b) < 0);
    CHECK(point_cmp(b, i1) < 0);
    CHECK(cyclic_order(i0a, b, i1) == Orientation::Positive);
    CHECK(i0a == CirclePoint::blown_interval(chart, 0, Rational(0)));
    CHECK(i0a != i0b);

    // interval chords over distinct blown intervals never link
    Chord di0(i0a, i0b);
    Chord di1(CirclePoint::blown_interval(chart, 1, Rational(0)),
              CirclePoint::blown_interval(chart, 1, Rational(1)));
    CHECK(linked(di0, di1) == LinkResult::Unlinked);
}

TEST_CASE("tree model points order by position") {
    auto t1 = CirclePoint::tree(Rational(1, 7), "a");
    auto t2 = CirclePoint::tree(Rational(3, 7), "b");
    auto t3 = CirclePoint::tree(Rational(6, 7), "c");
    CHECK(cyclic_order(t1, t2, t3) == Orientation::Positive);
    CHECK(cyclic_order(t3, t2, t1) == Orientation::Negative);
}

TEST_CASE("rational_between finds exact separators") {
    auto lo = QuadraticScalar::parse("1/2+1/2*sqrt(5)");
    auto hi = QuadraticScalar::parse("1/2+1/2*sqrt(5)") + QuadraticScalar(Rational(1, 1000));
    Rational r = rational_between(lo, hi);
    CHECK(QuadraticScalar::order_mixed(QuadraticScalar(r), lo) == Sign::Positive);
    CHECK(QuadraticScalar::order_mixed(QuadraticScalar(r), hi) == Sign::Negative);

    Rational s = rational_between(QuadraticScalar::sqrt_of(2), QuadraticScalar::sqrt_of(3));
    CHECK(s > 1);
    CHECK(s < 2);
}
