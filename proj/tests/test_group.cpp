#include <doctest.h>

#include "lamina/group.hpp"

#include <map>
#include <random>
#include <set>

using namespace lamina;

namespace {

GroupAction psl2z() {
    return GroupAction({{"S", CircleMap::moebius(MoebiusMap::from_integers(0, -1, 1, 0))},
                        {"T", CircleMap::moebius(MoebiusMap::from_integers(1, 1, 0, 1))}},
                       false);
}

GroupAction sanov() {
    return GroupAction({{"a", CircleMap::moebius(MoebiusMap::from_integers(1, 2, 0, 1))},
                        {"b", CircleMap::moebius(MoebiusMap::from_integers(1, 0, 2, 1))}},
                       true);
}

CirclePoint proj(long n, long d = 1) { return CirclePoint::projective(QuadraticScalar(Rational(n, d))); }

// degree-one map with fixed set {0, 1/4, 1/2, 3/4}, attracting at 0 and 1/2
PiecewiseAffineMap four_point_map() {
    using P = PiecewiseAffineMap::Piece;
    auto q = [](const char* s) { return QuadraticScalar::parse(s); };
    std::vector<P> ps = {
        {q("0"), Rational(1, 2), q("0")},     {q("1/8"), Rational(3, 2), q("-1/8")},
        {q("1/4"), Rational(3, 2), q("-1/8")},{q("3/8"), Rational(1, 2), q("1/4")},
        {q("1/2"), Rational(1, 2), q("1/4")}, {q("5/8"), Rational(3, 2), q("-3/8")},
        {q("3/4"), Rational(3, 2), q("-3/8")},{q("7/8"), Rational(1, 2), q("1/2")},
    };
    return PiecewiseAffineMap(std::move(ps));
}

// brute-force oracle: count distinct PSL(2,Z) matrices of word length <= radius
// over {S, T, T^-1}, using plain integer matrices normalized up to sign
size_t psl2z_ball_oracle(int radius) {
    using M = std::array<long, 4>;
    auto norm = [](M m) {
        for (int i = 0; i < 4; ++i)
            if (m[i] != 0) {
                if (m[i] < 0)
                    for (auto& x : m) x = -x;
                break;
            }
        return m;
    };
    auto mul = [](const M& x, const M& y) {
        return M{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                 x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
    };
    M gens[3] = {{0, -1, 1, 0}, {1, 1, 0, 1}, {1, -1, 0, 1}};  // S, T, T^-1
    std::set<M> seen{norm({1, 0, 0, 1})};
    std::vector<M> frontier{{1, 0, 0, 1}};
    for (int len = 1; len <= radius; ++len) {
        std::vector<M> next;
        for (const auto& w : frontier)
            for (const auto& g : gens) {
                M prod = norm(mul(g, w));
                next.push_back(prod);
                seen.insert(prod);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

} // namespace

TEST_CASE("free ball counts match the reduced-word formula") {
    auto a = sanov();
    CHECK(enumerate_ball(a, 1).entries.size() == 1 + 4);
    CHECK(enumerate_ball(a, 2).entries.size() == 1 + 4 + 12);
    CHECK(enumerate_ball(a, 3).entries.size() == 1 + 4 + 12 + 36);
    // canonical order: identity first, then by length
    auto ball = enumerate_ball(a, 2);
    CHECK(ball.entries.front().word.empty());
    for (size_t i = 1; i < ball.entries.size(); ++i)
        CHECK(ball.entries[i - 1].word.length() <= ball.entries[i].word.length());
}

TEST_CASE("modular group ball deduplicates to the oracle count") {
    auto ball = enumerate_ball(psl2z(), 4);
    CHECK(ball.deduplicated);
    size_t free_count = 1 + 3 + 3 * 2 + 3 * 4 + 3 * 8;  // free words over {S,T,T^-1}
    CHECK(ball.entries.size() < free_count);
    CHECK(ball.entries.size() == psl2z_ball_oracle(4));
    // every entry's stored map equals the word's product
    for (const auto& e : ball.entries)
        CHECK(e.map.equals(psl2z().map_of(e.word)).value());
}

TEST_CASE("classification of elements follows the fixed-point patterns") {
    auto a = psl2z();
    Word T{{2}};
    auto cT = classify_element(a, T, 6);
    CHECK(cT.kind == ElementClass::Kind::Parabolic);
    CHECK(*cT.fixed == CirclePoint::infinity());

    Word S{{1}};
    auto cS = classify_element(a, S, 6);
    CHECK(cS.kind == ElementClass::Kind::Torsion);
    CHECK(cS.torsion_order == 2);

    Word ST{{1, 2}};  // trace 1: order 3 in PSL
    auto cST = classify_element(a, ST, 6);
    CHECK(cST.kind == ElementClass::Kind::Torsion);
    CHECK(cST.torsion_order == 3);

    auto s = sanov();
    Word ab{{1, 2}};
    auto cab = classify_element(s, ab, 6);
    CHECK(cab.kind == ElementClass::Kind::Hyperbolic);  // [[5,2],[2,1]], trace 6
    // verify by exact substitution
    auto m = s.map_of(ab);
    CHECK(m.apply(*cab.attracting) == *cab.attracting);
    CHECK(m.apply(*cab.repelling) == *cab.repelling);

    GroupAction pa({{"f", CircleMap::piecewise(four_point_map())}}, true);
    auto cpa = classify_element(pa, Word{{1}}, 4);
    CHECK(cpa.kind == ElementClass::Kind::PseudoAnosovLike);
    CHECK(cpa.power == 1);
    CHECK(cpa.fixed_count == 4);
}

TEST_CASE("classification is stable under conjugating the whole action") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<long> e(-3, 3);
    auto a = psl2z();
    std::vector<Word> words = {{{2}}, {{1}}, {{1, 2}}, {{2, 2, 1}}, {{2, 1, 2}}, {{1, 2, 1, -2}}};
    for (int it = 0; it < 40; ++it) {
        long p = e(rng), q = e(rng), r = e(rng), s = e(rng);
        if (p * s - q * r <= 0) continue;
        auto conj = a.conjugated(CircleMap::moebius(MoebiusMap::from_integers(p, q, r, s)));
        for (const auto& w : words)
            CHECK(classify_element(conj, w, 8).kind == classify_element(a, w, 8).kind);
    }
}

TEST_CASE("fixed point cloud collects witnesses and density data") {
    GroupAction cyc({{"T", CircleMap::moebius(MoebiusMap::from_integers(1, 1, 0, 1))}}, true);
    for (int radius : {1, 3, 5}) {
        auto rep = fixed_point_cloud(cyc, radius, 1, Rational(1, 10), proj(0), proj(1));
        REQUIRE(rep.cloud.size() == 1);
        CHECK(rep.cloud[0].point == CirclePoint::infinity());
    }

    auto rep = fixed_point_cloud(psl2z(), 4, 1, Rational(1, 4), proj(0), proj(1));
    CHECK(cloud_contains(rep, proj(0)));
    CHECK(cloud_contains(rep, proj(1)));
    CHECK(cloud_contains(rep, CirclePoint::infinity()));
    CHECK(cloud_contains(rep, CirclePoint::projective(QuadraticScalar::parse("1/2+1/2*sqrt(5)"))));
    CHECK(cloud_contains(rep, CirclePoint::projective(QuadraticScalar::parse("1/2-1/2*sqrt(5)"))));
    // every cloud point is fixed by its witness word's map
    for (const auto& c : rep.cloud)
        CHECK(psl2z().map_of(c.witness).apply(c.point) == c.point);
}

TEST_CASE("cloud equivariance: generator images land in the fatter ball") {
    auto a = psl2z();
    auto small = fixed_point_cloud(a, 2, 1, Rational(1, 4), proj(0), proj(1));
    auto big = fixed_point_cloud(a, 4, 1, Rational(1, 4), proj(0), proj(1));
    for (size_t gi = 0; gi < a.generator_count(); ++gi)
        for (const auto& c : small.cloud)
            CHECK(cloud_contains(big, a.generator(gi).apply(c.point)));
}

TEST_CASE("triple discontinuity counts") {
    TripleRegion K{{proj(3), proj(4)}, {proj(6), proj(7)}, {proj(-3), proj(-2)}};
    auto h = MoebiusMap::from_integers(2, 1, 1, 1);

    std::vector<CircleMap> just_id{CircleMap::moebius(MoebiusMap::identity())};
    CHECK(triple_discontinuity(just_id, K).return_count == 1);

    std::vector<CircleMap> powers;
    for (long k = 1; k <= 10; ++k) powers.push_back(CircleMap::moebius(h.power(k)));
    auto r10 = triple_discontinuity(powers, K);
    for (long k = 11; k <= 14; ++k) powers.push_back(CircleMap::moebius(h.power(k)));
    auto r14 = triple_discontinuity(powers, K);
    CHECK(r10.return_count == r14.return_count);  // bounded for the hyperbolic family
    CHECK(r10.return_count <= 2);

    // rotations return over and over
    auto golden = QuadraticScalar::parse("-1/2+1/2*sqrt(5)");
    auto mk_arc = [](long lo, long hi, long den) {
        return ClosedArc{CirclePoint::angle(QuadraticScalar(Rational(lo, den))),
                         CirclePoint::angle(QuadraticScalar(Rational(hi, den)))};
    };
    TripleRegion KA{mk_arc(0, 2, 12), mk_arc(4, 6, 12), mk_arc(8, 10, 12)};
    std::vector<CircleMap> rots;
    for (long k = 1; k <= 30; ++k)
        rots.push_back(CircleMap::piecewise(PiecewiseAffineMap::rotation(golden * QuadraticScalar(k))));
    auto r30 = triple_discontinuity(rots, KA);
    for (long k = 31; k <= 60; ++k)
        rots.push_back(CircleMap::piecewise(PiecewiseAffineMap::rotation(golden * QuadraticScalar(k))));
    auto r60 = triple_discontinuity(rots, KA);
    CHECK(r30.return_count > 0);
    CHECK(r60.return_count > r30.return_count);

    // validation
    TripleRegion bad{{proj(0), proj(2)}, {proj(1), proj(3)}, {proj(5), proj(6)}};
    CHECK_THROWS(triple_discontinuity(just_id, bad));
}

TEST_CASE("north-south diagnostic contracts hyperbolic powers") {
    auto h = MoebiusMap::from_integers(2, 1, 1, 1);
    std::vector<CircleMap> seq;
    for (long k = 1; k <= 12; ++k) seq.push_back(CircleMap::moebius(h.power(k)));
    auto rep = north_south_diagnostic(seq, Rational(1, 8));
    CHECK(rep.strictly_decreasing);
    auto phi = QuadraticScalar::parse("1/2+1/2*sqrt(5)");
    auto phibar = QuadraticScalar::parse("1/2-1/2*sqrt(5)");
    for (const auto& cr : rep.per_element) {
        CHECK(!cr.failed);
        CHECK(*cr.source == CirclePoint::projective(phibar));  // repelling pole
    }
    CHECK(rep.per_element.back().contracted);
    CHECK(*rep.per_element.back().sink == CirclePoint::projective(phi));
}

TEST_CASE("north-south diagnostic reports failure for rigid rotations") {
    auto golden = QuadraticScalar::parse("-1/2+1/2*sqrt(5)");
    std::vector<CircleMap> seq;
    for (long k = 1; k <= 6; ++k)
        seq.push_back(CircleMap::piecewise(PiecewiseAffineMap::rotation(golden * QuadraticScalar(k))));
    auto rep = north_south_diagnostic(seq, Rational(1, 8));
    for (const auto& cr : rep.per_element) {
        CHECK(cr.failed);
        // isometry: the image of the complement has exactly the complement's length
        CHECK(cr.diameter == QuadraticScalar(Rational(3, 4)));
    }
}

TEST_CASE("north-south diagnostic on parabolic powers has sink == source") {
    auto g = MoebiusMap::from_integers(1, 1, 0, 1);
    std::vector<CircleMap> seq;
    for (long k = 1; k <= 10; ++k) seq.push_back(CircleMap::moebius(g.power(k)));
    auto rep = north_south_diagnostic(seq, Rational(1, 8));
    CHECK(rep.monotone);
    const auto& last = rep.per_element.back();
    CHECK(*last.source == CirclePoint::infinity());
    CHECK(last.contracted);
    CHECK(*last.sink == CirclePoint::infinity());
}
