#include <doctest.h>

#include "lamina/moebius.hpp"

#include <random>

using namespace lamina;

namespace {

CirclePoint proj(long n, long d = 1) { return CirclePoint::projective(QuadraticScalar(Rational(n, d))); }

MoebiusMap random_op_map(std::mt19937& rng) {
    std::uniform_int_distribution<long> e(-4, 4);
    while (true) {
        long a = e(rng), b = e(rng), c = e(rng), d = e(rng);
        if (a * d - b * c > 0) return MoebiusMap::from_integers(a, b, c, d);
    }
}

} // namespace

TEST_CASE("evaluation on the projective line") {
    auto T = MoebiusMap::from_integers(1, 1, 0, 1);
    CHECK(T.apply(CirclePoint::infinity()) == CirclePoint::infinity());
    auto H = MoebiusMap::from_integers(2, 1, 1, 1);
    CHECK(H.apply(proj(0)) == proj(1));
    // pole maps to infinity
    CHECK(H.apply(proj(-1)) == CirclePoint::infinity());
    CHECK(H.apply(CirclePoint::infinity()) == proj(2));
}

TEST_CASE("projective equality ignores scale, keeps orientation") {
    auto S = MoebiusMap::from_integers(0, -1, 1, 0);
    auto S2 = S.compose(S);
    CHECK(S2 == MoebiusMap::identity());       // -I is the projective identity
    CHECK(S2.is_identity());
    CHECK(MoebiusMap::from_integers(2, 0, 0, 2) == MoebiusMap::identity());
    CHECK(S.orientation_preserving());
    auto R = MoebiusMap::from_integers(1, 0, 0, -1);  // x -> -x, reversing
    CHECK(!R.orientation_preserving());
}

TEST_CASE("classification of the three model elements") {
    auto par = classify_moebius(MoebiusMap::from_integers(1, 1, 0, 1));
    CHECK(par.kind == MoebiusClass::Parabolic);
    CHECK(*par.fixed == CirclePoint::infinity());

    auto ell = classify_moebius(MoebiusMap::from_integers(0, -1, 1, 0));
    CHECK(ell.kind == MoebiusClass::Elliptic);

    auto hyp = classify_moebius(MoebiusMap::from_integers(2, 1, 1, 1));
    CHECK(hyp.kind == MoebiusClass::Hyperbolic);
    // fixed points solve x(x+1) = 2x+1, i.e. x = (1 +- sqrt(5))/2
    auto phi = QuadraticScalar::parse("1/2+1/2*sqrt(5)");
    auto phibar = QuadraticScalar::parse("1/2-1/2*sqrt(5)");
    CHECK(*hyp.fixed == CirclePoint::projective(phi));       // attracting
    CHECK(*hyp.repelling == CirclePoint::projective(phibar));
    // verify by exact substitution
    auto m = MoebiusMap::from_integers(2, 1, 1, 1);
    CHECK(m.apply_finite(phi) == phi);
    CHECK(m.apply_finite(phibar) == phibar);

    CHECK(classify_moebius(MoebiusMap::identity()).kind == MoebiusClass::Identity);
    CHECK_THROWS_AS((void)classify_moebius(MoebiusMap::from_integers(1, 0, 0, -1)), MapDomainError);
}

TEST_CASE("classification is conjugation invariant") {
    std::mt19937 rng(41);
    const MoebiusMap samples[] = {
        MoebiusMap::from_integers(1, 1, 0, 1),   // parabolic
        MoebiusMap::from_integers(2, 1, 1, 1),   // hyperbolic
        MoebiusMap::from_integers(0, -1, 1, 0),  // elliptic
        MoebiusMap::from_integers(3, 1, 1, 1),   // hyperbolic, disc 21
    };
    for (int it = 0; it < 120; ++it) {
        auto c = random_op_map(rng);
        for (const auto& m : samples) {
            auto base = classify_moebius(m);
            auto conj = classify_moebius(c.compose(m).compose(c.inverse()));
            CHECK(conj.kind == base.kind);
            if (base.kind == MoebiusClass::Hyperbolic) {
                CHECK(*conj.fixed == c.apply(*base.fixed));
                CHECK(*conj.repelling == c.apply(*base.repelling));
            }
        }
    }
}

TEST_CASE("composition acts correctly and inverses round-trip") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> e(-9, 9);
    for (int it = 0; it < 400; ++it) {
        auto f = random_op_map(rng);
        auto g = random_op_map(rng);
        CirclePoint p = (it % 7 == 0) ? CirclePoint::infinity() : proj(e(rng), 1 + (it % 5));
        CHECK(f.compose(g).apply(p) == f.apply(g.apply(p)));
        CHECK(f.inverse().apply(f.apply(p)) == p);
    }
}

TEST_CASE("orientation-preserving maps preserve cyclic order, reversing ones flip it") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> e(-20, 20);
    auto rev = MoebiusMap::from_integers(1, 0, 0, -1);
    int checked = 0;
    for (int it = 0; it < 300; ++it) {
        auto m = random_op_map(rng);
        CirclePoint a = proj(e(rng), 3), b = proj(e(rng), 2), c = proj(e(rng), 1);
        auto o = cyclic_order(a, b, c);
        if (o == Orientation::Degenerate) continue;
        ++checked;
        CHECK(cyclic_order(m.apply(a), m.apply(b), m.apply(c)) == o);
        auto flipped = cyclic_order(rev.apply(a), rev.apply(b), rev.apply(c));
        CHECK(flipped != o);
        CHECK(flipped != Orientation::Degenerate);
    }
    CHECK(checked > 200);
}

TEST_CASE("linking is invariant under orientation-preserving maps") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<long> e(-15, 15);
    for (int it = 0; it < 300; ++it) {
        auto m = random_op_map(rng);
        long v[4] = {e(rng), e(rng), e(rng), e(rng)};
        if (v[0] == v[1] || v[2] == v[3]) continue;
        Chord c1(proj(v[0]), proj(v[1]));
        Chord c2(proj(v[2]), proj(v[3]));
        Chord i1(m.apply(proj(v[0])), m.apply(proj(v[1])));
        Chord i2(m.apply(proj(v[2])), m.apply(proj(v[3])));
        CHECK(linked(i1, i2) == linked(c1, c2));
    }
}

TEST_CASE("axis of a hyperbolic map") {
    auto ax = moebius_axis(MoebiusMap::from_integers(2, 1, 1, 1));
    CHECK(ax.has_endpoint(CirclePoint::projective(QuadraticScalar::parse("1/2+1/2*sqrt(5)"))));
    CHECK_THROWS_AS((void)moebius_axis(MoebiusMap::from_integers(1, 1, 0, 1)), MapDomainError);
}

TEST_CASE("fixed points in a surd entry field stay exact when the root closes up") {
    // conjugate x->2x by x->x+sqrt(2): entries pick up sqrt(2), fixed points
    // are sqrt(2) and infinity
    auto s2 = QuadraticScalar::sqrt_of(2);
    MoebiusMap c(QuadraticScalar(1), s2, QuadraticScalar(0), QuadraticScalar(1));
    auto m = c.compose(MoebiusMap::from_integers(2, 0, 0, 1)).compose(c.inverse());
    auto cls = classify_moebius(m);
    CHECK(cls.kind == MoebiusClass::Hyperbolic);
    bool has_s2 = (*cls.fixed == CirclePoint::projective(s2)) ||
                  (*cls.repelling == CirclePoint::projective(s2));
    CHECK(has_s2);
}
