#pragma once

#include "lamina/circle.hpp"

#include <array>
#include <optional>
#include <string>

namespace lamina {

/// A projective transformation of RP^1 with entries in one real quadratic
/// field.  Stored in a scale-canonical form (first nonzero entry equal to 1)
/// so projective equality is plain entrywise equality; the determinant sign
/// is preserved by canonical scaling, so orientation stays decidable.
class MoebiusMap {
public:
    MoebiusMap(const QuadraticScalar& a, const QuadraticScalar& b,
               const QuadraticScalar& c, const QuadraticScalar& d);

    static MoebiusMap identity();
    static MoebiusMap from_integers(long a, long b, long c, long d);

    const QuadraticScalar& a() const { return e_[0]; }
    const QuadraticScalar& b() const { return e_[1]; }
    const QuadraticScalar& c() const { return e_[2]; }
    const QuadraticScalar& d() const { return e_[3]; }

    QuadraticScalar determinant() const;
    QuadraticScalar trace() const;  // of the canonical representative
    bool orientation_preserving() const { return det_positive_; }
    bool is_identity() const;

    MoebiusMap inverse() const;
    /// this after inner: (f.compose(g))(x) = f(g(x))
    MoebiusMap compose(const MoebiusMap& inner) const;
    MoebiusMap power(long k) const;

    /// image of a ProjectiveLine point
    CirclePoint apply(const CirclePoint& p) const;
    QuadraticScalar apply_finite(const QuadraticScalar& x) const;  // must not hit the pole

    bool operator==(const MoebiusMap& o) const { return e_ == o.e_; }
    bool operator!=(const MoebiusMap& o) const { return !(*this == o); }

    std::string str() const;

private:
    std::array<QuadraticScalar, 4> e_;
    bool det_positive_;
};

/// strict total order on canonical forms, for dedup containers
bool moebius_less(const MoebiusMap& x, const MoebiusMap& y);

enum class MoebiusClass { Identity, Elliptic, Parabolic, Hyperbolic };

struct MoebiusClassification {
    MoebiusClass kind;
    /// Parabolic: the unique fixed point.  Hyperbolic: the attracting one.
    std::optional<CirclePoint> fixed;
    /// Hyperbolic only: the repelling fixed point.
    std::optional<CirclePoint> repelling;
};

/// Classification by exact fixed-point count; attracting/repelling decided by
/// one-sided displacement signs, not derivatives.  Orientation-reversing maps
/// are rejected.
MoebiusClassification classify_moebius(const MoebiusMap& m);

/// chord joining the two fixed points of a hyperbolic map
Chord moebius_axis(const MoebiusMap& m);

} // namespace lamina
