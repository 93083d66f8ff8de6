#pragma once

#include "lamina/circle.hpp"
#include "lamina/moebius.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace lamina {

/// Orientation-preserving piecewise-affine degree-one circle map on the Angle
/// model.  Pieces live on [breaks[i], breaks[i+1}) with breaks[0] == 0 forced;
/// the value of piece i at x is slope_i * x + offset_i, reduced mod 1.
class PiecewiseAffineMap {
public:
    struct Piece {
        QuadraticScalar start;   // left breakpoint
        Rational slope;          // > 0
        QuadraticScalar offset;
    };

    explicit PiecewiseAffineMap(std::vector<Piece> pieces);

    static PiecewiseAffineMap rotation(const QuadraticScalar& angle);

    const std::vector<Piece>& pieces() const { return pieces_; }

    QuadraticScalar apply(const QuadraticScalar& x) const;  // x in [0,1)
    PiecewiseAffineMap inverse() const;
    PiecewiseAffineMap compose(const PiecewiseAffineMap& inner) const;  // this(inner(x))

    bool is_identity() const;
    bool operator==(const PiecewiseAffineMap& o) const;

    std::string str() const;

private:
    std::vector<Piece> pieces_;  // sorted by start, starts distinct, start[0] == 0
    size_t locate(const QuadraticScalar& x) const;
    friend std::vector<QuadraticScalar> pa_fixed_points(const PiecewiseAffineMap&);
};

/// The combinatorial reflection group of a polygon tessellation acting on
/// tree-boundary points.  Implemented by the Denjoy tessellation complex.
struct TreeSymmetry {
    virtual ~TreeSymmetry() = default;
    virtual CirclePoint transform(const CirclePoint& p, bool inverse) const = 0;
    virtual bool orientation_preserving() const = 0;
    virtual std::string name() const = 0;
};

/// A bijective self-map of the circle points of one model, with exact inverse.
class CircleMap {
public:
    static CircleMap moebius(MoebiusMap m);
    static CircleMap piecewise(PiecewiseAffineMap m);
    /// the Denjoy blow-up of rotation by chart->alpha, to the power `shift`
    static CircleMap blowup_rotation(DenjoyChartPtr chart, long shift = 1);
    /// orientation-reversing involution exchanging the two sides of a chord
    /// affinely (Angle model)
    static CircleMap arc_involution(Chord fixed_leaf);
    static CircleMap tree_symmetry(std::shared_ptr<const TreeSymmetry> sym, bool inverted = false);

    struct Blowup {
        DenjoyChartPtr chart;
        long shift;
    };
    struct ArcInvolution {
        Chord leaf;
        QuadraticScalar inner_len, outer_len;
    };
    struct TreeAuto {
        std::shared_ptr<const TreeSymmetry> sym;
        bool inverted;
    };

    Model model() const;
    bool orientation_preserving() const;

    CirclePoint apply(const CirclePoint& p) const;
    Chord apply_chord(const Chord& c) const;

    CircleMap inverse() const;
    CircleMap compose(const CircleMap& inner) const;
    CircleMap power(long k) const;

    /// identity test; nullopt when equality is not decidable for this variant
    std::optional<bool> is_identity() const;
    /// exact map equality where decidable
    std::optional<bool> equals(const CircleMap& o) const;

    const MoebiusMap* as_moebius() const;
    const PiecewiseAffineMap* as_piecewise() const;
    const Blowup* as_blowup() const;
    const ArcInvolution* as_arc_involution() const;

    std::string str() const;

private:
    using Rep = std::variant<MoebiusMap, PiecewiseAffineMap, Blowup, ArcInvolution, TreeAuto>;
    explicit CircleMap(Rep r) : rep_(std::move(r)) {}
    Rep rep_;
};

enum class SideBehavior { Attracting, Repelling, Indeterminate };

struct FixedPointRecord {
    CirclePoint point;
    SideBehavior left;   // clockwise side
    SideBehavior right;  // counterclockwise side
    bool two_sided() const {
        return left == right && left != SideBehavior::Indeterminate;
    }
};

/// Complete fixed-point list in cyclic order with exact one-sided behaviors.
/// Throws MapDomainError on the identity.
std::vector<FixedPointRecord> fixed_points(const CircleMap& m);

struct RotationInterval {
    Rational lo, hi;
    Rational width() const { return hi - lo; }
    bool contains(const QuadraticScalar& v) const {
        return QuadraticScalar::order_mixed(QuadraticScalar(lo), v) != Sign::Positive &&
               QuadraticScalar::order_mixed(v, QuadraticScalar(hi)) != Sign::Positive;
    }
    bool contains_mod1(const QuadraticScalar& v) const;
};

/// Certified interval of width <= 1/iterations containing the rotation number
/// (mod 1) of an orientation-preserving map.
RotationInterval rotation_number(const CircleMap& m, long iterations);

} // namespace lamina
