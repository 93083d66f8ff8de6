#pragma once

#include "lamina/errors.hpp"
#include "lamina/scalar.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace lamina {

enum class Model { ProjectiveLine, Angle, BlownUp, TreeBoundary };

std::string model_name(Model m);

/// Shared context of a Denjoy blow-up: the rotation angle, the collapsed
/// position of the orbit point that was blown at index 0, and the truncation
/// bound used when materializing the interval lamination.  The blown-up
/// circle itself is symbolic; the chart is what makes its points comparable.
struct DenjoyChart {
    QuadraticScalar alpha;   // irrational, in (0,1)
    QuadraticScalar origin;  // collapsed position of I_0, in [0,1)
    long truncation = 0;     // J: intervals materialized for |j| <= J

    /// collapsed position of interval I_j, i.e. origin + j*alpha mod 1
    QuadraticScalar collapsed(long j) const;

    /// j with x == collapsed(j), if x lies on the blown orbit
    std::optional<long> orbit_index_of(const QuadraticScalar& x) const;

    bool same_as(const DenjoyChart& o) const {
        return alpha == o.alpha && origin == o.origin;
    }
};

using DenjoyChartPtr = std::shared_ptr<const DenjoyChart>;

DenjoyChartPtr make_denjoy_chart(QuadraticScalar alpha, QuadraticScalar origin, long truncation);

class CirclePoint {
public:
    struct Proj { bool infinite; QuadraticScalar value; };
    struct Angle { QuadraticScalar turns; };                        // in [0,1)
    struct BlownBase { DenjoyChartPtr chart; QuadraticScalar pos; } ;
    struct BlownInterval { DenjoyChartPtr chart; long index; Rational inner; };
    struct Tree { Rational position; std::string address; };

    static CirclePoint projective(QuadraticScalar x) { return CirclePoint(Proj{false, std::move(x)}); }
    static CirclePoint infinity() { return CirclePoint(Proj{true, QuadraticScalar(0)}); }
    static CirclePoint angle(const QuadraticScalar& turns);
    /// base point of the blown-up circle; must not lie on the blown orbit
    static CirclePoint blown_base(DenjoyChartPtr chart, const QuadraticScalar& pos);
    /// point at parameter inner in [0,1] of the blown interval I_index
    static CirclePoint blown_interval(DenjoyChartPtr chart, long index, Rational inner);
    static CirclePoint tree(Rational position, std::string address);

    Model model() const;

    const Proj& as_proj() const { return std::get<Proj>(p_); }
    const Angle& as_angle() const { return std::get<Angle>(p_); }
    bool is_blown_interval() const { return std::holds_alternative<BlownInterval>(p_); }
    const BlownBase& as_blown_base() const { return std::get<BlownBase>(p_); }
    const BlownInterval& as_blown_interval() const { return std::get<BlownInterval>(p_); }
    const Tree& as_tree() const { return std::get<Tree>(p_); }

    /// For BlownUp points: position on the collapsed circle.
    QuadraticScalar blown_collapsed() const;
    const DenjoyChartPtr& blown_chart() const;

    bool operator==(const CirclePoint& o) const;
    bool operator!=(const CirclePoint& o) const { return !(*this == o); }

    double render_angle() const;  // [0,1) turns, floating point, drawing only
    std::string str() const;

private:
    template <class T> explicit CirclePoint(T t) : p_(std::move(t)) {}
    std::variant<Proj, Angle, BlownBase, BlownInterval, Tree> p_;
};

/// Three-way comparison in the model's linear order (the circle cut at a
/// fixed anchor: angle 0, the point just after infinity, tree position 0).
/// Going up in this order is the counterclockwise direction.
int point_cmp(const CirclePoint& a, const CirclePoint& b);

inline bool point_less(const CirclePoint& a, const CirclePoint& b) { return point_cmp(a, b) < 0; }

enum class Orientation { Positive, Negative, Degenerate };

/// Positive iff (a, b, c) is counterclockwise; Degenerate iff two coincide.
Orientation cyclic_order(const CirclePoint& a, const CirclePoint& b, const CirclePoint& c);

/// true iff x lies strictly inside the open arc from `from` counterclockwise to `to`
bool in_open_arc(const CirclePoint& x, const CirclePoint& from, const CirclePoint& to);

/// An unordered pair of distinct points of one model: a possible leaf.
class Chord {
public:
    Chord(CirclePoint a, CirclePoint b);

    const CirclePoint& first() const { return a_; }   // smaller in the linear order
    const CirclePoint& second() const { return b_; }

    Model model() const { return a_.model(); }

    bool has_endpoint(const CirclePoint& p) const { return a_ == p || b_ == p; }
    /// the endpoint that is not p (p must be one of the two)
    const CirclePoint& other_endpoint(const CirclePoint& p) const;

    bool operator==(const Chord& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const Chord& o) const { return !(*this == o); }

    std::string str() const;

private:
    CirclePoint a_, b_;
};

/// canonical strict order for chord sets
bool chord_less(const Chord& x, const Chord& y);

/// A point of the boundary Moebius band: a leaf degenerated to one point.
/// Only coverage / boundary-full reporting produces these.
struct DegenerateLeaf {
    CirclePoint at;
};

enum class LinkResult { Linked, Unlinked, SharedEndpoint, Identical };

/// Decided purely by cyclic order: Linked iff the endpoints of one chord
/// separate the endpoints of the other.
LinkResult linked(const Chord& c1, const Chord& c2);

/// reduce an exact angle to [0, 1)
QuadraticScalar angle_mod1(const QuadraticScalar& t);

/// any rational strictly between lo and hi (as reals, lo < hi required)
Rational rational_between(const QuadraticScalar& lo, const QuadraticScalar& hi);

/// a rational-coordinate point strictly inside the ccw arc (from, to);
/// supported in the Angle and ProjectiveLine models
CirclePoint sample_point_in_arc(const CirclePoint& from, const CirclePoint& to);

} // namespace lamina
