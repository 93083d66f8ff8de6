#include "lamina/circle.hpp"

#include <cmath>
#include <sstream>

namespace lamina {

std::string model_name(Model m) {
    switch (m) {
        case Model::ProjectiveLine: return "projective";
        case Model::Angle: return "angle";
        case Model::BlownUp: return "blownup";
        case Model::TreeBoundary: return "tree";
    }
    return "?";
}

QuadraticScalar angle_mod1(const QuadraticScalar& t) {
    return t.fractional_part();
}

QuadraticScalar DenjoyChart::collapsed(long j) const {
    return angle_mod1(origin + QuadraticScalar(Rational(j)) * alpha);
}

std::optional<long> DenjoyChart::orbit_index_of(const QuadraticScalar& x) const {
    // x == origin + j*alpha (mod 1) for some integer j?
    QuadraticScalar delta(0);
    try {
        delta = x - origin;
    } catch (const UnsupportedFieldError&) {
        return std::nullopt;  // foreign field: only j = 0 possible, and origin is not
    }
    // delta - j*alpha must be an integer; match surd coefficients first
    if (alpha.is_rational()) throw Error("Denjoy chart needs an irrational angle");
    if (!delta.is_rational() && delta.radicand() != alpha.radicand()) return std::nullopt;
    Rational v = delta.surd_coefficient();
    Rational j = v / alpha.surd_coefficient();
    if (j.get_den() != 1) return std::nullopt;
    QuadraticScalar rest = delta - QuadraticScalar(j) * alpha;
    if (!rest.is_integer()) return std::nullopt;
    return static_cast<long>(j.get_num().get_si());
}

DenjoyChartPtr make_denjoy_chart(QuadraticScalar alpha, QuadraticScalar origin, long truncation) {
    if (alpha.is_rational()) throw Error("blow-up angle must be irrational");
    auto chart = std::make_shared<DenjoyChart>();
    chart->alpha = angle_mod1(alpha);
    chart->origin = angle_mod1(origin);
    chart->truncation = truncation;
    return chart;
}

CirclePoint CirclePoint::angle(const QuadraticScalar& turns) {
    return CirclePoint(Angle{angle_mod1(turns)});
}

CirclePoint CirclePoint::blown_base(DenjoyChartPtr chart, const QuadraticScalar& pos) {
    QuadraticScalar reduced = angle_mod1(pos);
    if (chart->orbit_index_of(reduced))
        throw Error("blown base point lies on the blown orbit; use blown_interval");
    return CirclePoint(BlownBase{std::move(chart), std::move(reduced)});
}

CirclePoint CirclePoint::blown_interval(DenjoyChartPtr chart, long index, Rational inner) {
    inner.canonicalize();
    if (inner < 0 || inner > 1) throw Error("interval parameter outside [0,1]");
    return CirclePoint(BlownInterval{std::move(chart), index, std::move(inner)});
}

CirclePoint CirclePoint::tree(Rational position, std::string address) {
    position.canonicalize();
    if (position < 0 || position >= 1) throw Error("tree position outside [0,1)");
    return CirclePoint(Tree{std::move(position), std::move(address)});
}

Model CirclePoint::model() const {
    switch (p_.index()) {
        case 0: return Model::ProjectiveLine;
        case 1: return Model::Angle;
        case 2:
        case 3: return Model::BlownUp;
        default: return Model::TreeBoundary;
    }
}

const DenjoyChartPtr& CirclePoint::blown_chart() const {
    if (auto* b = std::get_if<BlownBase>(&p_)) return b->chart;
    return std::get<BlownInterval>(p_).chart;
}

QuadraticScalar CirclePoint::blown_collapsed() const {
    if (auto* b = std::get_if<BlownBase>(&p_)) return b->pos;
    const auto& iv = std::get<BlownInterval>(p_);
    return iv.chart->collapsed(iv.index);
}

bool CirclePoint::operator==(const CirclePoint& o) const {
    if (model() != o.model()) return false;
    return point_cmp(*this, o) == 0;
}

namespace {

int sign_to_int(Sign s) { return static_cast<int>(s); }

void require_same_chart(const CirclePoint& a, const CirclePoint& b) {
    if (!a.blown_chart()->same_as(*b.blown_chart()))
        throw ModelMismatchError("blown-up points from different blow-up charts");
}

} // namespace

int point_cmp(const CirclePoint& a, const CirclePoint& b) {
    if (a.model() != b.model())
        throw ModelMismatchError("cannot compare " + model_name(a.model()) + " with " + model_name(b.model()));
    switch (a.model()) {
        case Model::ProjectiveLine: {
            const auto& pa = a.as_proj();
            const auto& pb = b.as_proj();
            if (pa.infinite && pb.infinite) return 0;
            if (pa.infinite) return 1;   // infinity follows all reals
            if (pb.infinite) return -1;
            return sign_to_int(QuadraticScalar::order_mixed(pa.value, pb.value));
        }
        case Model::Angle:
            return sign_to_int(QuadraticScalar::order_mixed(a.as_angle().turns, b.as_angle().turns));
        case Model::BlownUp: {
            require_same_chart(a, b);
            int c = sign_to_int(QuadraticScalar::order_mixed(a.blown_collapsed(), b.blown_collapsed()));
            if (c != 0) return c;
            // equal collapsed positions: either the same base point, or two
            // points of one blown interval (base points never sit on the orbit)
            if (!a.is_blown_interval() && !b.is_blown_interval()) return 0;
            if (!a.is_blown_interval() || !b.is_blown_interval())
                throw Error("base point collides with a blown interval");
            return cmp(a.as_blown_interval().inner, b.as_blown_interval().inner);
        }
        case Model::TreeBoundary:
            return cmp(a.as_tree().position, b.as_tree().position);
    }
    return 0;
}

Orientation cyclic_order(const CirclePoint& a, const CirclePoint& b, const CirclePoint& c) {
    int ab = point_cmp(a, b), bc = point_cmp(b, c), ca = point_cmp(c, a);
    if (ab == 0 || bc == 0 || ca == 0) return Orientation::Degenerate;
    // counterclockwise iff the cut linear order is rotated ascending
    bool ccw = (ab < 0 && bc < 0) || (bc < 0 && ca < 0) || (ca < 0 && ab < 0);
    return ccw ? Orientation::Positive : Orientation::Negative;
}

bool in_open_arc(const CirclePoint& x, const CirclePoint& from, const CirclePoint& to) {
    return cyclic_order(from, x, to) == Orientation::Positive;
}

Chord::Chord(CirclePoint a, CirclePoint b) : a_(std::move(a)), b_(std::move(b)) {
    int c = point_cmp(a_, b_);
    if (c == 0) throw Error("degenerate chord: identical endpoints");
    if (c > 0) std::swap(a_, b_);
}

const CirclePoint& Chord::other_endpoint(const CirclePoint& p) const {
    if (a_ == p) return b_;
    if (b_ == p) return a_;
    throw Error("point is not an endpoint of this chord");
}

bool chord_less(const Chord& x, const Chord& y) {
    int c = point_cmp(x.first(), y.first());
    if (c != 0) return c < 0;
    return point_cmp(x.second(), y.second()) < 0;
}

LinkResult linked(const Chord& c1, const Chord& c2) {
    if (c1.model() != c2.model())
        throw ModelMismatchError("chords from different models");
    int shared = 0;
    if (c2.has_endpoint(c1.first())) ++shared;
    if (c2.has_endpoint(c1.second())) ++shared;
    if (shared == 2) return LinkResult::Identical;
    if (shared == 1) return LinkResult::SharedEndpoint;
    Orientation r = cyclic_order(c1.first(), c2.first(), c1.second());
    Orientation s = cyclic_order(c1.first(), c2.second(), c1.second());
    return (r != s) ? LinkResult::Linked : LinkResult::Unlinked;
}

Rational rational_between(const QuadraticScalar& lo, const QuadraticScalar& hi) {
    Rational step(1);
    for (int k = 0; k < 4096; ++k) {
        QuadraticScalar scaled = lo / QuadraticScalar(step);
        Rational candidate = Rational(scaled.floor() + 1) * step;
        QuadraticScalar c{candidate};
        if (QuadraticScalar::order_mixed(c, hi) == Sign::Negative &&
            QuadraticScalar::order_mixed(c, lo) == Sign::Positive)
            return candidate;
        step /= 2;
    }
    throw Error("rational_between: empty or inverted interval");
}

double CirclePoint::render_angle() const {
    switch (p_.index()) {
        case 0: {
            const auto& p = as_proj();
            if (p.infinite) return 0.5;  // Cayley convention: infinity opposite to 0
            double x = p.value.to_double();
            double theta = 2.0 * std::atan(x) / (2.0 * 3.14159265358979323846);
            return theta - std::floor(theta);
        }
        case 1: return as_angle().turns.to_double();
        case 2: return as_blown_base().pos.to_double();
        case 3: {
            const auto& iv = as_blown_interval();
            double base = blown_collapsed().to_double();
            double width = std::pow(0.5, std::abs((double)iv.index)) * 0.02;
            return base + width * iv.inner.get_d();
        }
        default: return as_tree().position.get_d();
    }
}

std::string CirclePoint::str() const {
    std::ostringstream os;
    switch (p_.index()) {
        case 0:
            if (as_proj().infinite) os << "inf";
            else os << as_proj().value;
            break;
        case 1: os << "angle " << as_angle().turns; break;
        case 2: os << "base " << as_blown_base().pos; break;
        case 3: {
            const auto& iv = as_blown_interval();
            os << "I[" << iv.index << "]@" << iv.inner.get_str();
            break;
        }
        default: os << "tree " << as_tree().position.get_str() << " '" << as_tree().address << "'";
    }
    return os.str();
}

std::string Chord::str() const {
    return "(" + a_.str() + ", " + b_.str() + ")";
}

} // namespace lamina
