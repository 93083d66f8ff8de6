#include "lamina/circle_map.hpp"

#include <algorithm>
#include <sstream>

namespace lamina {

namespace {

Sign omix(const QuadraticScalar& x, const QuadraticScalar& y) {
    return QuadraticScalar::order_mixed(x, y);
}

bool qs_less(const QuadraticScalar& x, const QuadraticScalar& y) {
    return omix(x, y) == Sign::Negative;
}

} // namespace

PiecewiseAffineMap::PiecewiseAffineMap(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw Error("piecewise map needs at least one piece");
    std::sort(pieces_.begin(), pieces_.end(),
              [](const Piece& l, const Piece& r) { return qs_less(l.start, r.start); });
    if (!pieces_.front().start.is_zero())
        throw Error("piecewise map must have a breakpoint at 0");
    for (size_t i = 0; i < pieces_.size(); ++i) {
        if (sgn(pieces_[i].slope) <= 0)
            throw Error("piecewise map slopes must be positive");
        if (i && omix(pieces_[i - 1].start, pieces_[i].start) != Sign::Negative)
            throw Error("duplicate breakpoints");
    }
    // continuity mod 1 at every break (including the wrap) and total degree 1
    QuadraticScalar total(0);
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const Piece& cur = pieces_[i];
        const Piece& nxt = pieces_[(i + 1) % pieces_.size()];
        QuadraticScalar end = (i + 1 < pieces_.size()) ? nxt.start : QuadraticScalar(1);
        total += QuadraticScalar(cur.slope) * (end - cur.start);
        QuadraticScalar left = QuadraticScalar(cur.slope) * end + cur.offset;
        QuadraticScalar right = QuadraticScalar(nxt.slope) * ((i + 1 < pieces_.size()) ? end : QuadraticScalar(0)) + nxt.offset;
        QuadraticScalar gap = left - right;
        if (!gap.is_integer())
            throw Error("piecewise map is discontinuous at a breakpoint");
    }
    if (total != QuadraticScalar(1))
        throw Error("piecewise map must have degree one");
}

PiecewiseAffineMap PiecewiseAffineMap::rotation(const QuadraticScalar& angle) {
    QuadraticScalar a = angle_mod1(angle);
    std::vector<Piece> ps;
    if (a.is_zero()) {
        ps.push_back({QuadraticScalar(0), Rational(1), QuadraticScalar(0)});
    } else {
        ps.push_back({QuadraticScalar(0), Rational(1), a});
        ps.push_back({QuadraticScalar(1) - a, Rational(1), a - QuadraticScalar(1)});
    }
    return PiecewiseAffineMap(std::move(ps));
}

size_t PiecewiseAffineMap::locate(const QuadraticScalar& x) const {
    // last piece with start <= x
    size_t lo = 0, hi = pieces_.size();
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (omix(pieces_[mid].start, x) != Sign::Positive) lo = mid;
        else hi = mid;
    }
    return lo;
}

QuadraticScalar PiecewiseAffineMap::apply(const QuadraticScalar& x) const {
    const Piece& p = pieces_[locate(x)];
    return angle_mod1(QuadraticScalar(p.slope) * x + p.offset);
}

bool PiecewiseAffineMap::is_identity() const {
    for (const auto& p : pieces_)
        if (p.slope != 1 || !p.offset.is_integer()) return false;
    return true;
}

bool PiecewiseAffineMap::operator==(const PiecewiseAffineMap& o) const {
    // canonical form: offsets mod 1, adjacent equal pieces merged
    auto canon = [](const PiecewiseAffineMap& m) {
        std::vector<Piece> out;
        for (const auto& p : m.pieces_) {
            Piece q{p.start, p.slope, angle_mod1(p.offset)};
            if (!out.empty() && out.back().slope == q.slope && out.back().offset == q.offset)
                continue;
            out.push_back(std::move(q));
        }
        // the wrap may also merge the last piece into the first
        if (out.size() > 1 && out.front().slope == out.back().slope &&
            out.front().offset == out.back().offset)
            out.pop_back();
        return out;
    };
    auto a = canon(*this), b = canon(o);
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].start != b[i].start || a[i].slope != b[i].slope || a[i].offset != b[i].offset)
            return false;
    return true;
}

PiecewiseAffineMap PiecewiseAffineMap::inverse() const {
    std::vector<Piece> out;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const Piece& p = pieces_[i];
        QuadraticScalar end = (i + 1 < pieces_.size()) ? pieces_[i + 1].start : QuadraticScalar(1);
        QuadraticScalar l = QuadraticScalar(p.slope) * p.start + p.offset;
        QuadraticScalar r = QuadraticScalar(p.slope) * end + p.offset;
        // inverse branch on the lift image [l, r): x = (y - offset)/slope
        Rational inv_slope = Rational(1) / p.slope;
        Integer kl = l.floor();
        QuadraticScalar fl = l - QuadraticScalar(Rational(kl));
        QuadraticScalar fr = r - QuadraticScalar(Rational(kl));
        // y in [fl, min(fr,1)) uses branch constant kl; a wrapped remainder
        // [0, fr-1) uses kl+1
        auto branch = [&](const QuadraticScalar& start, const Integer& k) {
            QuadraticScalar off = (QuadraticScalar(Rational(k)) - p.offset) * QuadraticScalar(inv_slope);
            out.push_back({start, inv_slope, off});
        };
        branch(fl, kl);
        if (omix(fr, QuadraticScalar(1)) == Sign::Positive)
            branch(QuadraticScalar(0), kl + 1);
    }
    return PiecewiseAffineMap(std::move(out));
}

namespace {

// unique x with frac(slope*x + offset) == y on the map's circle
QuadraticScalar pa_preimage(const PiecewiseAffineMap& m, const QuadraticScalar& y) {
    const auto& ps = m.pieces();
    for (size_t i = 0; i < ps.size(); ++i) {
        const auto& p = ps[i];
        QuadraticScalar end = (i + 1 < ps.size()) ? ps[i + 1].start : QuadraticScalar(1);
        QuadraticScalar lo = QuadraticScalar(p.slope) * p.start + p.offset - y;
        QuadraticScalar hi = QuadraticScalar(p.slope) * end + p.offset - y;
        for (Integer k = lo.floor(); k <= hi.floor() + 1; ++k) {
            QuadraticScalar x = (y + QuadraticScalar(Rational(k)) - p.offset) / QuadraticScalar(p.slope);
            if (omix(x, p.start) != Sign::Negative && omix(x, end) == Sign::Negative &&
                m.apply(x) == y)
                return x;
        }
    }
    throw Error("piecewise map preimage not found");
}

} // namespace

PiecewiseAffineMap PiecewiseAffineMap::compose(const PiecewiseAffineMap& inner) const {
    // refine inner's pieces so each refined piece lands inside one outer piece
    std::vector<QuadraticScalar> cuts;
    for (const auto& p : inner.pieces_) cuts.push_back(p.start);
    for (const auto& p : pieces_) cuts.push_back(pa_preimage(inner, p.start));
    std::sort(cuts.begin(), cuts.end(), qs_less);
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](const QuadraticScalar& a, const QuadraticScalar& b) {
                               return omix(a, b) == Sign::Zero;
                           }),
               cuts.end());
    std::vector<Piece> out;
    for (const auto& u : cuts) {
        const Piece& g = inner.pieces_[inner.locate(u)];
        QuadraticScalar gu = QuadraticScalar(g.slope) * u + g.offset;
        Integer k = gu.floor();
        QuadraticScalar r = gu - QuadraticScalar(Rational(k));
        const Piece& f = pieces_[locate(r)];
        Rational slope = f.slope * g.slope;
        QuadraticScalar offset =
            QuadraticScalar(f.slope) * (g.offset - QuadraticScalar(Rational(k))) + f.offset;
        out.push_back({u, slope, offset});
    }
    return PiecewiseAffineMap(std::move(out));
}

std::vector<QuadraticScalar> pa_fixed_points(const PiecewiseAffineMap& m) {
    std::vector<QuadraticScalar> out;
    const auto& ps = m.pieces_;
    for (size_t i = 0; i < ps.size(); ++i) {
        const auto& p = ps[i];
        QuadraticScalar end = (i + 1 < ps.size()) ? ps[i + 1].start : QuadraticScalar(1);
        if (p.slope == 1) {
            if (p.offset.is_integer()) throw MapDomainError("map fixes a whole arc");
            continue;
        }
        // slope*x + offset = x + k  =>  x = (offset - k)/(1 - slope)
        QuadraticScalar one_minus(Rational(1) - p.slope);
        QuadraticScalar klo = p.offset - one_minus * p.start;
        QuadraticScalar khi = p.offset - one_minus * end;
        if (qs_less(khi, klo)) std::swap(klo, khi);
        for (Integer k = klo.floor(); k <= khi.floor() + 1; ++k) {
            QuadraticScalar x = (p.offset - QuadraticScalar(Rational(k))) / one_minus;
            if (omix(x, p.start) != Sign::Negative && omix(x, end) == Sign::Negative &&
                m.apply(x) == x)
                out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end(), qs_less);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const QuadraticScalar& a, const QuadraticScalar& b) {
                              return omix(a, b) == Sign::Zero;
                          }),
              out.end());
    return out;
}

std::string PiecewiseAffineMap::str() const {
    std::ostringstream os;
    os << "pa{";
    for (size_t i = 0; i < pieces_.size(); ++i) {
        if (i) os << ", ";
        os << "[" << pieces_[i].start << ": " << pieces_[i].slope.get_str() << "x+"
           << pieces_[i].offset << "]";
    }
    os << "}";
    return os.str();
}

// ---------------------------------------------------------------------------

CircleMap CircleMap::moebius(MoebiusMap m) { return CircleMap(Rep(std::move(m))); }
CircleMap CircleMap::piecewise(PiecewiseAffineMap m) { return CircleMap(Rep(std::move(m))); }

CircleMap CircleMap::blowup_rotation(DenjoyChartPtr chart, long shift) {
    return CircleMap(Rep(Blowup{std::move(chart), shift}));
}

CircleMap CircleMap::arc_involution(Chord fixed_leaf) {
    if (fixed_leaf.model() != Model::Angle)
        throw ModelMismatchError("arc involutions are defined on the angle model");
    QuadraticScalar a = fixed_leaf.first().as_angle().turns;
    QuadraticScalar b = fixed_leaf.second().as_angle().turns;
    QuadraticScalar inner = b - a;
    return CircleMap(Rep(ArcInvolution{std::move(fixed_leaf), inner, QuadraticScalar(1) - inner}));
}

CircleMap CircleMap::tree_symmetry(std::shared_ptr<const TreeSymmetry> sym, bool inverted) {
    return CircleMap(Rep(TreeAuto{std::move(sym), inverted}));
}

Model CircleMap::model() const {
    switch (rep_.index()) {
        case 0: return Model::ProjectiveLine;
        case 1: return Model::Angle;
        case 2: return Model::BlownUp;
        case 3: return Model::Angle;
        default: return Model::TreeBoundary;
    }
}

bool CircleMap::orientation_preserving() const {
    switch (rep_.index()) {
        case 0: return std::get<MoebiusMap>(rep_).orientation_preserving();
        case 3: return false;
        case 4: return std::get<TreeAuto>(rep_).sym->orientation_preserving();
        default: return true;
    }
}

CirclePoint CircleMap::apply(const CirclePoint& p) const {
    if (p.model() != model()) throw ModelMismatchError("point model does not match map model");
    switch (rep_.index()) {
        case 0: return std::get<MoebiusMap>(rep_).apply(p);
        case 1: return CirclePoint::angle(std::get<PiecewiseAffineMap>(rep_).apply(p.as_angle().turns));
        case 2: {
            const auto& bu = std::get<Blowup>(rep_);
            if (!bu.chart->same_as(*p.blown_chart()))
                throw ModelMismatchError("point belongs to a different blow-up chart");
            if (p.is_blown_interval()) {
                const auto& iv = p.as_blown_interval();
                return CirclePoint::blown_interval(bu.chart, iv.index + bu.shift, iv.inner);
            }
            QuadraticScalar x = p.as_blown_base().pos +
                                QuadraticScalar(Rational(bu.shift)) * bu.chart->alpha;
            return CirclePoint::blown_base(bu.chart, angle_mod1(x));
        }
        case 3: {
            const auto& inv = std::get<ArcInvolution>(rep_);
            const QuadraticScalar& a = inv.leaf.first().as_angle().turns;
            const QuadraticScalar& b = inv.leaf.second().as_angle().turns;
            QuadraticScalar x = p.as_angle().turns;
            if (omix(x, a) == Sign::Zero || omix(x, b) == Sign::Zero) return p;
            if (in_open_arc(p, inv.leaf.first(), inv.leaf.second())) {
                // inner arc (a,b): distance s from a maps to distance
                // outer*(inner-s)/inner past b
                QuadraticScalar s = x - a;
                QuadraticScalar t = inv.outer_len * (inv.inner_len - s) / inv.inner_len;
                return CirclePoint::angle(b + t);
            }
            QuadraticScalar s = angle_mod1(x - b);
            QuadraticScalar t = inv.inner_len * (inv.outer_len - s) / inv.outer_len;
            return CirclePoint::angle(a + t);
        }
        default: {
            const auto& ta = std::get<TreeAuto>(rep_);
            return ta.sym->transform(p, ta.inverted);
        }
    }
}

Chord CircleMap::apply_chord(const Chord& c) const {
    return Chord(apply(c.first()), apply(c.second()));
}

CircleMap CircleMap::inverse() const {
    switch (rep_.index()) {
        case 0: return moebius(std::get<MoebiusMap>(rep_).inverse());
        case 1: return piecewise(std::get<PiecewiseAffineMap>(rep_).inverse());
        case 2: {
            const auto& bu = std::get<Blowup>(rep_);
            return blowup_rotation(bu.chart, -bu.shift);
        }
        case 3: return *this;  // involution
        default: {
            const auto& ta = std::get<TreeAuto>(rep_);
            return tree_symmetry(ta.sym, !ta.inverted);
        }
    }
}

CircleMap CircleMap::compose(const CircleMap& inner) const {
    if (rep_.index() == 0 && inner.rep_.index() == 0)
        return moebius(std::get<MoebiusMap>(rep_).compose(std::get<MoebiusMap>(inner.rep_)));
    if (rep_.index() == 1 && inner.rep_.index() == 1)
        return piecewise(std::get<PiecewiseAffineMap>(rep_).compose(std::get<PiecewiseAffineMap>(inner.rep_)));
    if (rep_.index() == 2 && inner.rep_.index() == 2) {
        const auto& f = std::get<Blowup>(rep_);
        const auto& g = std::get<Blowup>(inner.rep_);
        if (!f.chart->same_as(*g.chart)) throw ModelMismatchError("blow-up charts differ");
        return blowup_rotation(f.chart, f.shift + g.shift);
    }
    throw MapDomainError("composition across these map variants is not supported");
}

CircleMap CircleMap::power(long k) const {
    if (rep_.index() == 0) return moebius(std::get<MoebiusMap>(rep_).power(k));
    if (rep_.index() == 2) {
        const auto& bu = std::get<Blowup>(rep_);
        return blowup_rotation(bu.chart, bu.shift * k);
    }
    if (rep_.index() == 3) {
        if (k % 2 == 0) return piecewise(PiecewiseAffineMap::rotation(QuadraticScalar(0)));
        return *this;
    }
    if (rep_.index() == 1) {
        const auto& base = std::get<PiecewiseAffineMap>(rep_);
        PiecewiseAffineMap cur = (k < 0) ? base.inverse() : base;
        long n = (k < 0) ? -k : k;
        if (n == 0) return piecewise(PiecewiseAffineMap::rotation(QuadraticScalar(0)));
        PiecewiseAffineMap acc = cur;
        for (long i = 1; i < n; ++i) acc = acc.compose(cur);
        return piecewise(std::move(acc));
    }
    throw MapDomainError("powers of tree symmetries are not supported");
}

std::optional<bool> CircleMap::is_identity() const {
    switch (rep_.index()) {
        case 0: return std::get<MoebiusMap>(rep_).is_identity();
        case 1: return std::get<PiecewiseAffineMap>(rep_).is_identity();
        case 2: return std::get<Blowup>(rep_).shift == 0;
        case 3: return false;
        default: return std::nullopt;
    }
}

std::optional<bool> CircleMap::equals(const CircleMap& o) const {
    if (rep_.index() != o.rep_.index()) return std::nullopt;
    switch (rep_.index()) {
        case 0: return std::get<MoebiusMap>(rep_) == std::get<MoebiusMap>(o.rep_);
        case 1: return std::get<PiecewiseAffineMap>(rep_) == std::get<PiecewiseAffineMap>(o.rep_);
        case 2: {
            const auto& x = std::get<Blowup>(rep_);
            const auto& y = std::get<Blowup>(o.rep_);
            return x.chart->same_as(*y.chart) && x.shift == y.shift;
        }
        case 3: return std::get<ArcInvolution>(rep_).leaf == std::get<ArcInvolution>(o.rep_).leaf;
        default: return std::nullopt;
    }
}

const MoebiusMap* CircleMap::as_moebius() const { return std::get_if<MoebiusMap>(&rep_); }
const PiecewiseAffineMap* CircleMap::as_piecewise() const { return std::get_if<PiecewiseAffineMap>(&rep_); }
const CircleMap::Blowup* CircleMap::as_blowup() const { return std::get_if<Blowup>(&rep_); }
const CircleMap::ArcInvolution* CircleMap::as_arc_involution() const { return std::get_if<ArcInvolution>(&rep_); }

std::string CircleMap::str() const {
    switch (rep_.index()) {
        case 0: return std::get<MoebiusMap>(rep_).str();
        case 1: return std::get<PiecewiseAffineMap>(rep_).str();
        case 2: {
            const auto& bu = std::get<Blowup>(rep_);
            return "blowup_rotation^" + std::to_string(bu.shift);
        }
        case 3: return "arc_involution" + std::get<ArcInvolution>(rep_).leaf.str();
        default: {
            const auto& ta = std::get<TreeAuto>(rep_);
            return "tree:" + ta.sym->name() + (ta.inverted ? "^-1" : "");
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

std::vector<FixedPointRecord> attach_side_behaviors(const CircleMap& m,
                                                    std::vector<CirclePoint> pts) {
    std::sort(pts.begin(), pts.end(), point_less);
    size_t n = pts.size();
    std::vector<FixedPointRecord> recs;
    recs.reserve(n);
    for (auto& p : pts)
        recs.push_back({p, SideBehavior::Indeterminate, SideBehavior::Indeterminate});
    if (!m.orientation_preserving()) return recs;
    for (size_t i = 0; i < n; ++i) {
        const CirclePoint& cur = recs[i].point;
        const CirclePoint& nxt = recs[(i + 1) % n].point;
        CirclePoint s = sample_point_in_arc(cur, nxt);
        CirclePoint img = m.apply(s);
        bool moved_ccw = (n == 1) ? in_open_arc(img, s, cur) : in_open_arc(img, s, nxt);
        if (moved_ccw) {
            recs[(i + 1) % n].left = SideBehavior::Attracting;
            recs[i].right = SideBehavior::Repelling;
        } else {
            recs[(i + 1) % n].left = SideBehavior::Repelling;
            recs[i].right = SideBehavior::Attracting;
        }
    }
    return recs;
}

} // namespace

std::vector<FixedPointRecord> fixed_points(const CircleMap& m) {
    if (m.is_identity().value_or(false))
        throw MapDomainError("every point of the identity is fixed");
    if (const MoebiusMap* mm = m.as_moebius()) {
        auto cls = classify_moebius(*mm);
        std::vector<CirclePoint> pts;
        if (cls.fixed) pts.push_back(*cls.fixed);
        if (cls.repelling) pts.push_back(*cls.repelling);
        return attach_side_behaviors(m, std::move(pts));
    }
    if (const PiecewiseAffineMap* pa = m.as_piecewise()) {
        std::vector<CirclePoint> pts;
        for (auto& x : pa_fixed_points(*pa)) pts.push_back(CirclePoint::angle(x));
        return attach_side_behaviors(m, std::move(pts));
    }
    if (m.model() == Model::BlownUp) return {};  // nontrivial blow-up rotations are fixed-point free
    if (const auto* inv = m.as_arc_involution()) {
        // exactly the chord's endpoints; one-sided behaviors are not oriented
        // notions for orientation-reversing maps
        return attach_side_behaviors(m, {inv->leaf.first(), inv->leaf.second()});
    }
    throw MapDomainError("fixed points unsupported for this map variant");
}

bool RotationInterval::contains_mod1(const QuadraticScalar& v) const {
    QuadraticScalar f = v.fractional_part();
    return contains(f) || contains(f - QuadraticScalar(1)) || contains(f + QuadraticScalar(1));
}

RotationInterval rotation_number(const CircleMap& m, long iterations) {
    if (!m.orientation_preserving())
        throw MapDomainError("rotation number requires an orientation-preserving map");
    if (iterations <= 0) throw Error("iterations must be positive");
    CirclePoint x = [&]() {
        switch (m.model()) {
            case Model::Angle: return CirclePoint::angle(QuadraticScalar(0));
            case Model::ProjectiveLine: return CirclePoint::projective(QuadraticScalar(0));
            case Model::BlownUp:
                // any symbolic point works; take the midpoint of I_0
                return CirclePoint::blown_interval(m.as_blowup()->chart, 0, Rational(1, 2));
            default: throw MapDomainError("rotation number unsupported in this model");
        }
    }();
    long N = 4 * iterations;
    long wraps = 0;
    for (long i = 0; i < N; ++i) {
        CirclePoint next = m.apply(x);
        if (point_cmp(next, x) < 0) ++wraps;
        x = next;
    }
    return {Rational(wraps - 2, N), Rational(wraps + 2, N)};
}

} // namespace lamina
