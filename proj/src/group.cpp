#include "lamina/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace lamina {

Word Word::append(int letter) const {
    Word w = *this;
    if (!w.letters.empty() && w.letters.back() == -letter)
        w.letters.pop_back();
    else
        w.letters.push_back(letter);
    return w;
}

Word Word::concat(const Word& o) const {
    Word w = *this;
    for (int l : o.letters) w = w.append(l);
    return w;
}

Word Word::inverse() const {
    Word w;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(-*it);
    return w;
}

GroupAction::GroupAction(std::vector<std::pair<std::string, CircleMap>> generators, bool assume_free)
    : gens_(std::move(generators)), assume_free_(assume_free) {
    if (gens_.empty()) throw Error("group action needs at least one generator");
    model_ = gens_.front().second.model();
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].second.model() != model_)
            throw ModelMismatchError("generators live in different circle models");
        for (size_t j = 0; j < i; ++j)
            if (gens_[j].first == gens_[i].first)
                throw Error("duplicate generator name '" + gens_[i].first + "'");
        inverses_.push_back(gens_[i].second.inverse());
    }
}

const CircleMap& GroupAction::letter_map(int letter) const {
    size_t idx = static_cast<size_t>(std::abs(letter)) - 1;
    if (letter == 0 || idx >= gens_.size()) throw Error("letter outside the generator alphabet");
    return letter > 0 ? gens_[idx].second : inverses_[idx];
}

CircleMap GroupAction::map_of(const Word& w) const {
    if (w.empty()) {
        // identity in the right variant family
        switch (model_) {
            case Model::ProjectiveLine: return CircleMap::moebius(MoebiusMap::identity());
            case Model::Angle: return CircleMap::piecewise(PiecewiseAffineMap::rotation(QuadraticScalar(0)));
            case Model::BlownUp: {
                const auto* bu = gens_.front().second.as_blowup();
                if (bu) return CircleMap::blowup_rotation(bu->chart, 0);
                break;
            }
            default: break;
        }
        throw MapDomainError("no identity representation for this model");
    }
    CircleMap acc = letter_map(w.letters.front());
    for (size_t i = 1; i < w.letters.size(); ++i)
        acc = letter_map(w.letters[i]).compose(acc);  // word acts leftmost-last
    return acc;
}

CirclePoint GroupAction::apply_word(const Word& w, const CirclePoint& p) const {
    CirclePoint x = p;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        x = letter_map(*it).apply(x);
    return x;
}

Chord GroupAction::apply_word(const Word& w, const Chord& c) const {
    return Chord(apply_word(w, c.first()), apply_word(w, c.second()));
}

std::string GroupAction::word_str(const Word& w) const {
    if (w.empty()) return "e";
    std::ostringstream os;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) os << "*";
        int l = w.letters[i];
        os << gens_[std::abs(l) - 1].first;
        if (l < 0) os << "^-1";
    }
    return os.str();
}

GroupAction GroupAction::conjugated(const CircleMap& c) const {
    std::vector<std::pair<std::string, CircleMap>> gens;
    CircleMap cinv = c.inverse();
    for (const auto& [name, g] : gens_) gens.emplace_back(name, c.compose(g).compose(cinv));
    return GroupAction(std::move(gens), assume_free_);
}

Ball enumerate_ball(const GroupAction& a, int radius) {
    if (radius < 1) throw Error("ball radius must be at least 1");
    bool all_moebius = true;
    for (size_t i = 0; i < a.generator_count(); ++i)
        if (!a.generator(i).as_moebius()) all_moebius = false;

    Ball ball;
    ball.deduplicated = all_moebius;

    std::map<MoebiusMap, bool, decltype(&moebius_less)> seen(&moebius_less);
    auto try_add = [&](const Word& w, const CircleMap& m) {
        if (all_moebius) {
            auto [it, fresh] = seen.emplace(*m.as_moebius(), true);
            (void)it;
            if (!fresh) return;
        }
        ball.entries.push_back({w, m});
    };

    try_add(Word::identity(), a.map_of(Word::identity()));

    // letters in canonical order: g1, g1^-1, g2, g2^-1, ...
    std::vector<int> alphabet;
    for (size_t i = 1; i <= a.generator_count(); ++i) {
        alphabet.push_back(static_cast<int>(i));
        alphabet.push_back(-static_cast<int>(i));
    }

    std::vector<std::pair<Word, CircleMap>> frontier{{Word::identity(), a.map_of(Word::identity())}};
    for (int len = 1; len <= radius; ++len) {
        std::vector<std::pair<Word, CircleMap>> next;
        for (const auto& [w, m] : frontier) {
            for (int letter : alphabet) {
                if (!w.letters.empty() && w.letters.back() == -letter) continue;
                Word w2 = w;
                w2.letters.push_back(letter);
                CircleMap m2 = a.letter_map(letter).compose(m);
                try_add(w2, m2);
                next.emplace_back(std::move(w2), std::move(m2));
            }
        }
        frontier = std::move(next);
    }
    return ball;
}

namespace {

bool alternating_two_sided(const std::vector<FixedPointRecord>& recs) {
    if (recs.size() < 4 || recs.size() % 2 != 0) return false;
    for (const auto& r : recs)
        if (!r.two_sided()) return false;
    for (size_t i = 0; i < recs.size(); ++i)
        if (recs[i].left == recs[(i + 1) % recs.size()].left) return false;
    return true;
}

} // namespace

ElementClass classify_element(const GroupAction& a, const Word& w, int power_bound) {
    if (power_bound < 1) throw Error("power bound must be at least 1");
    ElementClass out;
    CircleMap m = a.map_of(w);
    if (m.is_identity().value_or(false)) {
        out.kind = ElementClass::Kind::Torsion;
        out.torsion_order = 1;
        return out;
    }
    CircleMap p = m;
    for (int k = 1; k <= power_bound; ++k) {
        if (k > 1) p = p.compose(m);
        if (p.is_identity().value_or(false)) {
            out.kind = ElementClass::Kind::Torsion;
            out.torsion_order = k;
            return out;
        }
        auto recs = fixed_points(p);
        if (recs.empty()) continue;
        if (k == 1 && recs.size() == 1) {
            out.kind = ElementClass::Kind::Parabolic;
            out.fixed = recs[0].point;
            return out;
        }
        if (k == 1 && recs.size() == 2) {
            const FixedPointRecord* att = nullptr;
            const FixedPointRecord* rep = nullptr;
            for (const auto& r : recs) {
                if (r.left == SideBehavior::Attracting && r.right == SideBehavior::Attracting) att = &r;
                if (r.left == SideBehavior::Repelling && r.right == SideBehavior::Repelling) rep = &r;
            }
            if (att && rep) {
                out.kind = ElementClass::Kind::Hyperbolic;
                out.attracting = att->point;
                out.repelling = rep->point;
                return out;
            }
            out.kind = ElementClass::Kind::Other;
            out.diagnostic = "two fixed points without north-south sides";
            return out;
        }
        if (alternating_two_sided(recs)) {
            out.kind = ElementClass::Kind::PseudoAnosovLike;
            out.power = k;
            out.fixed_count = static_cast<long>(recs.size());
            return out;
        }
        out.kind = ElementClass::Kind::Other;
        out.diagnostic = "power " + std::to_string(k) + " has " + std::to_string(recs.size()) +
                         " fixed points without the alternating pattern";
        return out;
    }
    out.kind = ElementClass::Kind::Elliptic;
    return out;
}

namespace {

// strict order along the ccw arc starting at `anchor`
struct ArcOrder {
    const CirclePoint& anchor;
    bool operator()(const CirclePoint& p, const CirclePoint& q) const {
        if (p == q) return false;
        if (p == anchor) return true;
        if (q == anchor) return false;
        return in_open_arc(p, anchor, q);
    }
};

bool in_closed_arc(const CirclePoint& x, const CirclePoint& lo, const CirclePoint& hi) {
    return x == lo || x == hi || in_open_arc(x, lo, hi);
}

// exact: length of the gap (x, y) exceeds delta?  Works on the angle model
// (circular length) and on finite parts of the projective line (real length).
bool gap_exceeds(const CirclePoint& x, const CirclePoint& y, const Rational& delta) {
    if (x.model() == Model::Angle) {
        QuadraticScalar lx = x.as_angle().turns, ly = y.as_angle().turns;
        QuadraticScalar len = angle_mod1(ly - lx);
        return QuadraticScalar::order_mixed(len, QuadraticScalar(delta)) == Sign::Positive;
    }
    if (x.model() == Model::ProjectiveLine) {
        if (x.as_proj().infinite || y.as_proj().infinite) return true;  // unbounded gap
        QuadraticScalar shifted = x.as_proj().value + QuadraticScalar(delta);
        return QuadraticScalar::order_mixed(y.as_proj().value, shifted) == Sign::Positive;
    }
    throw Error("gap measurement unsupported in this model");
}

} // namespace

LimitSetReport fixed_point_cloud(const GroupAction& a, int radius, int power_bound,
                                 const Rational& epsilon, const CirclePoint& window_lo,
                                 const CirclePoint& window_hi) {
    Ball ball = enumerate_ball(a, radius);
    LimitSetReport rep{{}, epsilon, window_lo, window_hi, false, false, std::nullopt};

    std::vector<CloudPoint> cloud;
    for (const auto& e : ball.entries) {
        if (e.word.empty()) continue;
        CircleMap p = e.map;
        for (int k = 1; k <= power_bound; ++k) {
            if (k > 1) p = p.compose(e.map);
            if (p.is_identity().value_or(false)) break;
            for (const auto& r : fixed_points(p)) cloud.push_back({r.point, e.word});
        }
    }
    // dedup by position
    std::sort(cloud.begin(), cloud.end(),
              [](const CloudPoint& l, const CloudPoint& r) { return point_less(l.point, r.point); });
    cloud.erase(std::unique(cloud.begin(), cloud.end(),
                            [](const CloudPoint& l, const CloudPoint& r) { return l.point == r.point; }),
                cloud.end());
    rep.empty_cloud = cloud.empty();
    rep.cloud = std::move(cloud);

    // epsilon-density audit over the closed window: no empty arc of length
    // > epsilon between consecutive cloud points (window edges included)
    std::vector<const CirclePoint*> inside;
    for (const auto& c : rep.cloud)
        if (in_closed_arc(c.point, window_lo, window_hi)) inside.push_back(&c.point);
    std::sort(inside.begin(), inside.end(), [&](const CirclePoint* l, const CirclePoint* r) {
        return ArcOrder{window_lo}(*l, *r);
    });
    rep.epsilon_dense = !inside.empty();
    const CirclePoint* prev = &window_lo;
    double best_len = -1.0;
    auto consider = [&](const CirclePoint& from, const CirclePoint& to) {
        if (gap_exceeds(from, to, epsilon)) rep.epsilon_dense = false;
        double len = std::fabs(to.render_angle() - from.render_angle());
        if (len > best_len) {
            best_len = len;
            rep.largest_gap = std::make_pair(from, to);
        }
    };
    for (const CirclePoint* c : inside) {
        if (!(*c == *prev)) consider(*prev, *c);
        prev = c;
    }
    if (!(*prev == window_hi)) consider(*prev, window_hi);
    return rep;
}

bool cloud_contains(const LimitSetReport& r, const CirclePoint& p) {
    for (const auto& c : r.cloud)
        if (c.point == p) return true;
    return false;
}

bool cloud_has_gap_at_least(const LimitSetReport& r, const Rational& delta) {
    std::vector<const CirclePoint*> inside;
    for (const auto& c : r.cloud)
        if (in_closed_arc(c.point, r.window_lo, r.window_hi)) inside.push_back(&c.point);
    std::sort(inside.begin(), inside.end(), [&](const CirclePoint* l, const CirclePoint* r2) {
        return ArcOrder{r.window_lo}(*l, *r2);
    });
    const CirclePoint* prev = &r.window_lo;
    auto at_least = [&](const CirclePoint& from, const CirclePoint& to) {
        // gap >= delta  <=>  not (gap < delta)  <=>  not (to < from + delta)
        if (from.model() == Model::ProjectiveLine && !from.as_proj().infinite &&
            !to.as_proj().infinite) {
            QuadraticScalar shifted = from.as_proj().value + QuadraticScalar(delta);
            return QuadraticScalar::order_mixed(to.as_proj().value, shifted) != Sign::Negative;
        }
        if (from.model() == Model::Angle) {
            QuadraticScalar len = angle_mod1(to.as_angle().turns - from.as_angle().turns);
            return QuadraticScalar::order_mixed(len, QuadraticScalar(delta)) != Sign::Negative;
        }
        return true;
    };
    for (const CirclePoint* c : inside) {
        if (!(*c == *prev) && at_least(*prev, *c)) return true;
        prev = c;
    }
    return !(*prev == r.window_hi) && at_least(*prev, r.window_hi);
}

namespace {

bool arcs_disjoint(const ClosedArc& x, const ClosedArc& y) {
    return !in_closed_arc(y.lo, x.lo, x.hi) && !in_closed_arc(y.hi, x.lo, x.hi) &&
           !in_closed_arc(x.lo, y.lo, y.hi) && !in_closed_arc(x.hi, y.lo, y.hi);
}

bool arcs_intersect(const ClosedArc& x, const ClosedArc& y) { return !arcs_disjoint(x, y); }

ClosedArc image_arc(const CircleMap& m, const ClosedArc& a) {
    CirclePoint lo = m.apply(a.lo), hi = m.apply(a.hi);
    if (m.orientation_preserving()) return {lo, hi};
    return {hi, lo};
}

} // namespace

TripleReport triple_discontinuity(const std::vector<CircleMap>& elements, const TripleRegion& K) {
    const ClosedArc* arcs[3] = {&K.a, &K.b, &K.c};
    for (auto* arc : arcs)
        if (arc->lo == arc->hi) throw Error("degenerate arc in triple region");
    if (!arcs_disjoint(K.a, K.b) || !arcs_disjoint(K.a, K.c) || !arcs_disjoint(K.b, K.c))
        throw Error("triple region arcs must be pairwise disjoint");
    TripleReport rep;
    for (size_t i = 0; i < elements.size(); ++i) {
        bool all = true;
        for (auto* arc : arcs) {
            if (!arcs_intersect(image_arc(elements[i], *arc), *arc)) {
                all = false;
                break;
            }
        }
        if (all) {
            ++rep.return_count;
            rep.witnesses.push_back(i);
        }
    }
    return rep;
}

// --------------------------------------------------------------------------
// contraction diagnostics

QuadraticScalar proj_arc_measure(const CirclePoint& lo, const CirclePoint& hi) {
    // chord-square of the endpoints under the rational circle parameterization,
    // reflected to [12, 16] for arcs longer than half the circle; strictly
    // increasing in arc length
    auto chord2 = [](const CirclePoint& p, const CirclePoint& q) -> QuadraticScalar {
        bool pi = p.as_proj().infinite, qi = q.as_proj().infinite;
        if (pi && qi) return QuadraticScalar(0);
        if (pi || qi) {
            const QuadraticScalar& x = (pi ? q : p).as_proj().value;
            return QuadraticScalar(4) / (QuadraticScalar(1) + x * x);
        }
        const QuadraticScalar& x = p.as_proj().value;
        const QuadraticScalar& y = q.as_proj().value;
        QuadraticScalar diff = x - y;
        return QuadraticScalar(4) * diff * diff /
               ((QuadraticScalar(1) + x * x) * (QuadraticScalar(1) + y * y));
    };
    auto antipode = [](const CirclePoint& p) -> CirclePoint {
        if (p.as_proj().infinite) return CirclePoint::projective(QuadraticScalar(0));
        const QuadraticScalar& x = p.as_proj().value;
        if (x.is_zero()) return CirclePoint::infinity();
        return CirclePoint::projective(-x.inverse());
    };
    QuadraticScalar c2 = chord2(lo, hi);
    CirclePoint anti = antipode(lo);
    bool short_arc = (hi == lo) || (hi == anti) ? (hi == lo)
                                                : in_open_arc(hi, lo, anti);
    if (hi == anti) return QuadraticScalar(4);  // exactly half
    return short_arc ? c2 : QuadraticScalar(16) - c2;
}

namespace {

QuadraticScalar angle_arc_measure(const CirclePoint& lo, const CirclePoint& hi) {
    return angle_mod1(hi.as_angle().turns - lo.as_angle().turns);
}

QuadraticScalar arc_measure(const CirclePoint& lo, const CirclePoint& hi) {
    if (lo.model() == Model::Angle) return angle_arc_measure(lo, hi);
    if (lo.model() == Model::ProjectiveLine) return proj_arc_measure(lo, hi);
    throw Error("arc measure unsupported in this model");
}

bool arc_contains(const CirclePoint& big_lo, const CirclePoint& big_hi, const CirclePoint& x) {
    return x == big_lo || x == big_hi || in_open_arc(x, big_lo, big_hi);
}

bool arc_subset(const CirclePoint& a_lo, const CirclePoint& a_hi, const CirclePoint& b_lo,
                const CirclePoint& b_hi) {
    // closed arc A inside closed arc B
    if (!arc_contains(b_lo, b_hi, a_lo) || !arc_contains(b_lo, b_hi, a_hi)) return false;
    if (a_lo == a_hi) return true;
    // order along B must be b_lo .. a_lo .. a_hi .. b_hi
    ArcOrder ord{b_lo};
    return !ord(a_hi, a_lo);
}

// neighborhood endpoints around b: returns (lo, hi) with the open neighborhood
// being the ccw arc (lo, hi) containing b
std::pair<CirclePoint, CirclePoint> neighborhood(const CirclePoint& b, const Rational& eps) {
    if (b.model() == Model::Angle) {
        QuadraticScalar t = b.as_angle().turns;
        return {CirclePoint::angle(t - QuadraticScalar(eps)), CirclePoint::angle(t + QuadraticScalar(eps))};
    }
    // projective: certified rational bracket in the chord-square measure
    Rational target = 4 * eps;
    auto grow = [&](bool ccw) -> CirclePoint {
        // dyadic search for a rational point whose one-sided arc measure from b
        // lies in [target/2, target]
        for (long k = 0; k < 200; ++k) {
            Integer den = 1;
            mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
            // walk outward from b in the requested direction
            Integer start;
            bool binf = b.as_proj().infinite;
            QuadraticScalar bval = binf ? QuadraticScalar(0) : b.as_proj().value;
            start = (bval * QuadraticScalar(Rational(den))).floor();
            for (long step = 0; step <= 4 * (k + 2); ++step) {
                Integer num = start;
                if (ccw) num += 1 + step; else num -= 1 + step;
                CirclePoint cand = CirclePoint::projective(QuadraticScalar(Rational(num, den)));
                if (binf) {
                    // ccw side of infinity is the far negative axis
                    Integer mag = Integer(1) << static_cast<unsigned>(std::min<long>(k + step, 62));
                    cand = CirclePoint::projective(QuadraticScalar(Rational(ccw ? -mag : mag)));
                }
                if (cand == b) continue;
                QuadraticScalar m = ccw ? proj_arc_measure(b, cand) : proj_arc_measure(cand, b);
                Sign hi_cmp = QuadraticScalar::order_mixed(m, QuadraticScalar(target));
                Sign lo_cmp = QuadraticScalar::order_mixed(m, QuadraticScalar(target / 2));
                if (hi_cmp != Sign::Positive && lo_cmp != Sign::Negative) return cand;
                if (hi_cmp == Sign::Positive && !binf) break;  // stepped past: refine grid
                if (binf && hi_cmp != Sign::Positive) continue;
                if (binf) break;
            }
        }
        throw Error("neighborhood bracketing failed");
    };
    CirclePoint hi = grow(true);
    CirclePoint lo = grow(false);
    return {lo, hi};
}

} // namespace

NorthSouthReport north_south_diagnostic(const std::vector<CircleMap>& sequence, const Rational& eps) {
    if (eps <= 0 || eps >= Rational(1, 4)) throw Error("eps must lie in (0, 1/4)");
    NorthSouthReport out;
    for (const auto& m : sequence) {
        ContractionReport cr{std::nullopt, std::nullopt, QuadraticScalar(0), false, false};
        // candidate poles: fixed points when present, otherwise fixed probes
        std::vector<CirclePoint> candidates;
        if (!m.is_identity().value_or(false))
            for (const auto& r : fixed_points(m)) candidates.push_back(r.point);
        if (candidates.empty()) {
            if (m.model() == Model::Angle)
                for (long n : {0L, 1L, 2L, 3L})
                    candidates.push_back(CirclePoint::angle(QuadraticScalar(Rational(n, 4))));
            else {
                candidates.push_back(CirclePoint::projective(QuadraticScalar(0)));
                candidates.push_back(CirclePoint::projective(QuadraticScalar(1)));
                candidates.push_back(CirclePoint::projective(QuadraticScalar(-1)));
                candidates.push_back(CirclePoint::infinity());
            }
        }
        bool first = true;
        for (const CirclePoint& b : candidates) {
            auto [nb_lo, nb_hi] = neighborhood(b, eps);
            // complement of the neighborhood: closed ccw arc [nb_hi, nb_lo]
            CirclePoint i1 = m.apply(nb_hi), i2 = m.apply(nb_lo);
            if (!m.orientation_preserving()) std::swap(i1, i2);
            QuadraticScalar diam = arc_measure(i1, i2);
            if (first || QuadraticScalar::order_mixed(diam, cr.diameter) == Sign::Negative) {
                first = false;
                cr.diameter = diam;
                cr.source = b;
                // pick the sink among candidates: one whose neighborhood
                // swallows the image
                cr.sink = std::nullopt;
                cr.contracted = false;
                for (const CirclePoint& a : candidates) {
                    auto [sa_lo, sa_hi] = neighborhood(a, eps);
                    if (arc_subset(i1, i2, sa_lo, sa_hi)) {
                        cr.sink = a;
                        cr.contracted = true;
                        break;
                    }
                }
                if (!cr.sink) cr.sink = cr.source;
            }
        }
        if (m.model() == Model::Angle) {
            QuadraticScalar bound = QuadraticScalar(1) - QuadraticScalar(2 * eps);
            cr.failed = QuadraticScalar::order_mixed(cr.diameter, bound) != Sign::Negative;
        } else {
            cr.failed = QuadraticScalar::order_mixed(cr.diameter, QuadraticScalar(4)) != Sign::Negative;
        }
        out.per_element.push_back(std::move(cr));
    }
    out.monotone = true;
    out.strictly_decreasing = out.per_element.size() > 1;
    for (size_t i = 1; i < out.per_element.size(); ++i) {
        Sign s = QuadraticScalar::order_mixed(out.per_element[i].diameter,
                                              out.per_element[i - 1].diameter);
        if (s == Sign::Positive) out.monotone = false;
        if (s != Sign::Negative) out.strictly_decreasing = false;
    }
    return out;
}

} // namespace lamina
