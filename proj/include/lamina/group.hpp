#pragma once

#include "lamina/circle_map.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lamina {

/// Freely reduced word over the generators of a GroupAction.
/// Letters are 1-based generator indices, negated for inverses.
struct Word {
    std::vector<int> letters;

    static Word identity() { return {}; }
    bool empty() const { return letters.empty(); }
    size_t length() const { return letters.size(); }

    Word append(int letter) const;
    Word concat(const Word& o) const;
    Word inverse() const;

    bool operator==(const Word& o) const { return letters == o.letters; }
    bool operator!=(const Word& o) const { return !(*this == o); }
};

class GroupAction {
public:
    GroupAction(std::vector<std::pair<std::string, CircleMap>> generators, bool assume_free);

    Model model() const { return model_; }
    bool assume_free() const { return assume_free_; }
    size_t generator_count() const { return gens_.size(); }
    const std::string& generator_name(size_t i) const { return gens_[i].first; }
    const CircleMap& generator(size_t i) const { return gens_[i].second; }

    /// the map of one letter (negative letter = exact inverse)
    const CircleMap& letter_map(int letter) const;

    CircleMap map_of(const Word& w) const;
    CirclePoint apply_word(const Word& w, const CirclePoint& p) const;
    Chord apply_word(const Word& w, const Chord& c) const;

    std::string word_str(const Word& w) const;

    /// action conjugated generatorwise: g -> c g c^-1
    GroupAction conjugated(const CircleMap& c) const;

private:
    std::vector<std::pair<std::string, CircleMap>> gens_;
    std::vector<CircleMap> inverses_;
    Model model_;
    bool assume_free_;
};

struct BallEntry {
    Word word;
    CircleMap map;
};

struct Ball {
    std::vector<BallEntry> entries;  // length-lexicographic order, identity first
    bool deduplicated;               // exact map dedup was applied (all-Moebius actions)
};

/// All freely reduced words of length <= radius, canonically ordered.
/// For all-Moebius actions, entries with equal maps are merged (the shortest
/// word is kept); otherwise dedup is skipped and flagged.
Ball enumerate_ball(const GroupAction& a, int radius);

struct ElementClass {
    enum class Kind { Torsion, Elliptic, Parabolic, Hyperbolic, PseudoAnosovLike, Other };
    Kind kind;
    long torsion_order = 0;                      // Torsion
    long power = 0;                              // PseudoAnosovLike: smallest m with fixed points
    long fixed_count = 0;                        // PseudoAnosovLike: 2n
    std::optional<CirclePoint> fixed;            // Parabolic
    std::optional<CirclePoint> attracting, repelling;  // Hyperbolic
    std::string diagnostic;                      // Other
};

/// Classify by exact fixed-point analysis of w and its powers up to power_bound.
ElementClass classify_element(const GroupAction& a, const Word& w, int power_bound);

struct CloudPoint {
    CirclePoint point;
    Word witness;
};

struct LimitSetReport {
    std::vector<CloudPoint> cloud;  // sorted along the window arc, deduplicated
    Rational epsilon;
    CirclePoint window_lo, window_hi;
    bool epsilon_dense = false;
    bool empty_cloud = false;
    /// endpoints of the widest empty arc (display choice; emptiness of the arc
    /// is exact, selection among near-equal gaps uses a float approximation)
    std::optional<std::pair<CirclePoint, CirclePoint>> largest_gap;
};

/// Fixed points of all ball elements (and their powers up to power_bound),
/// with an exact epsilon-density audit over the closed window arc.
LimitSetReport fixed_point_cloud(const GroupAction& a, int radius, int power_bound,
                                 const Rational& epsilon, const CirclePoint& window_lo,
                                 const CirclePoint& window_hi);

/// exact test: does the report's cloud leave an empty arc of length >= delta
/// somewhere in the window?
bool cloud_has_gap_at_least(const LimitSetReport& r, const Rational& delta);

bool cloud_contains(const LimitSetReport& r, const CirclePoint& p);

struct ClosedArc {
    CirclePoint lo, hi;  // counterclockwise from lo to hi, endpoints included
};

struct TripleRegion {
    ClosedArc a, b, c;  // pairwise disjoint closed arcs
};

struct TripleReport {
    long return_count = 0;
    std::vector<size_t> witnesses;  // indices into the element list
};

/// Counts elements g with g(K) meeting K inside the space of ordered triples,
/// where K is the product of the three arcs.
TripleReport triple_discontinuity(const std::vector<CircleMap>& elements, const TripleRegion& K);

struct ContractionReport {
    std::optional<CirclePoint> sink, source;  // best (a, b) pair found
    QuadraticScalar diameter;                 // arc measure of the image of the
                                              // complement of the source neighborhood
    bool contracted = false;                  // image lies inside the sink neighborhood
    bool failed = false;                      // no pair contracts at all
};

struct NorthSouthReport {
    std::vector<ContractionReport> per_element;
    bool monotone = false;             // diameters non-increasing along the sequence
    bool strictly_decreasing = false;
};

/// Per-element contraction diagnostic for the convergence property.
/// Neighborhood size eps is an angle fraction on the Angle model; on the
/// projective line neighborhoods are certified rational brackets in the
/// chord-square measure (threshold 4*eps).
NorthSouthReport north_south_diagnostic(const std::vector<CircleMap>& sequence, const Rational& eps);

/// strictly increasing arc-measure functional used for projective arcs
QuadraticScalar proj_arc_measure(const CirclePoint& lo, const CirclePoint& hi);

} // namespace lamina
