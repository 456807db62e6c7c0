#pragma once

// Exact point sets on the model circle.
//
// The circle has circumference 2: I = [0,1] carries the Cantor set and
// U0 = (1,2) is the complementary arc. A set is stored as sorted, disjoint,
// maximally merged segments of the parameter line [0,2); the value 2 is the
// seam and never belongs to a segment. Components that run across the seam
// are reported by components() as wrapping intervals.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "torus_ledger/error.hpp"
#include "torus_ledger/rational.hpp"

namespace torus_ledger {

inline Rational circumference() { return Rational(2); }

/// Canonical representative of x in [0,2).
inline Rational reduce_mod_circle(const Rational& x) {
  if (x >= 0 && x < 2) return x;
  const Rational q = x / 2;
  BigInt floor_q = numerator(q) / denominator(q);
  if (q < 0 && Rational(floor_q) != q) floor_q -= 1;
  return x - Rational(floor_q) * 2;
}

class RationalPoint {
 public:
  RationalPoint() = default;
  explicit RationalPoint(const Rational& v) : value_(reduce_mod_circle(v)) {}

  const Rational& value() const noexcept { return value_; }

  friend bool operator==(const RationalPoint& a, const RationalPoint& b) { return a.value_ == b.value_; }
  friend bool operator<(const RationalPoint& a, const RationalPoint& b) { return a.value_ < b.value_; }

 private:
  Rational value_{0};
};

/// A connected arc. Without `wraps` it is the segment between lo <= hi of the
/// parameter line (hi may be the seam 2). With `wraps` it is [lo,2) ∪ [0,hi]
/// with lo > hi, closure flags applying to lo and hi.
struct Interval {
  Rational lo{0};
  Rational hi{0};
  bool lo_closed = true;
  bool hi_closed = true;
  bool wraps = false;

  static Interval closed(Rational a, Rational b) { return {std::move(a), std::move(b), true, true, false}; }
  static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b), false, false, false}; }
  static Interval point(const Rational& a) { return closed(a, a); }

  Rational length() const { return wraps ? (circumference() - lo) + hi : hi - lo; }

  bool is_point() const { return !wraps && lo == hi; }

  bool contains(const Rational& x) const {
    if (wraps) {
      const bool upper = x > lo || (lo_closed && x == lo);
      const bool lower = x < hi || (hi_closed && x == hi);
      return (upper && x < 2) || (lower && x >= 0);
    }
    return (x > lo || (lo_closed && x == lo)) && (x < hi || (hi_closed && x == hi));
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

namespace detail {

inline bool segment_less(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.lo_closed && !b.lo_closed;
}

inline void validate(const Interval& iv) {
  auto fail = [](const char* why) { throw Error(ErrorKind::InvalidInput, why); };
  if (iv.lo < 0 || iv.hi < 0) fail("interval endpoint below 0");
  if (iv.wraps) {
    if (iv.lo >= 2 || iv.hi >= 2) fail("wrapping interval endpoints must lie in [0,2)");
    if (iv.lo <= iv.hi) fail("wrapping interval needs lo > hi");
    return;
  }
  if (iv.hi > 2) fail("interval endpoint above 2");
  if (iv.lo > iv.hi) fail("interval with lo > hi");
  if (iv.lo == iv.hi) {
    if (!iv.lo_closed || !iv.hi_closed) fail("degenerate interval with an open end");
    if (iv.lo == 2) fail("point interval at the seam; use 0");
  }
}

/// Splits an arbitrary valid interval into seam-free segments of [0,2).
inline void append_segments(const Interval& iv, std::vector<Interval>& out) {
  validate(iv);
  if (iv.wraps) {
    out.push_back({iv.lo, circumference(), iv.lo_closed, false, false});
    if (iv.hi > 0 || iv.hi_closed) out.push_back({Rational(0), iv.hi, true, iv.hi_closed, false});
    return;
  }
  if (iv.hi == 2 && iv.hi_closed) {
    // The closed seam end is the point 0.
    out.push_back({iv.lo, iv.hi, iv.lo_closed, false, false});
    out.push_back(Interval::point(Rational(0)));
    return;
  }
  out.push_back(iv);
}

inline bool segment_empty(const Interval& s) {
  return s.lo > s.hi || (s.lo == s.hi && !(s.lo_closed && s.hi_closed));
}

}  // namespace detail

class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> raw) : IntervalSet(std::span<const Interval>(raw.begin(), raw.size())) {}

  /// Canonicalizes arbitrary (possibly overlapping, unsorted, wrapping) input.
  explicit IntervalSet(std::span<const Interval> raw) {
    std::vector<Interval> segs;
    segs.reserve(raw.size());
    for (const auto& iv : raw) detail::append_segments(iv, segs);
    std::sort(segs.begin(), segs.end(), detail::segment_less);
    for (auto& s : segs) {
      if (!segments_.empty()) {
        Interval& cur = segments_.back();
        if (s.lo < cur.hi || (s.lo == cur.hi && (cur.hi_closed || s.lo_closed))) {
          if (s.hi > cur.hi) {
            cur.hi = s.hi;
            cur.hi_closed = s.hi_closed;
          } else if (s.hi == cur.hi) {
            cur.hi_closed = cur.hi_closed || s.hi_closed;
          }
          continue;
        }
      }
      segments_.push_back(std::move(s));
    }
  }

  static IntervalSet full_circle() { return {Interval{Rational(0), circumference(), true, false, false}}; }

  const std::vector<Interval>& segments() const noexcept { return segments_; }
  bool empty() const noexcept { return segments_.empty(); }

  /// Connected components on the circle, in order of their lower endpoint; a
  /// component crossing the seam comes last and has `wraps` set.
  std::vector<Interval> components() const {
    std::vector<Interval> out = segments_;
    if (out.size() >= 2) {
      const Interval& first = out.front();
      const Interval& last = out.back();
      if (first.lo == 0 && first.lo_closed && last.hi == 2) {
        Interval joined{last.lo, first.hi, last.lo_closed, first.hi_closed, true};
        out.erase(out.begin());
        out.back() = std::move(joined);
      }
    }
    return out;
  }

  std::size_t component_count() const { return components().size(); }

  bool contains(const Rational& x) const {
    if (x < 0 || x >= 2) return contains(reduce_mod_circle(x));
    auto it = std::upper_bound(segments_.begin(), segments_.end(), x,
                               [](const Rational& v, const Interval& s) { return v < s.lo; });
    if (it != segments_.end() && it->contains(x)) return true;
    if (it == segments_.begin()) return false;
    return std::prev(it)->contains(x);
  }
  bool contains(const RationalPoint& p) const { return contains(p.value()); }

  Rational measure() const {
    Rational total(0);
    for (const auto& s : segments_) total += s.hi - s.lo;
    return total;
  }

  /// Intersection with a single seam-free segment, by binary search.
  IntervalSet restricted_to(const Interval& window) const {
    IntervalSet out;
    if (window.wraps) {
      std::vector<Interval> parts;
      detail::append_segments(window, parts);
      for (const auto& p : parts)
        for (auto& s : restricted_to(p).segments_) out.segments_.push_back(std::move(s));
      std::sort(out.segments_.begin(), out.segments_.end(), detail::segment_less);
      return out;
    }
    auto it = std::partition_point(segments_.begin(), segments_.end(),
                                   [&](const Interval& s) { return s.hi < window.lo; });
    for (; it != segments_.end() && it->lo <= window.hi; ++it) {
      Interval c = *it;
      if (c.lo < window.lo) {
        c.lo = window.lo;
        c.lo_closed = window.lo_closed;
      } else if (c.lo == window.lo) {
        c.lo_closed = c.lo_closed && window.lo_closed;
      }
      if (c.hi > window.hi) {
        c.hi = window.hi;
        c.hi_closed = window.hi_closed;
      } else if (c.hi == window.hi) {
        c.hi_closed = c.hi_closed && window.hi_closed;
      }
      if (!detail::segment_empty(c)) out.segments_.push_back(std::move(c));
    }
    return out;
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> segments_;
};

inline IntervalSet canonicalize(std::span<const Interval> raw) { return IntervalSet(raw); }

namespace detail {

/// Evaluates a pointwise boolean combination on the elementary pieces cut out
/// by all endpoints of both operands.
template <typename Op>
IntervalSet combine(const IntervalSet& a, const IntervalSet& b, Op op) {
  std::vector<Rational> cuts{Rational(0), circumference()};
  for (const auto* set : {&a, &b})
    for (const auto& s : set->segments()) {
      cuts.push_back(s.lo);
      cuts.push_back(s.hi);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Interval> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational& p = cuts[i];
    if (op(a.contains(p), b.contains(p))) pieces.push_back(Interval::point(p));
    const Rational mid = (p + cuts[i + 1]) / 2;
    if (op(a.contains(mid), b.contains(mid))) pieces.push_back(Interval::open(p, cuts[i + 1]));
  }
  return IntervalSet(pieces);
}

}  // namespace detail

inline IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x || y; });
}
inline IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x && y; });
}
inline IntervalSet subtract(const IntervalSet& a, const IntervalSet& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x && !y; });
}
inline IntervalSet complement(const IntervalSet& a) { return subtract(IntervalSet::full_circle(), a); }

inline bool is_subset(const IntervalSet& inner, const IntervalSet& outer) { return subtract(inner, outer).empty(); }
inline bool disjoint(const IntervalSet& a, const IntervalSet& b) { return intersect(a, b).empty(); }

// Named regions of the model circle.
inline Interval unit_interval() { return Interval::closed(Rational(0), Rational(1)); }
inline Interval u0_interval() { return Interval::open(Rational(1), circumference()); }
inline Interval low_third() { return Interval::closed(Rational(0), make_rational(1, 3)); }
inline Interval high_third() { return Interval::closed(make_rational(2, 3), Rational(1)); }

/// The 2^d closed intervals of length 3^{-d} left after d middle-thirds steps,
/// in increasing order.
inline std::vector<Interval> cantor_intervals(unsigned depth) {
  std::vector<Interval> current{unit_interval()};
  for (unsigned level = 1; level <= depth; ++level) {
    std::vector<Interval> next;
    next.reserve(current.size() * 2);
    for (const auto& iv : current) {
      const Rational third = (iv.hi - iv.lo) / 3;
      next.push_back(Interval::closed(iv.lo, iv.lo + third));
      next.push_back(Interval::closed(iv.hi - third, iv.hi));
    }
    current = std::move(next);
  }
  return current;
}

struct CantorStage {
  unsigned depth = 0;
  IntervalSet remaining;
  std::vector<IntervalSet> removed_by_level;  // [i] holds U_{i+1}

  /// U_level for 1 <= level <= depth; U_0 is the open arc (1,2).
  const IntervalSet& removed(unsigned level) const { return removed_by_level.at(level - 1); }
};

inline CantorStage cantor_stage(unsigned depth) {
  CantorStage stage;
  stage.depth = depth;
  std::vector<Interval> current{unit_interval()};
  for (unsigned level = 1; level <= depth; ++level) {
    std::vector<Interval> next, removed;
    next.reserve(current.size() * 2);
    removed.reserve(current.size());
    for (const auto& iv : current) {
      const Rational third = (iv.hi - iv.lo) / 3;
      next.push_back(Interval::closed(iv.lo, iv.lo + third));
      removed.push_back(Interval::open(iv.lo + third, iv.hi - third));
      next.push_back(Interval::closed(iv.hi - third, iv.hi));
    }
    stage.removed_by_level.emplace_back(removed);
    current = std::move(next);
  }
  stage.remaining = IntervalSet(current);
  return stage;
}

/// Depth-d truncations of C1 = C ∩ [0,1/3] and C2 = C ∩ [2/3,1].
inline std::pair<IntervalSet, IntervalSet> c1_c2(unsigned depth) {
  if (depth < 1) throw Error(ErrorKind::InvalidInput, "c1_c2 needs depth >= 1");
  const IntervalSet remaining = cantor_stage(depth).remaining;
  return {remaining.restricted_to(low_third()), remaining.restricted_to(high_third())};
}

/// Preimage of S under the n-fold covering x -> n*x (mod 2), drawn on the same
/// model circle: every segment of S has n copies of 1/n its length.
inline IntervalSet lift(const IntervalSet& set, unsigned fold) {
  if (fold < 1) throw Error(ErrorKind::InvalidInput, "lift needs fold >= 1");
  std::vector<Interval> copies;
  copies.reserve(set.segments().size() * fold);
  const Rational n(fold);
  for (unsigned j = 0; j < fold; ++j) {
    const Rational shift = Rational(2 * j);
    for (const auto& s : set.segments())
      copies.push_back({(s.lo + shift) / n, (s.hi + shift) / n, s.lo_closed, s.hi_closed, false});
  }
  return IntervalSet(copies);
}

}  // namespace torus_ledger
