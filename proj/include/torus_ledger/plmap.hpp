#pragma once

// Piecewise-linear partial self-maps of the model circle.

#include <algorithm>
#include <utility>
#include <vector>

#include "torus_ledger/circle.hpp"

namespace torus_ledger {

/// x -> slope*x + offset on a seam-free domain segment.
struct AffinePiece {
  Interval domain;
  Rational slope{1};
  Rational offset{0};

  int orientation() const { return slope > 0 ? 1 : -1; }
  Rational at(const Rational& x) const { return slope * x + offset; }
  Rational inverse_at(const Rational& y) const { return (y - offset) / slope; }

  /// Image of a sub-segment of the domain.
  Interval map_segment(const Interval& s) const {
    if (slope > 0) return {at(s.lo), at(s.hi), s.lo_closed, s.hi_closed, false};
    return {at(s.hi), at(s.lo), s.hi_closed, s.lo_closed, false};
  }
  Interval pull_segment(const Interval& s) const {
    if (slope > 0) return {inverse_at(s.lo), inverse_at(s.hi), s.lo_closed, s.hi_closed, false};
    return {inverse_at(s.hi), inverse_at(s.lo), s.hi_closed, s.lo_closed, false};
  }
  Interval image() const { return map_segment(domain); }

  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

/// The affine piece carrying `from` onto `to`; orientation -1 reverses.
inline AffinePiece affine_onto(const Interval& from, const Interval& to, int orientation = 1) {
  if (from.wraps || to.wraps || from.is_point() || to.is_point())
    throw Error(ErrorKind::InvalidInput, "affine_onto needs non-degenerate seam-free segments");
  const Rational slope = (to.hi - to.lo) / (from.hi - from.lo) * orientation;
  const Rational offset = orientation > 0 ? to.lo - slope * from.lo : to.hi - slope * from.lo;
  return {from, slope, offset};
}

class PLCircleMap {
 public:
  PLCircleMap() = default;

  /// Validates and canonicalizes: domains must be disjoint seam-free segments,
  /// slopes nonzero, and images must stay inside [0,2).
  explicit PLCircleMap(std::vector<AffinePiece> pieces) : pieces_(std::move(pieces)) {
    for (auto& p : pieces_) {
      if (p.domain.wraps) {
        throw Error(ErrorKind::InvalidInput, "piece domains must not cross the seam");
      }
      detail::validate(p.domain);
      if (p.domain.hi == 2 && p.domain.hi_closed) throw Error(ErrorKind::InvalidInput, "closed seam end in piece domain");
      if (p.slope == 0) throw Error(ErrorKind::InvalidInput, "zero slope");
      const Interval img = p.image();
      if (img.lo < 0 || img.hi > 2 || (img.hi == 2 && img.hi_closed))
        throw Error(ErrorKind::InvalidInput, "piece image leaves the circle parameter range");
      if (p.domain.is_point()) {
        p.offset = p.at(p.domain.lo) - p.domain.lo;
        p.slope = 1;
      }
    }
    std::sort(pieces_.begin(), pieces_.end(),
              [](const AffinePiece& a, const AffinePiece& b) { return detail::segment_less(a.domain, b.domain); });
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
      const Interval& a = pieces_[i - 1].domain;
      const Interval& b = pieces_[i].domain;
      if (a.hi > b.lo || (a.hi == b.lo && a.hi_closed && b.lo_closed))
        throw Error(ErrorKind::InvalidInput, "overlapping piece domains");
    }
    merge_breakpoints();
  }

  static PLCircleMap identity() { return PLCircleMap({AffinePiece{IntervalSet::full_circle().segments().front()}}); }

  const std::vector<AffinePiece>& pieces() const noexcept { return pieces_; }

  IntervalSet total_domain() const {
    std::vector<Interval> d;
    d.reserve(pieces_.size());
    for (const auto& p : pieces_) d.push_back(p.domain);
    return IntervalSet(d);
  }

  /// Index of the piece whose domain contains x, or -1.
  std::ptrdiff_t find_piece(const Rational& x) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Rational& v, const AffinePiece& p) { return v < p.domain.lo; });
    for (int back = 0; back < 2 && it != pieces_.begin(); ++back) {
      --it;
      if (it->domain.contains(x)) return it - pieces_.begin();
    }
    return -1;
  }

  bool is_injective() const {
    std::vector<Interval> images;
    images.reserve(pieces_.size());
    for (const auto& p : pieces_) images.push_back(p.image());
    std::sort(images.begin(), images.end(), detail::segment_less);
    for (std::size_t i = 1; i < images.size(); ++i) {
      const Interval& a = images[i - 1];
      const Interval& b = images[i];
      if (a.hi > b.lo || (a.hi == b.lo && a.hi_closed && b.lo_closed)) return false;
    }
    return true;
  }

  /// Visits (piece, sub-segment) for every piece meeting segment s.
  template <typename Visit>
  void for_each_overlap(const Interval& s, Visit&& visit) const {
    auto it = std::partition_point(pieces_.begin(), pieces_.end(),
                                   [&](const AffinePiece& p) { return p.domain.hi < s.lo; });
    for (; it != pieces_.end() && it->domain.lo <= s.hi; ++it) {
      const IntervalSet clipped = IntervalSet{s}.restricted_to(it->domain);
      for (const auto& c : clipped.segments()) visit(*it, c);
    }
  }

  friend bool operator==(const PLCircleMap&, const PLCircleMap&) = default;

 private:
  // Joins abutting pieces with equal affine data and attaches a shared
  // boundary point to the left piece whenever both pieces agree there.
  void merge_breakpoints() {
    std::vector<AffinePiece> out;
    out.reserve(pieces_.size());
    for (auto& p : pieces_) {
      if (!out.empty()) {
        AffinePiece& a = out.back();
        if (a.domain.hi == p.domain.lo && (a.domain.hi_closed || p.domain.lo_closed)) {
          const Rational& x = p.domain.lo;
          const bool same_affine = a.slope == p.slope && a.offset == p.offset;
          if (same_affine || (a.domain.is_point() && p.at(x) == a.at(x))) {
            a.domain.hi = p.domain.hi;
            a.domain.hi_closed = p.domain.hi_closed;
            a.slope = p.slope;
            a.offset = p.offset;
            continue;
          }
          if (p.domain.lo_closed && a.at(x) == p.at(x)) {
            a.domain.hi_closed = true;
            if (p.domain.is_point()) continue;
            p.domain.lo_closed = false;
          }
        }
      }
      out.push_back(std::move(p));
    }
    pieces_ = std::move(out);
  }

  std::vector<AffinePiece> pieces_;
};

inline RationalPoint apply(const PLCircleMap& f, const RationalPoint& x) {
  const auto idx = f.find_piece(x.value());
  if (idx < 0) throw Error(ErrorKind::DomainError, "point " + to_string(x.value()) + " outside the map's domain");
  return RationalPoint(f.pieces()[static_cast<std::size_t>(idx)].at(x.value()));
}

inline IntervalSet image(const PLCircleMap& f, const IntervalSet& set) {
  std::vector<Interval> out;
  for (const auto& s : set.segments())
    f.for_each_overlap(s, [&](const AffinePiece& p, const Interval& c) { out.push_back(p.map_segment(c)); });
  return IntervalSet(out);
}

inline IntervalSet preimage(const PLCircleMap& f, const IntervalSet& set) {
  std::vector<Interval> out;
  for (const auto& p : f.pieces()) {
    const IntervalSet hit = set.restricted_to(p.image());
    for (const auto& s : hit.segments()) out.push_back(p.pull_segment(s));
  }
  return IntervalSet(out);
}

/// g after f, defined where f lands in g's domain. Maps are partial, so the
/// composite may have a smaller domain than f; an empty composite is an error.
inline PLCircleMap compose(const PLCircleMap& g, const PLCircleMap& f) {
  std::vector<AffinePiece> out;
  for (const auto& p : f.pieces()) {
    g.for_each_overlap(p.image(), [&](const AffinePiece& q, const Interval& c) {
      out.push_back({p.pull_segment(c), q.slope * p.slope, q.slope * p.offset + q.offset});
    });
  }
  if (out.empty() && !f.pieces().empty())
    throw Error(ErrorKind::CompositionError, "the inner map never lands in the outer map's domain");
  return PLCircleMap(std::move(out));
}

inline PLCircleMap invert(const PLCircleMap& f) {
  if (!f.is_injective()) throw Error(ErrorKind::InvalidInput, "cannot invert a non-injective map");
  std::vector<AffinePiece> out;
  out.reserve(f.pieces().size());
  for (const auto& p : f.pieces()) {
    const Rational slope = Rational(1) / p.slope;
    out.push_back({p.image(), slope, -p.offset * slope});
  }
  return PLCircleMap(std::move(out));
}

}  // namespace torus_ledger
