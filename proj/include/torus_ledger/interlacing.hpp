#pragma once

// Interlacing numbers of two disjoint sets on a simple closed curve, their
// behaviour under finite covers, and the lower-bound propagators through
// Whitehead and McMillan links.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torus_ledger/circle.hpp"

namespace torus_ledger {

enum class Label { A, B };

struct Block {
  Label label = Label::A;
  Rational anchor{0};

  friend bool operator==(const Block&, const Block&) = default;
};

/// Blocks in cyclic order of their anchors.
struct LabeledConfig {
  std::vector<Block> blocks;
};

enum class BoundKind { Exact, Lower };

inline const char* to_string(BoundKind k) { return k == BoundKind::Exact ? "EXACT" : "LOWER"; }

struct InterlaceBound {
  BigInt value{0};
  BoundKind kind = BoundKind::Exact;

  friend bool operator==(const InterlaceBound&, const InterlaceBound&) = default;
};

inline LabeledConfig make_config(std::vector<Block> blocks) {
  std::sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) { return x.anchor < y.anchor; });
  for (std::size_t i = 1; i < blocks.size(); ++i)
    if (blocks[i].anchor == blocks[i - 1].anchor && blocks[i].label != blocks[i - 1].label)
      throw Error(ErrorKind::InvalidInput, "point " + to_string(blocks[i].anchor) + " carries both labels");
  return {std::move(blocks)};
}

/// Half the number of label changes around the cycle.
inline InterlaceBound interlace(const LabeledConfig& config) {
  const auto& b = config.blocks;
  std::size_t changes = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i].label != b[(i + 1) % b.size()].label) ++changes;
  return {BigInt(changes / 2), BoundKind::Exact};
}

inline LabeledConfig label_points(std::span<const RationalPoint> a, std::span<const RationalPoint> b) {
  std::vector<Block> blocks;
  for (const auto& p : a) blocks.push_back({Label::A, p.value()});
  for (const auto& p : b) blocks.push_back({Label::B, p.value()});
  return make_config(std::move(blocks));
}

inline InterlaceBound interlace_points(std::span<const RationalPoint> a, std::span<const RationalPoint> b) {
  return interlace(label_points(a, b));
}

inline constexpr std::size_t kExhaustiveLimit = 16;

/// Interlacing by trying every pair of equal-size sub-selections of A and B;
/// exponential, meant for cross-checking small inputs only.
inline InterlaceBound interlace_exhaustive(const LabeledConfig& config) {
  std::vector<Rational> a, b;
  for (const auto& blk : config.blocks) (blk.label == Label::A ? a : b).push_back(blk.anchor);
  if (a.size() > kExhaustiveLimit || b.size() > kExhaustiveLimit)
    throw Error(ErrorKind::InvalidInput, "exhaustive interlacing is limited to " + std::to_string(kExhaustiveLimit) +
                                             " points per label");
  std::size_t best = 0;
  for (std::uint32_t ma = 1; ma < (1u << a.size()); ++ma) {
    const auto k = static_cast<std::size_t>(std::popcount(ma));
    if (k <= best || k > b.size()) continue;
    std::vector<Rational> cuts;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (ma & (1u << i)) cuts.push_back(a[i]);
    // Which arc of J - A' each point of B lies on.
    std::vector<std::size_t> arc_of(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto it = std::upper_bound(cuts.begin(), cuts.end(), b[j]);
      arc_of[j] = it == cuts.begin() ? k - 1 : static_cast<std::size_t>(it - cuts.begin()) - 1;
    }
    for (std::uint32_t mb = 1; mb < (1u << b.size()); ++mb) {
      if (static_cast<std::size_t>(std::popcount(mb)) != k) continue;
      std::vector<int> per_arc(k, 0);
      for (std::size_t j = 0; j < b.size(); ++j)
        if (mb & (1u << j)) ++per_arc[arc_of[j]];
      if (std::all_of(per_arc.begin(), per_arc.end(), [](int c) { return c == 1; })) {
        best = k;
        break;
      }
    }
  }
  return {BigInt(best), BoundKind::Exact};
}

/// A point of the component, used as its anchor.
inline Rational representative(const Interval& c) {
  if (c.is_point()) return c.lo;
  if (c.wraps) return reduce_mod_circle((c.lo + c.hi + circumference()) / 2);
  return (c.lo + c.hi) / 2;
}

inline LabeledConfig label_components(const IntervalSet& a, const IntervalSet& b) {
  if (!disjoint(a, b)) throw Error(ErrorKind::InvalidInput, "interlaced sets overlap");
  std::vector<Block> blocks;
  for (const auto& c : a.components()) blocks.push_back({Label::A, representative(c)});
  for (const auto& c : b.components()) blocks.push_back({Label::B, representative(c)});
  return make_config(std::move(blocks));
}

/// One representative per component already realizes the maximum over all
/// finite sub-selections: a component contributes at most one point to any
/// interlacing.
inline InterlaceBound interlace_intervals(const IntervalSet& a, const IntervalSet& b) {
  return interlace(label_components(a, b));
}

struct NeighborhoodWitness {
  IntervalSet u;
  IntervalSet v;
};

/// Open neighborhoods U of A and V of B, each with exactly k components, such
/// that every disjoint compact sandwich A ⊂ Ã ⊂ U, B ⊂ B̃ ⊂ V is still a
/// k-interlacing. Each component runs between the midpoints of the gaps to
/// the neighbouring opposite-label blocks.
inline NeighborhoodWitness neighborhood_witness(const IntervalSet& a, const IntervalSet& b) {
  struct Comp {
    Label label;
    Interval iv;
    Rational anchor;
  };
  if (!disjoint(a, b)) throw Error(ErrorKind::InvalidInput, "interlaced sets overlap");
  std::vector<Comp> comps;
  for (const auto* set : {&a, &b}) {
    const Label label = set == &a ? Label::A : Label::B;
    for (const auto& c : set->components()) {
      if (!c.lo_closed || !c.hi_closed) throw Error(ErrorKind::InvalidInput, "neighborhood witness needs compact sets");
      comps.push_back({label, c, representative(c)});
    }
  }
  std::sort(comps.begin(), comps.end(), [](const Comp& x, const Comp& y) { return x.anchor < y.anchor; });

  std::size_t changes = 0;
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (comps[i].label != comps[(i + 1) % comps.size()].label) ++changes;
  if (changes == 0) throw Error(ErrorKind::NoWitness, "0-interlacing has no neighborhood witness");

  // Rotate so that comps[0] starts a run.
  std::size_t start = 0;
  while (comps[start].label == comps[(start + comps.size() - 1) % comps.size()].label) ++start;
  std::rotate(comps.begin(), comps.begin() + static_cast<std::ptrdiff_t>(start), comps.end());

  auto gap_midpoint = [](const Interval& before, const Interval& after) {
    Rational len = after.lo - before.hi;
    if (len < 0) len += circumference();
    return reduce_mod_circle(before.hi + len / 2);
  };

  std::vector<Interval> u_parts, v_parts;
  const std::size_t count = comps.size();
  std::size_t i = 0;
  while (i < count) {
    std::size_t j = i;
    while (j + 1 < count && comps[j + 1].label == comps[i].label) ++j;
    const Rational lo = gap_midpoint(comps[(i + count - 1) % count].iv, comps[i].iv);
    const Rational hi = gap_midpoint(comps[j].iv, comps[(j + 1) % count].iv);
    const Interval arc{lo, hi, false, false, lo > hi};
    (comps[i].label == Label::A ? u_parts : v_parts).push_back(arc);
    i = j + 1;
  }
  return {IntervalSet(u_parts), IntervalSet(v_parts)};
}

/// Interlacing of the full preimages in the n-fold cover; always n times the
/// base interlacing.
inline InterlaceBound cover_interlace(const IntervalSet& a, const IntervalSet& b, unsigned fold) {
  const InterlaceBound base = interlace_intervals(a, b);
  InterlaceBound lifted = interlace_intervals(lift(a, fold), lift(b, fold));
  if (lifted.value != base.value * fold)
    throw std::logic_error("cover interlacing " + lifted.value.str() + " is not " + std::to_string(fold) + " x " +
                           base.value.str());
  return lifted;
}

/// Through a Whitehead link: at least 2k - 1, clamped at 0.
inline InterlaceBound whitehead_bound(const BigInt& k) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "interlacing number must be >= 0");
  return {k == 0 ? BigInt(0) : BigInt(2 * k - 1), BoundKind::Lower};
}

/// Through a McMillan link of order n: at least 2nk - 1, clamped at 0.
inline InterlaceBound mcmillan_bound(const BigInt& k, std::uint64_t order) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "interlacing number must be >= 0");
  if (order < 1) throw Error(ErrorKind::InvalidInput, "McMillan order must be >= 1");
  if (k == 0) return {BigInt(0), BoundKind::Lower};
  return {BigInt(2) * BigInt(order) * k - 1, BoundKind::Lower};
}

}  // namespace torus_ledger
