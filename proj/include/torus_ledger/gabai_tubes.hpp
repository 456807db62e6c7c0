#pragma once

// The order-n Gabai tube decomposition on the circle factor of the solid
// torus T = B^2 x S^1, and mechanical checks of the three setup conditions
// for the embedding g_n, read through its circle shadow:
//
//   (1) A ∩ g_n(T) = g_n(A), B ∩ g_n(T) = g_n(B)   (A, B over C1, C2)
//   (2) g_n(V^0 ∪ V^1) ⊂ V^0
//   (3) every component of g_n(V^i), i > 0, lies in a single V^j, j < i
//
// Cantor sets are handled at a finite depth d; the tube maps are affine, so a
// pass at depth d is a statement about the shift U_i -> U_{i-l} on every
// level up to d.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torus_ledger/circle.hpp"
#include "torus_ledger/plmap.hpp"

namespace torus_ledger {

struct TubeParams {
  std::uint64_t n = 1;
  unsigned m = 2;
  std::uint64_t k = 0;

  std::uint64_t tube_count() const { return 4 * n; }
  std::uint64_t short_tubes() const { return 4 * k; }
  std::uint64_t long_tubes() const { return (std::uint64_t{1} << m) - 2 * k; }

  friend bool operator==(const TubeParams&, const TubeParams&) = default;
};

/// The unique (m, k) with 2^m + 2k = 4n < 2^{m+1}.
inline TubeParams tube_parameters(std::uint64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "Gabai order must be >= 1");
  if (n > (std::uint64_t{1} << 40)) throw Error(ErrorKind::InvalidInput, "Gabai order too large");
  const std::uint64_t four_n = 4 * n;
  unsigned m = 0;
  while ((std::uint64_t{2} << m) <= four_n) ++m;
  return {n, m, (four_n - (std::uint64_t{1} << m)) / 2};
}

/// Verification depth used when none is requested.
inline unsigned default_depth(const TubeParams& p) { return p.m + 3; }

enum class Target { Low, High };

inline const char* to_string(Target t) { return t == Target::Low ? "LOW" : "HIGH"; }
inline Interval target_interval(Target t) { return t == Target::Low ? low_third() : high_third(); }

/// Stage s of a remaining closed interval of the Cantor construction (length
/// 3^{-s}, base-3 digits of its left end all 0 or 2), or nullopt.
inline std::optional<unsigned> cantor_stage_of(const Interval& iv) {
  if (iv.wraps || !iv.lo_closed || !iv.hi_closed || iv.lo < 0 || iv.hi > 1) return std::nullopt;
  Rational len = iv.hi - iv.lo;
  if (len <= 0) return std::nullopt;
  unsigned s = 0;
  while (len < 1) {
    len *= 3;
    ++s;
    if (s > 4096) return std::nullopt;
  }
  if (len != 1) return std::nullopt;
  const Rational scaled = iv.lo * Rational(boost::multiprecision::pow(BigInt(3), s));
  if (denominator(scaled) != 1) return std::nullopt;
  BigInt digits = numerator(scaled);
  for (unsigned i = 0; i < s; ++i) {
    const BigInt digit = digits % 3;
    if (digit == 1) return std::nullopt;
    digits /= 3;
  }
  return s;
}

struct TubeAssignment {
  Target target = Target::Low;
  int orientation = 1;

  friend bool operator==(const TubeAssignment&, const TubeAssignment&) = default;
};

struct Tube {
  Interval interval;
  unsigned stage = 0;
  Target target = Target::Low;
  int orientation = 1;

  friend bool operator==(const Tube&, const Tube&) = default;
};

struct TubePlan {
  TubeParams params;
  IntervalSet u_tilde;
  std::vector<Tube> tubes;
  /// Components of U_2..U_m ∪ Ũ_{m+1}, in increasing order.
  std::vector<Interval> gaps;
  PLCircleMap shadow;
};

/// The 4n closed tube intervals in increasing order, with their stage.
inline std::vector<std::pair<Interval, unsigned>> tube_intervals(const TubeParams& p) {
  const auto stage_m = cantor_intervals(p.m);
  const std::uint64_t count = stage_m.size();
  std::vector<std::pair<Interval, unsigned>> out;
  out.reserve(p.tube_count());
  for (std::uint64_t i = 0; i < count; ++i) {
    const Interval& iv = stage_m[i];
    if (i < p.k || i >= count - p.k) {
      const Rational third = (iv.hi - iv.lo) / 3;
      out.push_back({Interval::closed(iv.lo, iv.lo + third), p.m + 1});
      out.push_back({Interval::closed(iv.hi - third, iv.hi), p.m + 1});
    } else {
      out.push_back({iv, p.m});
    }
  }
  return out;
}

/// Tubes in [0,1/3] go onto [0,1/3], tubes in [2/3,1] onto [2/3,1];
/// orientations alternate along I starting with +1.
inline std::vector<TubeAssignment> default_assignment(const TubeParams& p) {
  std::vector<TubeAssignment> out;
  out.reserve(p.tube_count());
  int orientation = 1;
  for (const auto& [iv, stage] : tube_intervals(p)) {
    out.push_back({iv.hi <= make_rational(1, 3) ? Target::Low : Target::High, orientation});
    orientation = -orientation;
  }
  return out;
}

namespace detail {

// Fixed placement of the non-tube parts of the shadow. U0 contracts into the
// middle of U0, U1 into a small arc of U0, and the remaining gap components
// onto disjoint slots of U1.
inline AffinePiece u0_shadow() {
  return affine_onto(u0_interval(), Interval::open(make_rational(5, 4), make_rational(7, 4)));
}
inline AffinePiece u1_shadow() {
  return affine_onto(Interval::open(make_rational(1, 3), make_rational(2, 3)),
                     Interval::open(make_rational(17, 16), make_rational(19, 16)));
}

}  // namespace detail

inline TubePlan build_tube_plan(std::uint64_t n, const std::optional<std::vector<TubeAssignment>>& assignment = std::nullopt) {
  TubePlan plan;
  plan.params = tube_parameters(n);
  const TubeParams& p = plan.params;
  const auto assign = assignment.value_or(default_assignment(p));
  if (assign.size() != p.tube_count())
    throw Error(ErrorKind::PlanError, "assignment has " + std::to_string(assign.size()) + " entries, expected " +
                                          std::to_string(p.tube_count()));

  std::vector<AffinePiece> pieces;
  const auto intervals = tube_intervals(p);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& [iv, stage] = intervals[i];
    const TubeAssignment& a = assign[i];
    if (a.orientation != 1 && a.orientation != -1)
      throw Error(ErrorKind::PlanError, "tube " + std::to_string(i) + " has orientation outside {-1,+1}");
    plan.tubes.push_back({iv, stage, a.target, a.orientation});
    pieces.push_back(affine_onto(iv, target_interval(a.target), a.orientation));
  }

  const CantorStage stage = cantor_stage(p.m);
  std::vector<Interval> gaps, removed_tilde;
  for (unsigned level = 2; level <= p.m; ++level)
    for (const auto& c : stage.removed(level).segments()) gaps.push_back(c);
  const auto stage_m = cantor_intervals(p.m);
  for (std::uint64_t i = 0; i < stage_m.size(); ++i) {
    if (i < p.k || i >= stage_m.size() - p.k) {
      const Rational third = (stage_m[i].hi - stage_m[i].lo) / 3;
      removed_tilde.push_back(Interval::open(stage_m[i].lo + third, stage_m[i].hi - third));
    }
  }
  gaps.insert(gaps.end(), removed_tilde.begin(), removed_tilde.end());
  std::sort(gaps.begin(), gaps.end(), detail::segment_less);
  plan.u_tilde = IntervalSet(removed_tilde);
  plan.gaps = gaps;

  pieces.push_back(detail::u0_shadow());
  pieces.push_back(detail::u1_shadow());
  const Rational slot = make_rational(1, 3) / Rational(2 * gaps.size() + 2);
  for (std::size_t g = 0; g < gaps.size(); ++g) {
    const Rational lo = make_rational(1, 3) + slot * Rational(2 * g + 1);
    pieces.push_back(affine_onto(gaps[g], Interval::open(lo, lo + slot)));
  }
  plan.shadow = PLCircleMap(std::move(pieces));
  if (plan.shadow.total_domain() != IntervalSet::full_circle())
    throw Error(ErrorKind::PlanError, "tube plan shadow does not cover the circle");
  return plan;
}

struct ShiftResult {
  unsigned ell = 0;
  bool pass = false;

  friend bool operator==(const ShiftResult&, const ShiftResult&) = default;
};

namespace detail {

/// Cantor data up to a fixed depth: remaining[j] = C^j, removed[i] = U_i.
struct CantorTable {
  unsigned depth = 0;
  std::vector<IntervalSet> remaining;
  std::vector<IntervalSet> removed;  // removed[0] = U0

  explicit CantorTable(unsigned d) : depth(d) {
    const CantorStage stage = cantor_stage(d);
    removed.push_back(IntervalSet{u0_interval()});
    for (unsigned i = 1; i <= d; ++i) removed.push_back(stage.removed(i));
    for (unsigned j = 0; j <= d; ++j) remaining.push_back(cantor_stage(j).remaining);
  }
};

inline bool covers(const IntervalSet& set, const IntervalSet& sub) {
  for (const auto& s : sub.segments())
    if (set.restricted_to(s) != IntervalSet{s}) return false;
  return true;
}

/// Shift check of one tube against one target through an arbitrary map of
/// interval sets.
template <typename MapSet>
bool shift_holds(const Interval& tube, unsigned tube_stage, const Interval& target, unsigned ell,
                 const CantorTable& table, MapSet&& map_set) {
  const unsigned d = table.depth;
  if (d < ell) return false;
  if (map_set(table.remaining[d].restricted_to(tube)) != table.remaining[d - ell].restricted_to(target)) return false;
  for (unsigned i = tube_stage + 1; i <= d; ++i)
    if (map_set(table.removed[i].restricted_to(tube)) != table.removed[i - ell].restricted_to(target)) return false;
  return true;
}

inline ShiftResult verify_index_shift(const Interval& tube, const Interval& target, int orientation,
                                      const CantorTable& table) {
  const auto tube_stage = cantor_stage_of(tube);
  if (!tube_stage) throw Error(ErrorKind::InvalidTube, "tube is not a remaining Cantor interval");
  const auto target_stage = cantor_stage_of(target);
  if (!target_stage || *target_stage > *tube_stage)
    throw Error(ErrorKind::InvalidTube, "target is not a remaining Cantor interval at or above the tube's stage");
  const unsigned ell = *tube_stage - *target_stage;
  const AffinePiece a = affine_onto(tube, target, orientation);
  auto map_set = [&](const IntervalSet& s) {
    std::vector<Interval> out;
    for (const auto& seg : s.segments()) out.push_back(a.map_segment(seg));
    return IntervalSet(out);
  };
  return {ell, shift_holds(tube, *tube_stage, target, ell, table, map_set)};
}

}  // namespace detail

/// Checks that the affine map tube -> target carries C ∩ tube onto C ∩ target
/// and U_i ∩ tube onto U_{i-l} ∩ target for every level up to `depth`, where
/// l is the difference of the two Cantor stages.
inline ShiftResult verify_index_shift(const Interval& tube, const Interval& target, unsigned depth, int orientation = 1) {
  return detail::verify_index_shift(tube, target, orientation, detail::CantorTable(depth));
}
inline ShiftResult verify_index_shift(const Interval& tube, Target target, unsigned depth, int orientation = 1) {
  return verify_index_shift(tube, target_interval(target), depth, orientation);
}

struct ShiftCheck {
  std::size_t tube = 0;
  unsigned ell = 0;
  bool pass = false;

  friend bool operator==(const ShiftCheck&, const ShiftCheck&) = default;
};

struct LevelCheck {
  unsigned level = 0;
  bool pass = false;

  friend bool operator==(const LevelCheck&, const LevelCheck&) = default;
};

struct SetupReport {
  std::uint64_t n = 0;
  unsigned depth = 0;
  bool cond_AB = false;
  bool cond_V0 = false;
  std::vector<LevelCheck> cond_drop;
  std::vector<ShiftCheck> shift_checks;
  // Preimages of 1/6 and 5/6: how often the inner core crosses a meridional
  // disk of each third. Both must be 2n.
  std::uint64_t disk_hits_low = 0;
  std::uint64_t disk_hits_high = 0;

  bool passed() const {
    auto ok = [](const auto& c) { return c.pass; };
    return cond_AB && cond_V0 && std::all_of(cond_drop.begin(), cond_drop.end(), ok) &&
           std::all_of(shift_checks.begin(), shift_checks.end(), ok) && disk_hits_low == 2 * n &&
           disk_hits_high == 2 * n;
  }

  friend bool operator==(const SetupReport&, const SetupReport&) = default;
};

namespace detail {

inline bool tube_on_correct_side(const Tube& t) {
  return t.target == (t.interval.hi <= make_rational(1, 3) ? Target::Low : Target::High);
}

inline IntervalSet image_of_interval(const PLCircleMap& f, const Interval& iv) { return image(f, IntervalSet{iv}); }

inline SetupReport verify_setup(const TubePlan& plan, unsigned depth, const CantorTable& table) {
  const TubeParams& p = plan.params;
  SetupReport report;
  report.n = p.n;
  report.depth = depth;

  auto through_shadow = [&](const IntervalSet& s) { return image(plan.shadow, s); };

  // Condition (1): each half of the Cantor set lands exactly on the shallower
  // truncation of the same half.
  // The coarsest image truncation comes from the largest shift.
  unsigned max_shift = 0;
  for (const auto& t : plan.tubes) max_shift = std::max(max_shift, t.stage - 1);
  bool sides_ok = std::all_of(plan.tubes.begin(), plan.tubes.end(), tube_on_correct_side);
  const IntervalSet& deep = table.remaining[depth];
  const IntervalSet& shallow = table.remaining[depth - max_shift];
  const bool low_ok = through_shadow(deep.restricted_to(low_third())) == shallow.restricted_to(low_third());
  const bool high_ok = through_shadow(deep.restricted_to(high_third())) == shallow.restricted_to(high_third());
  report.cond_AB = sides_ok && low_ok && high_ok;

  for (std::size_t i = 0; i < plan.tubes.size(); ++i) {
    const Tube& t = plan.tubes[i];
    const unsigned ell = t.stage - 1;
    report.shift_checks.push_back(
        {i, ell, shift_holds(t.interval, t.stage, target_interval(t.target), ell, table, through_shadow)});
  }

  // Condition (2).
  const IntervalSet v0_v1 = unite(table.removed[0], table.removed[1]);
  report.cond_V0 = covers(table.removed[0], through_shadow(v0_v1));

  // Condition (3), one component at a time.
  for (unsigned level = 2; level <= depth; ++level) {
    bool ok = true;
    for (const auto& x : table.removed[level].segments()) {
      const IntervalSet y = image_of_interval(plan.shadow, x);
      if (y.segments().size() != 1) {
        ok = false;
        break;
      }
      bool found = false;
      for (unsigned j = level; j-- > 0;) {
        if (covers(table.removed[j], y)) {
          found = true;
          break;
        }
      }
      if (!found) {
        ok = false;
        break;
      }
    }
    report.cond_drop.push_back({level, ok});
  }

  auto hits = [&](const Rational& x) {
    return static_cast<std::uint64_t>(preimage(plan.shadow, IntervalSet{Interval::point(x)}).segments().size());
  };
  report.disk_hits_low = hits(make_rational(1, 6));
  report.disk_hits_high = hits(make_rational(5, 6));
  return report;
}

}  // namespace detail

inline SetupReport verify_setup(const TubePlan& plan, unsigned depth) {
  if (depth < plan.params.m + 2)
    throw Error(ErrorKind::DepthError, "verification depth " + std::to_string(depth) + " below m+2 = " +
                                           std::to_string(plan.params.m + 2));
  return detail::verify_setup(plan, depth, detail::CantorTable(depth));
}

struct PlanSearch {
  TubePlan plan;
  SetupReport report;
  std::uint64_t nodes_visited = 0;
  bool used_initial = false;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 1'000'000;

/// Returns a plan whose setup report passes. The initial assignment (default
/// if absent) is tried first; otherwise a depth-first search over the 4^{4n}
/// target/orientation choices runs, pruning any tube whose own shift or side
/// check fails. Exceeding `max_nodes` or exhausting the space throws.
inline PlanSearch find_verified_plan(std::uint64_t n, unsigned depth, std::uint64_t max_nodes = kDefaultSearchBudget,
                                     const std::optional<std::vector<TubeAssignment>>& initial = std::nullopt) {
  const TubeParams p = tube_parameters(n);
  if (depth < p.m + 2)
    throw Error(ErrorKind::DepthError, "verification depth " + std::to_string(depth) + " below m+2 = " +
                                           std::to_string(p.m + 2));
  const detail::CantorTable table(depth);
  PlanSearch result;
  result.plan = build_tube_plan(n, initial);
  result.report = detail::verify_setup(result.plan, depth, table);
  result.nodes_visited = 1;
  if (result.report.passed()) {
    result.used_initial = true;
    return result;
  }

  const auto intervals = tube_intervals(p);
  std::vector<TubeAssignment> chosen;
  chosen.reserve(intervals.size());
  std::uint64_t nodes = 1;
  static constexpr TubeAssignment kChoices[] = {
      {Target::Low, 1}, {Target::Low, -1}, {Target::High, 1}, {Target::High, -1}};

  auto search = [&](auto&& self) -> bool {
    if (chosen.size() == intervals.size()) {
      result.plan = build_tube_plan(n, chosen);
      result.report = detail::verify_setup(result.plan, depth, table);
      return result.report.passed();
    }
    const auto& [iv, stage] = intervals[chosen.size()];
    for (const auto& choice : kChoices) {
      if (++nodes > max_nodes)
        throw Error(ErrorKind::SearchExhausted, "tube assignment search exceeded " + std::to_string(max_nodes) + " nodes");
      const Tube candidate{iv, stage, choice.target, choice.orientation};
      if (!detail::tube_on_correct_side(candidate)) continue;
      if (!detail::verify_index_shift(iv, target_interval(choice.target), choice.orientation, table).pass) continue;
      chosen.push_back(choice);
      if (self(self)) return true;
      chosen.pop_back();
    }
    return false;
  };
  const bool found = search(search);
  result.nodes_visited = nodes;
  if (!found) throw Error(ErrorKind::SearchExhausted, "no tube assignment passes for n = " + std::to_string(n));
  return result;
}

struct InductionStep {
  std::size_t level = 0;
  std::uint64_t order = 0;
  bool setup_pass = false;
  bool ab_pass = false;
  bool v0_nested = false;

  bool passed() const { return setup_pass && ab_pass && v0_nested; }
  friend bool operator==(const InductionStep&, const InductionStep&) = default;
};

struct InductionReport {
  std::vector<std::uint64_t> orders;
  /// One report per distinct order, ascending by order.
  std::vector<SetupReport> setup_reports;
  std::vector<InductionStep> steps;
  /// V^0_0 ⊂ V^0_1 ⊂ ... ⊂ V^0_N, all drawn in the coordinates of T_N.
  std::vector<IntervalSet> v0_chain;
  /// With materialized embeddings: F_N(U0) reproduces v0_chain[0].
  std::optional<bool> embedding_consistent;

  bool passed() const {
    return std::all_of(steps.begin(), steps.end(), [](const InductionStep& s) { return s.passed(); }) &&
           embedding_consistent.value_or(true);
  }
  friend bool operator==(const InductionReport&, const InductionReport&) = default;
};

struct Induction {
  /// embeddings[i-1] = g_{n_i} ∘ ... ∘ g_{n_1}: T_0 in the coordinates of T_i.
  std::vector<PLCircleMap> embeddings;
  std::vector<TubePlan> plans;
  InductionReport report;
};

/// V^0 chain of a tower of shadows, transported into the last frame.
inline std::vector<IntervalSet> v0_chain(std::span<const PLCircleMap> shadows) {
  const std::size_t levels = shadows.size();
  std::vector<IntervalSet> chain(levels + 1);
  for (std::size_t j = 0; j <= levels; ++j) {
    IntervalSet s{u0_interval()};
    for (std::size_t step = j; step < levels; ++step) s = image(shadows[step], s);
    chain[j] = std::move(s);
  }
  return chain;
}

/// Builds the tower T_0 ⊂ T_1 ⊂ ... for the given Gabai orders and checks the
/// inductive properties at every step. `depth` defaults to m+3 per order.
inline Induction build_induction(std::span<const std::uint64_t> orders, std::optional<unsigned> depth = std::nullopt,
                                 bool materialize = true, std::uint64_t max_search = kDefaultSearchBudget) {
  Induction out;
  out.report.orders.assign(orders.begin(), orders.end());
  std::map<std::uint64_t, PlanSearch> by_order;
  for (auto n : orders) {
    if (by_order.count(n)) continue;
    const TubeParams p = tube_parameters(n);
    by_order.emplace(n, find_verified_plan(n, depth.value_or(default_depth(p)), max_search));
  }
  for (const auto& [n, found] : by_order) out.report.setup_reports.push_back(found.report);

  std::vector<PLCircleMap> shadows;
  for (auto n : orders) {
    out.plans.push_back(by_order.at(n).plan);
    shadows.push_back(by_order.at(n).plan.shadow);
  }
  out.report.v0_chain = v0_chain(shadows);

  std::map<std::uint64_t, bool> ab_by_order;
  for (const auto& [n, found] : by_order) {
    const unsigned d = found.report.depth;
    const detail::CantorTable table(d);
    unsigned max_shift = 0;
    for (const auto& t : found.plan.tubes) max_shift = std::max(max_shift, t.stage - 1);
    bool ok = true;
    for (const auto& half : {low_third(), high_third()})
      ok = ok && image(found.plan.shadow, table.remaining[d].restricted_to(half)) ==
                     table.remaining[d - max_shift].restricted_to(half);
    ab_by_order[n] = ok;
  }

  for (std::size_t i = 0; i < orders.size(); ++i) {
    const auto& chain = out.report.v0_chain;
    const bool nested = is_subset(chain[i], chain[i + 1]) && chain[i] != chain[i + 1];
    const SetupReport& setup = by_order.at(orders[i]).report;
    out.report.steps.push_back({i + 1, orders[i], setup.passed(), ab_by_order.at(orders[i]), nested});
  }

  if (materialize && !shadows.empty()) {
    out.embeddings.push_back(shadows.front());
    for (std::size_t i = 1; i < shadows.size(); ++i) out.embeddings.push_back(compose(shadows[i], out.embeddings.back()));
    out.report.embedding_consistent =
        image(out.embeddings.back(), IntervalSet{u0_interval()}) == out.report.v0_chain.front();
  }
  return out;
}

}  // namespace torus_ledger
