#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "torus_ledger/circle.hpp"

using namespace torus_ledger;

namespace {

Rational R(const char* s) { return parse_rational(s); }
Interval closed(const char* a, const char* b) { return Interval::closed(R(a), R(b)); }
Interval open(const char* a, const char* b) { return Interval::open(R(a), R(b)); }

IntervalSet random_set(std::mt19937_64& rng) {
  const std::size_t count = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
  std::vector<Interval> parts;
  for (std::size_t i = 0; i < count; ++i) {
    auto pts = oracle::random_points(rng, 2);
    std::sort(pts.begin(), pts.end());
    std::uniform_int_distribution<int> bit(0, 1);
    Interval iv{pts[0], pts[1], bit(rng) == 1, bit(rng) == 1, false};
    if (bit(rng)) iv = Interval{pts[1], pts[0], iv.lo_closed, iv.hi_closed, true};
    parts.push_back(iv);
  }
  return IntervalSet(parts);
}

}  // namespace

TEST(Rational, ParsesExactForms) {
  EXPECT_EQ(R("-3/6"), make_rational(-1, 2));
  EXPECT_EQ(R("7"), Rational(7));
  EXPECT_EQ(to_string(make_rational(2, 6)), "1/3");
  for (const char* bad : {"0.1", "1/0", "", "1/", "/3", "1e3", " 1/3", "1/-3", "abc"})
    EXPECT_THROW(parse_rational(bad), Error) << bad;
}

TEST(Rational, InversePowerOfThree) {
  EXPECT_EQ(inverse_power_of_three(0), Rational(1));
  EXPECT_EQ(inverse_power_of_three(4), make_rational(1, 81));
}

TEST(Circle, ReducesPoints) {
  EXPECT_EQ(RationalPoint(R("5/2")).value(), R("1/2"));
  EXPECT_EQ(RationalPoint(R("-1/2")).value(), R("3/2"));
  EXPECT_EQ(RationalPoint(Rational(2)).value(), Rational(0));
  EXPECT_EQ(RationalPoint(Rational(-4)).value(), Rational(0));
}

TEST(IntervalSet, MergesTouchingPieces) {
  const IntervalSet s{Interval{0, R("1/3"), false, true, false}, open("1/3", "2/3")};
  ASSERT_EQ(s.segments().size(), 1u);
  EXPECT_EQ(s.segments()[0], open("0", "2/3"));
}

TEST(IntervalSet, KeepsOpenGapApart) {
  const IntervalSet s{open("0", "1/3"), open("1/3", "2/3")};
  EXPECT_EQ(s.segments().size(), 2u);
  EXPECT_FALSE(s.contains(R("1/3")));
}

TEST(IntervalSet, EmptyInput) {
  const IntervalSet s{};
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.measure(), Rational(0));
  EXPECT_EQ(s.component_count(), 0u);
}

TEST(IntervalSet, SortsUnorderedInput) {
  const auto u2 = cantor_stage(2).removed(2);
  const IntervalSet reversed{open("7/9", "8/9"), open("1/9", "2/9")};
  EXPECT_EQ(reversed, u2);
}

TEST(IntervalSet, RejectsMalformedIntervals) {
  EXPECT_THROW((IntervalSet{Interval{R("1/2"), R("1/3"), true, true, false}}), Error);
  EXPECT_THROW((IntervalSet{Interval{R("1/2"), R("1/2"), true, false, false}}), Error);
}

TEST(IntervalSet, WrappingComponent) {
  const IntervalSet s{closed("0", "1/4"), Interval{R("3/2"), Rational(2), true, false, false}};
  const auto comps = s.components();
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_TRUE(comps[0].wraps);
  EXPECT_EQ(comps[0].lo, R("3/2"));
  EXPECT_EQ(comps[0].hi, R("1/4"));
  EXPECT_EQ(s.measure(), R("3/4"));
  EXPECT_TRUE(s.contains(R("7/4")));
  EXPECT_TRUE(s.contains(Rational(0)));
}

TEST(IntervalSet, WrapInputSplitsAtSeam) {
  const IntervalSet s{Interval{R("3/2"), R("1/4"), true, true, true}};
  ASSERT_EQ(s.segments().size(), 2u);
  EXPECT_EQ(s.component_count(), 1u);
}

TEST(SetOps, IntersectWithThird) {
  const IntervalSet stage2 = cantor_stage(2).remaining;
  EXPECT_EQ(intersect(stage2, IntervalSet{low_third()}), (IntervalSet{closed("0", "1/9"), closed("2/9", "1/3")}));
}

TEST(SetOps, UnionOfRemovedLevels) {
  const auto st = cantor_stage(2);
  const IntervalSet u = unite(st.removed(1), st.removed(2));
  EXPECT_EQ(u.component_count(), 3u);
  EXPECT_EQ(u.measure(), R("1/3") + R("2/9"));
}

TEST(SetOps, ComplementOfUnitInterval) {
  EXPECT_EQ(complement(IntervalSet{unit_interval()}), IntervalSet{u0_interval()});
}

TEST(SetOps, RandomLaws) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const IntervalSet a = random_set(rng), b = random_set(rng);
    EXPECT_EQ(complement(complement(a)), a);
    EXPECT_EQ(a.measure() + complement(a).measure(), Rational(2));
    EXPECT_EQ(unite(a, b).measure() + intersect(a, b).measure(), a.measure() + b.measure());
    EXPECT_EQ(subtract(a, b), intersect(a, complement(b)));
    EXPECT_TRUE(is_subset(intersect(a, b), a));
    EXPECT_TRUE(disjoint(subtract(a, b), b));
    std::vector<Interval> raw = a.segments();
    std::shuffle(raw.begin(), raw.end(), rng);
    EXPECT_EQ(IntervalSet(raw), a);
    EXPECT_EQ(canonicalize(a.segments()), a);
    for (const auto& x : oracle::random_points(rng, 5))
      EXPECT_EQ(unite(a, b).contains(x), a.contains(x) || b.contains(x));
  }
}

TEST(SetOps, RestrictionMatchesIntersection) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const IntervalSet a = random_set(rng);
    auto pts = oracle::random_points(rng, 2);
    std::sort(pts.begin(), pts.end());
    const Interval w = Interval::closed(pts[0], pts[1]);
    EXPECT_EQ(a.restricted_to(w), intersect(a, IntervalSet{w}));
  }
}

TEST(Cantor, SmallStages) {
  EXPECT_EQ(cantor_stage(0).remaining, IntervalSet{unit_interval()});
  EXPECT_EQ(cantor_stage(1).remaining, (IntervalSet{low_third(), high_third()}));
  EXPECT_EQ(cantor_stage(1).removed(1), IntervalSet{open("1/3", "2/3")});
  EXPECT_EQ(cantor_stage(2).removed(2), (IntervalSet{open("1/9", "2/9"), open("7/9", "8/9")}));
}

TEST(Cantor, CountsLengthsAndMeasure) {
  for (unsigned d = 0; d <= 12; ++d) {
    const auto st = cantor_stage(d);
    const auto comps = st.remaining.components();
    ASSERT_EQ(comps.size(), std::size_t{1} << d);
    for (const auto& c : comps) EXPECT_EQ(c.length(), inverse_power_of_three(d));
    EXPECT_EQ(st.remaining.measure(), Rational(boost::multiprecision::pow(BigInt(2), d), boost::multiprecision::pow(BigInt(3), d)));
    EXPECT_EQ(cantor_intervals(d).size(), std::size_t{1} << d);
  }
}

TEST(Cantor, StagesPartitionTheCircle) {
  for (unsigned d = 1; d <= 8; ++d) {
    const auto st = cantor_stage(d);
    IntervalSet all = unite(st.remaining, IntervalSet{u0_interval()});
    for (unsigned i = 1; i <= d; ++i) {
      EXPECT_TRUE(disjoint(all, st.removed(i))) << "level " << i;
      EXPECT_EQ(st.removed(i).component_count(), std::size_t{1} << (i - 1));
      all = unite(all, st.removed(i));
    }
    EXPECT_EQ(all, IntervalSet::full_circle());
  }
}

TEST(Cantor, ThirdsOfTheCantorSet) {
  const auto [c1, c2] = c1_c2(1);
  EXPECT_EQ(c1, IntervalSet{low_third()});
  EXPECT_EQ(c2, IntervalSet{high_third()});
  const auto [d1, d2] = c1_c2(2);
  EXPECT_EQ(d1, (IntervalSet{closed("0", "1/9"), closed("2/9", "1/3")}));
  EXPECT_TRUE(disjoint(d1, d2));
  EXPECT_THROW(c1_c2(0), Error);
}

TEST(Lift, Examples) {
  EXPECT_TRUE(lift(IntervalSet{}, 3).empty());
  const IntervalSet twice = lift(IntervalSet{closed("0", "1/3")}, 2);
  EXPECT_EQ(twice, (IntervalSet{closed("0", "1/6"), closed("1", "7/6")}));
  const IntervalSet u1 = lift(IntervalSet{open("1/3", "2/3")}, 3);
  EXPECT_EQ(u1.component_count(), 3u);
  EXPECT_EQ(u1.measure(), R("1/3"));
  EXPECT_THROW(lift(u1, 0), Error);
}

TEST(Lift, SeamComponentStaysConnected) {
  const IntervalSet s{Interval{R("3/2"), R("1/2"), true, true, true}};
  const IntervalSet l = lift(s, 2);
  EXPECT_EQ(l.component_count(), 2u);
  EXPECT_EQ(l.measure(), s.measure());
}

TEST(Lift, PreservesMeasureAndMultipliesComponents) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const IntervalSet a = random_set(rng);
    const unsigned fold = std::uniform_int_distribution<unsigned>(1, 5)(rng);
    const IntervalSet l = lift(a, fold);
    EXPECT_EQ(l.measure(), a.measure());
    if (a != IntervalSet::full_circle()) {
      EXPECT_EQ(l.component_count(), a.component_count() * fold);
    }
    for (const auto& x : oracle::random_points(rng, 4))
      EXPECT_EQ(l.contains(x), a.contains(reduce_mod_circle(x * fold)));
  }
}
