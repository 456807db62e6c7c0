#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "torus_ledger/interlacing.hpp"

using namespace torus_ledger;

namespace {

Rational R(const char* s) { return parse_rational(s); }
Interval closed(const char* a, const char* b) { return Interval::closed(R(a), R(b)); }

std::vector<RationalPoint> pts(std::initializer_list<const char*> xs) {
  std::vector<RationalPoint> out;
  for (const char* x : xs) out.emplace_back(R(x));
  return out;
}

std::vector<RationalPoint> as_points(const std::vector<Rational>& xs) {
  return {xs.begin(), xs.end()};
}

BigInt k_of(std::initializer_list<const char*> a, std::initializer_list<const char*> b) {
  return interlace_points(pts(a), pts(b)).value;
}

}  // namespace

TEST(Interlace, PointExamples) {
  EXPECT_EQ(k_of({"0", "1"}, {"1/2", "3/2"}), 2);
  EXPECT_EQ(k_of({"0", "1/4"}, {"1", "5/4"}), 1);
  EXPECT_EQ(k_of({"0", "1/3", "1"}, {}), 0);
  EXPECT_EQ(k_of({}, {}), 0);
  EXPECT_EQ(k_of({"0", "2/3", "4/3"}, {"1/3", "1", "5/3"}), 3);
  EXPECT_EQ(interlace_points(pts({"0"}), pts({"1"})).kind, BoundKind::Exact);
}

TEST(Interlace, SharedPointIsInvalid) {
  EXPECT_THROW(interlace_points(pts({"0", "1/2"}), pts({"1/2"})), Error);
  EXPECT_THROW(interlace_points(pts({"0"}), pts({"2"})), Error);
}

TEST(Interlace, MatchesBruteForceOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t total = std::uniform_int_distribution<std::size_t>(0, 12)(rng);
    const std::size_t na = std::uniform_int_distribution<std::size_t>(0, total)(rng);
    const auto all = oracle::random_points(rng, total);
    const std::vector<Rational> a(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(na));
    const std::vector<Rational> b(all.begin() + static_cast<std::ptrdiff_t>(na), all.end());
    const BigInt expected(oracle::brute_force_interlace(a, b));
    const auto config = label_points(as_points(a), as_points(b));
    EXPECT_EQ(interlace(config).value, expected);
    EXPECT_EQ(interlace_exhaustive(config).value, expected);
  }
}

TEST(Interlace, SymmetricBoundedAndMonotone) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    const auto all = oracle::random_points(rng, 10);
    const std::vector<Rational> a(all.begin(), all.begin() + 5), b(all.begin() + 5, all.end());
    const BigInt k = interlace_points(as_points(a), as_points(b)).value;
    EXPECT_EQ(k, interlace_points(as_points(b), as_points(a)).value);
    EXPECT_LE(k, BigInt(5));
    const std::vector<Rational> a_sub(a.begin(), a.begin() + 3);
    EXPECT_LE(interlace_points(as_points(a_sub), as_points(b)).value, k);
  }
}

TEST(Interlace, RotationInvariant) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const auto all = oracle::random_points(rng, 8);
    const Rational shift = oracle::random_points(rng, 1)[0];
    std::vector<RationalPoint> a, b, ra, rb;
    for (std::size_t i = 0; i < all.size(); ++i) {
      (i % 3 ? a : b).emplace_back(all[i]);
      (i % 3 ? ra : rb).emplace_back(all[i] + shift);
    }
    EXPECT_EQ(interlace_points(a, b), interlace_points(ra, rb));
  }
}

TEST(InterlaceIntervals, Examples) {
  const IntervalSet a{closed("0", "1/9"), closed("2/3", "7/9")};
  const IntervalSet b{closed("2/9", "1/3"), closed("8/9", "1")};
  EXPECT_EQ(interlace_intervals(a, b).value, 2);
  // Two A components between the same pair of B gaps count once.
  const IntervalSet a2{closed("0", "1/9"), closed("2/9", "1/3")};
  EXPECT_EQ(interlace_intervals(a2, IntervalSet{closed("1", "3/2")}).value, 1);
  EXPECT_EQ(interlace_intervals(a, IntervalSet{}).value, 0);
  EXPECT_THROW(interlace_intervals(IntervalSet{closed("0", "1/2")}, IntervalSet{closed("1/3", "1")}), Error);
}

TEST(InterlaceIntervals, SeamComponentIsOneBlock) {
  const IntervalSet a{Interval{R("7/4"), R("1/4"), true, true, true}, closed("1", "9/8")};
  const IntervalSet b{closed("1/2", "3/4"), closed("3/2", "13/8")};
  EXPECT_EQ(interlace_intervals(a, b).value, 2);
}

TEST(InterlaceIntervals, CantorHalves) {
  const auto [c1, c2] = c1_c2(3);
  EXPECT_EQ(interlace_intervals(c1, c2).value, 1);
  EXPECT_EQ(interlace_intervals(IntervalSet{low_third()}, IntervalSet{high_third()}).value, 1);
}

TEST(Witness, SandwichKeepsTheInterlacing) {
  std::mt19937_64 rng(34);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto [a, b] = oracle::random_compact_pair(rng, 8);
    const BigInt k = interlace_intervals(a, b).value;
    if (k == 0) {
      if (!a.empty() || !b.empty()) {
        EXPECT_THROW(neighborhood_witness(a, b), Error);
      }
      continue;
    }
    ++checked;
    const NeighborhoodWitness w = neighborhood_witness(a, b);
    EXPECT_EQ(BigInt(w.u.component_count()), k);
    EXPECT_EQ(BigInt(w.v.component_count()), k);
    EXPECT_TRUE(is_subset(a, w.u));
    EXPECT_TRUE(is_subset(b, w.v));
    EXPECT_TRUE(disjoint(w.u, w.v));
    // Grow A and B inside U and V: a closed arc halfway between each
    // component and its neighborhood boundary.
    auto grow = [](const IntervalSet& s, const IntervalSet& nbhd) {
      std::vector<Interval> out;
      for (const auto& c : s.components()) {
        for (const auto& n : nbhd.components()) {
          if (!is_subset(IntervalSet{c}, IntervalSet{n})) continue;
          Rational lo_gap = c.lo - n.lo, hi_gap = n.hi - c.hi;
          if (lo_gap < 0) lo_gap += 2;
          if (hi_gap < 0) hi_gap += 2;
          const Rational lo = reduce_mod_circle(c.lo - lo_gap / 2), hi = reduce_mod_circle(c.hi + hi_gap / 2);
          out.push_back(Interval{lo, hi, true, true, lo > hi});
        }
      }
      return IntervalSet(out);
    };
    const IntervalSet ga = grow(a, w.u), gb = grow(b, w.v);
    EXPECT_TRUE(is_subset(a, ga));
    EXPECT_TRUE(is_subset(ga, w.u));
    EXPECT_EQ(interlace_intervals(ga, gb).value, k);
  }
  EXPECT_GT(checked, 50);
}

TEST(Witness, ZeroInterlacingHasNone) {
  try {
    neighborhood_witness(IntervalSet{closed("0", "1/3")}, IntervalSet{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoWitness);
  }
  EXPECT_THROW(neighborhood_witness(IntervalSet{Interval::open(0, R("1/3"))}, IntervalSet{closed("1", "3/2")}), Error);
}

TEST(Cover, Examples) {
  const IntervalSet a{closed("0", "1/9"), closed("2/3", "7/9")};
  const IntervalSet b{closed("2/9", "1/3"), closed("8/9", "1")};
  EXPECT_EQ(cover_interlace(a, b, 3).value, 6);
  EXPECT_EQ(cover_interlace(a, b, 1).value, 2);
  EXPECT_EQ(cover_interlace(a, IntervalSet{}, 4).value, 0);
}

TEST(Cover, MultipliesOnRandomPairs) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    const auto [a, b] = oracle::random_compact_pair(rng, 6);
    const unsigned fold = std::uniform_int_distribution<unsigned>(1, 5)(rng);
    const BigInt k = interlace_intervals(a, b).value;
    EXPECT_EQ(interlace_intervals(lift(a, fold), lift(b, fold)).value, k * fold);
  }
}

TEST(Bounds, WhiteheadAndMcMillan) {
  EXPECT_EQ(whitehead_bound(1), (InterlaceBound{1, BoundKind::Lower}));
  EXPECT_EQ(whitehead_bound(3).value, 5);
  EXPECT_EQ(whitehead_bound(0).value, 0);
  EXPECT_EQ(mcmillan_bound(1, 2), (InterlaceBound{3, BoundKind::Lower}));
  EXPECT_EQ(mcmillan_bound(3, 2).value, 11);
  EXPECT_EQ(mcmillan_bound(1, 1), whitehead_bound(1));
  EXPECT_EQ(mcmillan_bound(0, 5).value, 0);
  EXPECT_THROW(mcmillan_bound(-1, 2), Error);
  EXPECT_THROW(mcmillan_bound(1, 0), Error);
}

TEST(Bounds, MonotoneAndGrowing) {
  for (std::uint64_t n = 1; n <= 8; ++n) {
    for (int k = 0; k < 50; ++k) {
      EXPECT_LE(mcmillan_bound(k, n).value, mcmillan_bound(k + 1, n).value);
      if (k >= 1 && n >= 2) {
        EXPECT_GT(mcmillan_bound(k, n).value, BigInt(k));
      }
    }
  }
}
