#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "torus_ledger/plmap.hpp"

using namespace torus_ledger;

namespace {

Rational R(const char* s) { return parse_rational(s); }
Interval closed(const char* a, const char* b) { return Interval::closed(R(a), R(b)); }
Interval open(const char* a, const char* b) { return Interval::open(R(a), R(b)); }
RationalPoint P(const char* s) { return RationalPoint(R(s)); }

std::vector<Rational> sorted_cuts(std::mt19937_64& rng, std::size_t count) {
  auto cuts = oracle::random_points(rng, count, {Rational(0)});
  cuts.push_back(0);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(2);
  return cuts;
}

// Total map: [c_i, c_{i+1}) onto a random sub-segment of [0,2).
PLCircleMap random_total_map(std::mt19937_64& rng) {
  const auto cuts = sorted_cuts(rng, std::uniform_int_distribution<std::size_t>(0, 4)(rng));
  std::vector<AffinePiece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto t = oracle::random_points(rng, 2);
    std::sort(t.begin(), t.end());
    const Interval from{cuts[i], cuts[i + 1], true, false, false};
    pieces.push_back(affine_onto(from, {t[0], t[1], true, false, false}, 1));
  }
  return PLCircleMap(pieces);
}

// Injective map on open pieces: permuted, possibly reversed, open targets.
PLCircleMap random_injective_map(std::mt19937_64& rng) {
  const std::size_t count = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
  const auto dom = sorted_cuts(rng, count);
  const auto tgt = sorted_cuts(rng, count);
  std::vector<std::size_t> perm(count + 1);
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<AffinePiece> pieces;
  for (std::size_t i = 0; i + 1 < dom.size(); ++i) {
    const std::size_t j = perm[i];
    const int orient = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
    pieces.push_back(affine_onto(Interval::open(dom[i], dom[i + 1]), Interval::open(tgt[j], tgt[j + 1]), orient));
  }
  return PLCircleMap(pieces);
}

const PLCircleMap kTriple({AffinePiece{closed("0", "1/3"), 3, 0}});

}  // namespace

TEST(PLMap, IdentityApplies) {
  EXPECT_EQ(apply(PLCircleMap::identity(), P("1/3")), P("1/3"));
  EXPECT_EQ(apply(PLCircleMap::identity(), P("0")), P("0"));
}

TEST(PLMap, AffineExamples) {
  const PLCircleMap f({affine_onto(closed("0", "1/9"), closed("0", "1/3"))});
  EXPECT_EQ(apply(f, P("1/27")), P("1/9"));
  const PLCircleMap g({affine_onto(closed("2/3", "1"), closed("0", "1"))});
  EXPECT_EQ(g.pieces()[0].slope, Rational(3));
  EXPECT_EQ(g.pieces()[0].offset, Rational(-2));
  EXPECT_EQ(apply(g, P("7/9")), P("1/3"));
}

TEST(PLMap, ReversingPiece) {
  const PLCircleMap f({affine_onto(closed("0", "1/3"), closed("2/3", "1"), -1)});
  EXPECT_EQ(apply(f, P("0")), P("1"));
  EXPECT_EQ(apply(f, P("1/3")), P("2/3"));
  const IntervalSet head{Interval{0, R("1/9"), true, false, false}};
  const IntervalSet tail{Interval{R("8/9"), R("1"), false, true, false}};
  EXPECT_EQ(image(f, head), tail);
}

TEST(PLMap, OutsideDomainIsAnError) {
  const PLCircleMap f({affine_onto(closed("0", "1/9"), closed("0", "1/3"))});
  try {
    apply(f, P("1/2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainError);
  }
}

TEST(PLMap, ImagesAndPreimages) {
  EXPECT_EQ(image(PLCircleMap::identity(), cantor_stage(1).removed(1)), cantor_stage(1).removed(1));
  const PLCircleMap f({affine_onto(closed("0", "1/9"), closed("0", "1/3"))});
  EXPECT_EQ(image(f, IntervalSet{open("1/27", "2/27")}), IntervalSet{open("1/9", "2/9")});
  EXPECT_EQ(preimage(f, IntervalSet{open("1/9", "2/9"), open("7/9", "8/9")}), IntervalSet{open("1/27", "2/27")});
  EXPECT_TRUE(image(f, IntervalSet{open("1", "2")}).empty());
}

TEST(PLMap, RejectsBadPieces) {
  EXPECT_THROW(PLCircleMap({AffinePiece{closed("0", "1"), 0, 0}}), Error);
  EXPECT_THROW(PLCircleMap({AffinePiece{closed("0", "1/2"), 1, 0}, AffinePiece{closed("1/2", "1"), 1, 1}}), Error);
  EXPECT_THROW(PLCircleMap({AffinePiece{closed("0", "1"), 3, 0}}), Error);
  EXPECT_THROW(PLCircleMap({AffinePiece{Interval{R("3/2"), R("1/2"), true, true, true}, 1, 0}}), Error);
}

TEST(PLMap, MergesAgreeingPieces) {
  const PLCircleMap f({AffinePiece{Interval{0, R("1/2"), true, false, false}, 1, 0},
                       AffinePiece{closed("1/2", "1"), 1, 0}});
  ASSERT_EQ(f.pieces().size(), 1u);
  EXPECT_EQ(f.pieces()[0].domain, closed("0", "1"));
}

TEST(PLMap, AdjunctionOnRandomMaps) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const PLCircleMap f = random_total_map(rng);
    const IntervalSet s{open("1/3", "2/3"), closed("1", "5/4"), Interval::point(R("3/2"))};
    const IntervalSet pre = preimage(f, s);
    const IntervalSet img = image(f, s);
    for (const auto& x : oracle::random_points(rng, 12)) {
      const RationalPoint fx = apply(f, RationalPoint(x));
      EXPECT_EQ(pre.contains(x), s.contains(fx));
      if (s.contains(x)) {
        EXPECT_TRUE(img.contains(fx));
      }
    }
    EXPECT_TRUE(is_subset(image(f, pre), s));
  }
}

TEST(Compose, IdentityIsNeutral) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const PLCircleMap f = random_total_map(rng);
    EXPECT_EQ(compose(PLCircleMap::identity(), f), f);
    EXPECT_EQ(compose(f, PLCircleMap::identity()), f);
  }
}

TEST(Compose, TripleTwice) {
  const PLCircleMap ff = compose(kTriple, kTriple);
  ASSERT_EQ(ff.pieces().size(), 1u);
  EXPECT_EQ(ff.pieces()[0].domain, closed("0", "1/9"));
  EXPECT_EQ(ff.pieces()[0].slope, Rational(9));
  EXPECT_EQ(apply(ff, P("1/81")), P("1/9"));
}

TEST(Compose, DisjointRangeIsAnError) {
  const PLCircleMap far({affine_onto(closed("0", "1/3"), closed("3/2", "7/4"))});
  try {
    compose(kTriple, far);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CompositionError);
  }
}

TEST(Compose, AssociativeAndPointwise) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const PLCircleMap f = random_total_map(rng), g = random_total_map(rng), h = random_total_map(rng);
    const PLCircleMap left = compose(h, compose(g, f));
    const PLCircleMap right = compose(compose(h, g), f);
    EXPECT_EQ(left, right);
    for (const auto& x : oracle::random_points(rng, 8))
      EXPECT_EQ(apply(left, RationalPoint(x)), apply(h, apply(g, apply(f, RationalPoint(x)))));
  }
}

TEST(Invert, Examples) {
  EXPECT_EQ(invert(PLCircleMap::identity()), PLCircleMap::identity());
  const PLCircleMap inv = invert(kTriple);
  EXPECT_EQ(inv.pieces()[0].domain, closed("0", "1"));
  EXPECT_EQ(apply(inv, P("1/3")), P("1/9"));
  const PLCircleMap fold({AffinePiece{closed("0", "1/2"), 1, 0}, AffinePiece{closed("1", "3/2"), 1, -1}});
  EXPECT_FALSE(fold.is_injective());
  EXPECT_THROW(invert(fold), Error);
}

TEST(Invert, RoundTripsRandomInjectiveMaps) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const PLCircleMap f = random_injective_map(rng);
    ASSERT_TRUE(f.is_injective());
    const PLCircleMap g = invert(f);
    for (const auto& x : oracle::random_points(rng, 10)) {
      if (!f.total_domain().contains(x)) continue;
      EXPECT_EQ(apply(g, apply(f, RationalPoint(x))), RationalPoint(x));
    }
    EXPECT_EQ(invert(g), f);
  }
}
