#include <gtest/gtest.h>

#include <vector>

#include "hvbox/core.hpp"
#include "hvbox/oracle.hpp"
#include "hvbox/random.hpp"
#include "support.hpp"

namespace hvbox {
namespace {

using V = std::vector<double>;

TEST(Dominance, ReflexiveCase) {
  const V a{1, 2, 3};
  EXPECT_TRUE(weakly_dominates(a, a));
  EXPECT_FALSE(dominates(a, a));
  EXPECT_FALSE(strictly_dominates(a, a));
}

TEST(Dominance, ComponentwiseStrict) {
  EXPECT_TRUE(strictly_dominates(V{1, 2}, V{2, 3}));
  EXPECT_TRUE(dominates(V{1, 2}, V{2, 3}));
}

TEST(Dominance, Incomparable) {
  EXPECT_FALSE(weakly_dominates(V{1, 5}, V{2, 3}));
  EXPECT_FALSE(weakly_dominates(V{2, 3}, V{1, 5}));
}

TEST(Dominance, DimensionMismatchThrows) {
  EXPECT_THROW((void)weakly_dominates(V{1, 2}, V{1, 2, 3}), InputError);
  EXPECT_THROW((void)dominates(V{1}, V{1, 2}), InputError);
  EXPECT_THROW((void)strictly_dominates(V{1, 2, 3}, V{1}), InputError);
}

TEST(Dominance, RelationsNest) {
  SplitMix64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    V a(3), b(3);
    for (auto& v : a) v = static_cast<double>(rng.below(3));
    for (auto& v : b) v = static_cast<double>(rng.below(3));
    if (strictly_dominates(a, b)) {
      EXPECT_TRUE(dominates(a, b));
    }
    if (dominates(a, b)) {
      EXPECT_TRUE(weakly_dominates(a, b));
    }
    EXPECT_EQ(dominates(a, b), weakly_dominates(a, b) && a != b);
  }
}

TEST(PerturbedOrder, ValueDecidesFirst) { EXPECT_TRUE(perturbed_less({3.0, 5}, {4.0, 1})); }

TEST(PerturbedOrder, LargerIdIsSmallerOnTies) {
  EXPECT_TRUE(perturbed_less({3.0, 5}, {3.0, 2}));
  EXPECT_FALSE(perturbed_less({3.0, 2}, {3.0, 5}));
}

TEST(PerturbedOrder, StrictTotalOrderOnRandomPairs) {
  SplitMix64 rng(11);
  std::vector<RankedValue> vals;
  for (std::size_t i = 0; i < 40; ++i) vals.push_back({static_cast<double>(rng.below(5)), i});
  for (const auto& a : vals) {
    EXPECT_FALSE(perturbed_less(a, a));
    for (const auto& b : vals) {
      if (a.id == b.id) continue;
      EXPECT_NE(perturbed_less(a, b), perturbed_less(b, a));
      if (a.value < b.value) {
        EXPECT_TRUE(perturbed_less(a, b));
      }
      for (const auto& c : vals) {
        if (perturbed_less(a, b) && perturbed_less(b, c)) {
          EXPECT_TRUE(perturbed_less(a, c));
        }
      }
    }
  }
}

TEST(FilterNondominated, DropsDominated) {
  const auto kept = filter_nondominated(testing::make_points({{1, 2}, {2, 1}, {2, 2}}));
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].coords, (V{1, 2}));
  EXPECT_EQ(kept[1].coords, (V{2, 1}));
}

TEST(FilterNondominated, KeepsIncomparablePair) {
  EXPECT_EQ(filter_nondominated(testing::make_points({{1, 2, 3}, {2, 1, 3}})).size(), 2u);
}

TEST(FilterNondominated, SingletonAndEmpty) {
  EXPECT_EQ(filter_nondominated(testing::make_points({{0.5, 0.5}})).size(), 1u);
  EXPECT_TRUE(filter_nondominated(std::vector<Point>{}).empty());
}

TEST(FilterNondominated, CollapsesDuplicatesToFirst) {
  const auto kept = filter_nondominated(testing::make_points({{3, 1}, {1, 3}, {1, 3}, {3, 1}}));
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].id, 0u);
  EXPECT_EQ(kept[1].id, 1u);
}

TEST(FilterNondominated, ResultIsStableAndMaximal) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto all = [&] {
      SplitMix64 rng(seed);
      std::vector<Point> pts;
      for (std::size_t i = 0; i < 30; ++i) pts.emplace_back(V{double(rng.below(4)), double(rng.below(4)), double(rng.below(4))}, i);
      return pts;
    }();
    const auto kept = filter_nondominated(all);
    EXPECT_NO_THROW(require_stable(kept));
    for (const auto& z : all) {
      bool covered = false;
      for (const auto& k : kept) covered = covered || weakly_dominates(k, z);
      EXPECT_TRUE(covered);
    }
  }
}

TEST(Canonicalize, MinimizePassesThrough) {
  const std::vector<V> raw{{0.3, 0.4}};
  const auto s = canonicalize(raw, {{1, 1}, Direction::minimize});
  EXPECT_EQ(s.points[0].coords, (V{0.3, 0.4}));
  EXPECT_EQ(s.ref, (V{1, 1}));
}

TEST(Canonicalize, MaximizeUnitBoxComplements) {
  const std::vector<V> raw{{0.3, 0.4}};
  const auto s = canonicalize(raw, {{0, 0}, Direction::maximize});
  EXPECT_DOUBLE_EQ(s.points[0][0], 0.7);
  EXPECT_DOUBLE_EQ(s.points[0][1], 0.6);
  EXPECT_EQ(s.ref, (V{1, 1}));
}

TEST(Canonicalize, RejectsBoundaryPointNamingIt) {
  const std::vector<V> raw{{0.5, 0.5}, {0.2, 1.0}};
  try {
    (void)canonicalize(raw, {{1, 1}, Direction::minimize});
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("point 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("component 2"), std::string::npos) << msg;
  }
  EXPECT_THROW((void)canonicalize(std::vector<V>{{0.0, 0.5}}, {{0, 0}, Direction::maximize}), InputError);
}

TEST(Canonicalize, RejectsArityMismatch) {
  EXPECT_THROW((void)canonicalize(std::vector<V>{{0.5, 0.5, 0.5}}, {{1, 1}, Direction::minimize}), InputError);
}

TEST(Canonicalize, PreservesHypervolume) {
  SplitMix64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const std::size_t p = 2 + rng.below(3);
    const std::size_t n = 1 + rng.below(6);
    std::vector<V> raw(n, V(p));
    V lo(p), hi(p);
    for (std::size_t j = 0; j < p; ++j) {
      lo[j] = rng.uniform(-5, 5);
      hi[j] = lo[j] + rng.uniform(0.5, 4);
    }
    for (auto& z : raw) {
      for (std::size_t j = 0; j < p; ++j) z[j] = rng.uniform(lo[j] + 1e-3, hi[j] - 1e-3);
    }
    // Native volumes: minimization against hi, maximization against lo.
    double native_min = 0.0, native_max = 0.0;
    {
      std::vector<Point> pts;
      for (const auto& z : raw) {
        V shifted(p);
        for (std::size_t j = 0; j < p; ++j) shifted[j] = z[j] - lo[j];
        pts.emplace_back(shifted);
      }
      V ref(p);
      for (std::size_t j = 0; j < p; ++j) ref[j] = hi[j] - lo[j];
      native_min = volume_inclusion_exclusion(filter_nondominated(pts), ref);
      std::vector<Point> neg;
      for (const auto& z : raw) {
        V flipped(p);
        for (std::size_t j = 0; j < p; ++j) flipped[j] = hi[j] - z[j];
        neg.emplace_back(flipped);
      }
      native_max = volume_inclusion_exclusion(filter_nondominated(neg), ref);
    }
    const auto cmin = canonicalize(raw, {hi, Direction::minimize});
    EXPECT_LT(relative_error(volume_inclusion_exclusion(filter_nondominated(cmin.points), cmin.ref), native_min), 1e-12);
    const auto cmax = canonicalize(raw, {lo, Direction::maximize});
    EXPECT_LT(relative_error(volume_inclusion_exclusion(filter_nondominated(cmax.points), cmax.ref), native_max), 1e-12);
    for (const auto& z : cmax.points) {
      for (std::size_t j = 0; j < p; ++j) {
        EXPECT_GT(z[j], 0.0);
        EXPECT_LT(z[j], cmax.ref[j]);
      }
    }
  }
}

TEST(CompensatedSum, RecoversCancelledBits) {
  CompensatedSum s;
  s += 1.0;
  for (int i = 0; i < 1000; ++i) s += 1e-16;
  s -= 1.0;
  EXPECT_NEAR(s.value(), 1e-13, 1e-20);
}

}  // namespace
}  // namespace hvbox
