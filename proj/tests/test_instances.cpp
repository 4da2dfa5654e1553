#include <gtest/gtest.h>

#include <sstream>
#include <vector>

#include "hvbox/instances.hpp"
#include "hvbox/oracle.hpp"
#include "hvbox/wfg.hpp"
#include "support.hpp"

namespace hvbox {
namespace {

using V = std::vector<double>;

TEST(Instances, CxlAreStableAndInsideUnitBox) {
  for (auto type : {InstanceType::C, InstanceType::X, InstanceType::L}) {
    for (std::size_t p : {2u, 4u, 7u}) {
      const auto inst = generate(InstanceSpec{type, p, 60, 0, 17, false});
      ASSERT_EQ(inst.size(), 60u);
      EXPECT_EQ(inst.ref, V(p, 1.0));
      EXPECT_NO_THROW(require_stable(inst.points));
      for (const auto& z : inst.points) {
        for (double v : z.coords) {
          EXPECT_GT(v, 0.0);
          EXPECT_LT(v, 1.0);
        }
      }
    }
  }
}

TEST(Instances, ConcaveFrontLiesOnUnitSphere) {
  const auto inst = generate(InstanceSpec{InstanceType::C, 3, 30, 0, 4, false});
  for (const auto& z : inst.points) {
    double s = 0;
    for (double v : z.coords) s += v * v;
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
}

TEST(Instances, TransformsOfUnitNormDraw) {
  EXPECT_EQ(transform_cxl(InstanceType::C, V{0.6, 0.8}), (V{0.6, 0.8}));
  const auto x = transform_cxl(InstanceType::X, V{0.6, 0.8});
  EXPECT_DOUBLE_EQ(x[0], 0.4);
  EXPECT_DOUBLE_EQ(x[1], 1.0 - 0.8);
  const auto l = transform_cxl(InstanceType::L, V{1, 3});
  EXPECT_EQ(l, (V{0.25, 0.75}));
}

TEST(Instances, SeedDeterminesInstance) {
  const InstanceSpec spec{InstanceType::X, 5, 40, 0, 123, false};
  EXPECT_EQ(to_front(generate(spec).points), to_front(generate(spec).points));
  auto other = spec;
  other.seed = 124;
  EXPECT_NE(to_front(generate(spec).points), to_front(generate(other).points));
}

TEST(Instances, HardRowsForSmallestCase) {
  const auto h = generate(InstanceSpec{InstanceType::H, 4, 0, 2, 0, false});
  ASSERT_EQ(h.size(), 4u);
  EXPECT_DOUBLE_EQ(h.scale, 5.0);
  std::vector<V> scaled;
  for (const auto& z : h.points) {
    V row;
    for (double v : z.coords) row.push_back(v * 5.0);
    scaled.push_back(row);
  }
  std::sort(scaled.begin(), scaled.end());
  EXPECT_EQ(scaled, (std::vector<V>{{1, 2, 3, 4}, {2, 1, 4, 3}, {3, 4, 1, 2}, {4, 3, 2, 1}}));
  EXPECT_NEAR(volume_inclusion_exclusion(h.points, h.ref), 69.0 / 625.0, 1e-15);
}

TEST(Instances, HardSixObjectiveFirstRow) {
  const auto h = generate(InstanceSpec{InstanceType::H, 6, 0, 3, 0, false});
  ASSERT_EQ(h.size(), 9u);
  EXPECT_NO_THROW(require_stable(h.points));
  bool found = false;
  for (const auto& z : h.points) {
    V row;
    for (double v : z.coords) row.push_back(std::round(v * h.scale));
    found = found || row == V{9, 7, 6, 4, 3, 1};
  }
  EXPECT_TRUE(found);
}

TEST(Instances, RawAndNormalizedM) {
  const auto raw = generate(InstanceSpec{InstanceType::M, 4, 0, 2, 0, false});
  EXPECT_EQ(raw.ref, V(4, 5.0));
  EXPECT_DOUBLE_EQ(wfg_sliced(raw.points, raw.ref).volume, 525.0);
  const auto norm = generate(InstanceSpec{InstanceType::M, 4, 0, 2, 0, true});
  EXPECT_NEAR(volume_inclusion_exclusion(norm.points, norm.ref), 175.0 / 432.0, 1e-15);
}

TEST(Instances, HardRequiresEvenDimension) {
  EXPECT_THROW((void)generate(InstanceSpec{InstanceType::H, 5, 0, 2, 0, false}), InputError);
  EXPECT_THROW((void)generate(InstanceSpec{InstanceType::M, 4, 0, 0, 0, false}), InputError);
}

TEST(Instances, TypeParsing) {
  EXPECT_EQ(instance_type_from("L"), InstanceType::L);
  EXPECT_EQ(to_char(InstanceType::M), 'M');
  EXPECT_THROW((void)instance_type_from("Q"), InputError);
}

TEST(Instances, ComplementTwinHasSameMaximizationVolume) {
  const auto inst = generate(InstanceSpec{InstanceType::C, 3, 12, 0, 9, false});
  const auto twin = complement_twin(inst.points);
  const auto back = canonicalize(twin, {V(3, 0.0), Direction::maximize});
  EXPECT_LT(relative_error(volume_inclusion_exclusion(back.points, back.ref),
                           volume_inclusion_exclusion(inst.points, inst.ref)),
            1e-12);
}

TEST(FileFormat, RoundTripIsBitExact) {
  const auto inst = generate(InstanceSpec{InstanceType::L, 4, 25, 0, 3, false});
  const std::vector<Front> fronts{to_front(inst.points), {{0.1, 0.2, 0.3, 0.4}}};
  std::stringstream ss;
  write_fronts(ss, fronts);
  EXPECT_EQ(read_fronts(ss), fronts);
}

TEST(FileFormat, CommentsAndSeparators) {
  std::istringstream in("% header\n1 2\n3 4\n#\n% second\n5 6\n");
  const auto fronts = read_fronts(in);
  ASSERT_EQ(fronts.size(), 2u);
  EXPECT_EQ(fronts[0], (Front{{1, 2}, {3, 4}}));
  EXPECT_EQ(fronts[1], (Front{{5, 6}}));
}

TEST(FileFormat, ReportsLineOfBadToken) {
  std::istringstream in("1 2\n3 x\n");
  try {
    (void)read_fronts(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(FileFormat, RejectsRaggedRows) {
  std::istringstream in("1 2\n3 4 5\n");
  EXPECT_THROW((void)read_fronts(in), ParseError);
}

}  // namespace
}  // namespace hvbox
