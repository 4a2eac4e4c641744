#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace trajgroup;

TEST(Flock, DeterministicForSeed) {
  const Dataset a = gen::gen_flock(20, 100, 7);
  const Dataset b = gen::gen_flock(20, 100, 7);
  ASSERT_EQ(a.trajectories.size(), b.trajectories.size());
  for (std::size_t e = 0; e < a.trajectories.size(); ++e)
    for (std::size_t k = 0; k < a.times.size(); ++k) {
      ASSERT_EQ(a.trajectories[e][k].x, b.trajectories[e][k].x);
      ASSERT_EQ(a.trajectories[e][k].y, b.trajectories[e][k].y);
    }
  const Dataset c = gen::gen_flock(20, 100, 8);
  EXPECT_NE(a.trajectories[0][50].x, c.trajectories[0][50].x);
}

TEST(Flock, ShapeAndBounds) {
  const gen::FlockParams p;
  const Dataset d = gen::gen_flock(30, 200, 1, p);
  EXPECT_NO_THROW(validate(d));
  EXPECT_EQ(d.num_entities(), 30u);
  EXPECT_EQ(d.num_edges(), 200u);
  for (const auto& traj : d.trajectories)
    for (const auto& pt : traj) {
      EXPECT_GE(pt.x, -p.speed);
      EXPECT_LE(pt.x, p.world_size + p.speed);
    }
}

TEST(Flock, RejectsBadArguments) {
  EXPECT_THROW(gen::gen_flock(0, 10, 1), Error);
  EXPECT_THROW(gen::gen_flock(5, 0, 1), Error);
}

TEST(Flock, FullScaleValidates) {
  const Dataset d = gen::gen_flock(400, 818, 3);
  EXPECT_NO_THROW(validate(d));
  EXPECT_EQ(d.num_edges(), 818u);
}

TEST(Quadratic, ArgumentsAndValidity) {
  EXPECT_THROW(gen::gen_reeb_quadratic(5, 2), Error);
  const Dataset d = gen::gen_reeb_quadratic(8, 3);
  EXPECT_NO_THROW(validate(d));
  EXPECT_EQ(d.num_entities(), 8u);
}

TEST(Quadratic, DoublingTauRoughlyDoublesVertices) {
  const auto interior = [](std::size_t tau) {
    const ReebGraph g = build_reeb(gen::gen_reeb_quadratic(16, tau), gen::kQuadraticEps);
    return static_cast<double>(g.count(VertexKind::Merge) + g.count(VertexKind::Split));
  };
  EXPECT_NEAR(interior(8) / interior(4), 2.0, 0.1);
}

TEST(Quadratic, EveryPairMeetsEachStep) {
  const std::size_t n = 8;
  const ReebGraph g = build_reeb(gen::gen_reeb_quadratic(n, 2), gen::kQuadraticEps);
  // (n/2)^2 meetings per step, each a merge followed by a split.
  EXPECT_EQ(g.count(VertexKind::Merge), 2 * n * n / 4);
  EXPECT_EQ(g.count(VertexKind::Split), 2 * n * n / 4);
}

TEST(Cubic, ArgumentsAndValidity) {
  EXPECT_THROW(gen::gen_groups_cubic(6, 2), Error);
  EXPECT_THROW(gen::gen_groups_cubic(8, 1), Error);
  gen::CubicLayout bad;
  bad.reach = 1.0;
  EXPECT_THROW(gen::gen_groups_cubic(8, 2, bad), Error);
  for (const auto& layout : {gen::CubicLayout::for_groups(), gen::CubicLayout::for_encounters()}) {
    const Dataset d = gen::gen_groups_cubic(16, 2, layout);
    EXPECT_NO_THROW(validate(d));
    EXPECT_GT(layout.height(), layout.eps);
    EXPECT_LT(layout.height(), 2 * layout.eps);
  }
}

TEST(Cubic, StationaryRowIsAlwaysConnected) {
  const Dataset d = gen::gen_groups_cubic(16, 2);
  const ReebGraph g = build_reeb(d, 1.0);
  const EntitySet row = [&] {
    EntitySet s(16);
    for (EntityId x = 0; x < 12; ++x) s.insert(x);
    return s;
  }();
  for (double t = 0.05; t < 2.0; t += 0.1) {
    bool found = false;
    for (const auto& blk : g.partition_at(t)) found = found || row.subset_of(blk);
    EXPECT_TRUE(found) << "t=" << t;
  }
}

TEST(Cubic, MoversNeverTouchEachOther) {
  const Dataset d = gen::gen_groups_cubic(16, 2);
  for (EntityId a = 12; a < 16; ++a)
    for (EntityId b = a + 1; b < 16; ++b) EXPECT_TRUE(pair_events(d, a, b, 1.0).empty());
}
