#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace trajgroup;
using fixtures::set_of;

namespace {

struct OldNode {
  EntitySet members;
  Time start;
  Time parent_start;
};

void collect(const GroupingForest& f, NodeId id, Time parent_start, std::vector<OldNode>& out) {
  const auto& nd = f.node(id);
  out.push_back({nd.members, nd.start, parent_start});
  for (NodeId c : nd.children) collect(f, c, nd.start, out);
}

void collect_sets(const GroupingForest& f, NodeId id, std::vector<std::pair<EntitySet, Time>>& out) {
  if (id == kNoNode) return;
  const auto& nd = f.node(id);
  out.push_back({nd.members, nd.start});
  for (NodeId c : nd.children) collect_sets(f, c, out);
}

}  // namespace

TEST(GroupingForest, MergeTwoLeaves) {
  GroupingForest f(2);
  const NodeId r = f.merge(f.make_leaf(0, 0.0), f.make_leaf(1, 0.0), 1.0);
  EXPECT_EQ(f.node(r).members, set_of(2, {0, 1}));
  EXPECT_DOUBLE_EQ(f.node(r).start, 1.0);
  EXPECT_EQ(f.node(r).children.size(), 2u);
}

TEST(GroupingForest, MergeRejectsOverlap) {
  GroupingForest f(2);
  const NodeId a = f.make_leaf(0, 0.0);
  const NodeId b = f.make_component(set_of(2, {0, 1}), 0.0);
  EXPECT_THROW(f.merge(a, b, 1.0), Error);
}

TEST(GroupingForest, SplitRejectsBadPartition) {
  GroupingForest f(3);
  const NodeId r = f.make_component(set_of(3, {0, 1, 2}), 0.0);
  EXPECT_THROW(f.split(r, set_of(3, {0}), set_of(3, {1}), 1.0), Error);
}

TEST(GroupingForest, SplitPairEndsIt) {
  GroupingForest f(2);
  const NodeId r = f.merge(f.make_leaf(0, 0.0), f.make_leaf(1, 0.0), 1.0);
  const auto res = f.split(r, set_of(2, {0}), set_of(2, {1}), 3.0);
  ASSERT_EQ(res.ended.size(), 1u);
  EXPECT_EQ(res.ended[0].entities, set_of(2, {0, 1}));
  EXPECT_EQ(res.ended[0].interval, (Interval{1.0, 3.0}));
  EXPECT_DOUBLE_EQ(f.node(res.left).start, 0.0);
  EXPECT_DOUBLE_EQ(f.node(res.right).start, 0.0);
}

TEST(GroupingForest, SplitNestedPairsIntoOddAndEven) {
  // Entities 1..8 stored as 0..7. Pairs form at t1, quads at t2, all at t3.
  const double t0 = 0, t1 = 1, t2 = 2, t3 = 3, tv = 4;
  GroupingForest f(8);
  std::vector<NodeId> leaf;
  for (EntityId x = 0; x < 8; ++x) leaf.push_back(f.make_leaf(x, t0));
  const NodeId p13 = f.merge(leaf[0], leaf[2], t1), p57 = f.merge(leaf[4], leaf[6], t1);
  const NodeId p24 = f.merge(leaf[1], leaf[3], t1), p68 = f.merge(leaf[5], leaf[7], t1);
  const NodeId odd = f.merge(p13, p57, t2), even = f.merge(p24, p68, t2);
  const NodeId all = f.merge(odd, even, t3);
  const EntitySet odds = set_of(8, {0, 2, 4, 6}), evens = set_of(8, {1, 3, 5, 7});
  // Reshuffle so the split crosses every internal node: {1,3} with {2,4} ...
  GroupingForest g(8);
  std::vector<NodeId> l2;
  for (EntityId x = 0; x < 8; ++x) l2.push_back(g.make_leaf(x, t0));
  const NodeId a = g.merge(l2[0], l2[1], t1), b = g.merge(l2[2], l2[3], t1);
  const NodeId c = g.merge(l2[4], l2[5], t1), d = g.merge(l2[6], l2[7], t1);
  const NodeId ab = g.merge(a, b, t2), cd = g.merge(c, d, t2);
  const NodeId root = g.merge(ab, cd, t3);
  auto res = g.split(root, odds, evens, tv);

  // Every internal node separates and ends.
  std::vector<MaximalGroup> ended = res.ended;
  canonicalize(ended);
  std::vector<MaximalGroup> expected{
      {set_of(8, {0, 1}), {t1, tv}},       {set_of(8, {2, 3}), {t1, tv}},
      {set_of(8, {4, 5}), {t1, tv}},       {set_of(8, {6, 7}), {t1, tv}},
      {set_of(8, {0, 1, 2, 3}), {t2, tv}}, {set_of(8, {4, 5, 6, 7}), {t2, tv}},
      {EntitySet::full(8), {t3, tv}},
  };
  canonicalize(expected);
  EXPECT_EQ(ended, expected);

  // Surviving odd tree: {1,3,5,7} since t3 over {1,3} and {5,7} since t2.
  const auto& l = g.node(res.left);
  EXPECT_EQ(l.members, odds);
  EXPECT_DOUBLE_EQ(l.start, t3);
  ASSERT_EQ(l.children.size(), 2u);
  EXPECT_EQ(g.node(l.children[0]).members, set_of(8, {0, 2}));
  EXPECT_DOUBLE_EQ(g.node(l.children[0]).start, t2);
  EXPECT_EQ(g.node(l.children[1]).members, set_of(8, {4, 6}));

  // The first tree splits without ending any subgroup but the root.
  auto res2 = f.split(all, odds, evens, tv);
  ASSERT_EQ(res2.ended.size(), 1u);
  EXPECT_EQ(res2.ended[0].entities, EntitySet::full(8));
  EXPECT_EQ(f.node(res2.left).members, odds);
  EXPECT_DOUBLE_EQ(f.node(res2.left).start, t2);
}

TEST(GroupingForest, RandomSplitsMatchContainingNodes) {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 2 + rng() % 7;
    GroupingForest f(n);
    std::vector<NodeId> roots;
    for (EntityId x = 0; x < n; ++x) roots.push_back(f.make_leaf(x, 0.0));
    double t = 0.0;
    while (roots.size() > 1) {
      t += static_cast<double>(rng() % 2);  // repeated times exercise ties
      const std::size_t i = rng() % roots.size();
      std::swap(roots[i], roots.back());
      const NodeId a = roots.back();
      roots.pop_back();
      const std::size_t j = rng() % roots.size();
      roots[j] = f.merge(a, roots[j], t);
    }
    std::vector<OldNode> old;
    collect(f, roots[0], INFINITY, old);
    EntitySet left(n);
    while (left.empty() || left.size() == n) {
      left = EntitySet(n);
      for (EntityId x = 0; x < n; ++x)
        if (rng() % 2) left.insert(x);
    }
    const EntitySet right = EntitySet::full(n) - left;
    auto res = f.split(roots[0], left, right, t + 1);

    std::vector<MaximalGroup> want;
    for (const auto& o : old)
      if (o.members.intersects(left) && o.members.intersects(right) && o.start < o.parent_start)
        want.push_back({o.members, {o.start, t + 1}});
    canonicalize(want);
    canonicalize(res.ended);
    ASSERT_EQ(res.ended, want);

    std::vector<std::pair<EntitySet, Time>> survivors;
    collect_sets(f, res.left, survivors);
    collect_sets(f, res.right, survivors);
    for (const auto& [s, start] : survivors) {
      double first_together = INFINITY;
      for (const auto& o : old)
        if (s.subset_of(o.members)) first_together = std::min(first_together, o.start);
      ASSERT_DOUBLE_EQ(start, first_together);
    }
  }
}

TEST(MaximalGroups, StaticComponent) {
  // Every subset is together on the whole window, so the full set covers
  // all of them and is the only maximal group.
  std::vector<std::vector<fixtures::Point>> t;
  for (int i = 0; i < 4; ++i) t.push_back({{static_cast<double>(i), 0}, {static_cast<double>(i), 0}});
  const Dataset d = fixtures::make({0, 3}, t);
  const auto groups = compute_maximal_groups(build_reeb(d, 1.0), 1, 0.0);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].entities, EntitySet::full(4));
  EXPECT_EQ(groups[0].interval, (Interval{0, 3}));
  EXPECT_EQ(oracle::brute_maximal_groups(d, 1.0, 1, 0.0), groups);
}

TEST(MaximalGroups, CrossingPairsLongDuration) {
  const ReebGraph g = build_reeb(fixtures::crossing_pairs(), fixtures::kCrossingEps);
  const auto groups = compute_maximal_groups(g, 2, 0.2);
  std::vector<MaximalGroup> want{
      {set_of(6, {0, 1}), {0, 5}},
      {set_of(6, {2, 3}), {0, 5}},
      {set_of(6, {4, 5}), {0, 5}},
      {set_of(6, {0, 1, 2, 3}), {fixtures::kCrossingJoinStart, fixtures::kCrossingJoinEnd}},
  };
  canonicalize(want);
  ASSERT_EQ(groups.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(groups[i].entities, want[i].entities);
    EXPECT_NEAR(groups[i].interval.start, want[i].interval.start, 1e-9);
    EXPECT_NEAR(groups[i].interval.end, want[i].interval.end, 1e-9);
  }
}

TEST(MaximalGroups, NoCoveringPairsAndFilters) {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 200; ++iter) {
    const auto inst = fixtures::random_instance(rng);
    const ReebGraph g = build_reeb(inst.data, inst.eps);
    const auto all = compute_maximal_groups(g, 1, 0.0);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (i == j) continue;
        const bool covers = all[i].entities.subset_of(all[j].entities) && all[j].interval.contains(all[i].interval);
        ASSERT_FALSE(covers);
      }
    const auto big = compute_maximal_groups(g, 2, 1.0);
    for (const auto& grp : big) {
      EXPECT_GE(grp.entities.size(), 2u);
      EXPECT_GE(grp.interval.length(), 1.0);
      EXPECT_NE(std::find(all.begin(), all.end(), grp), all.end());
    }
  }
}

TEST(MaximalGroups, MatchBruteForce) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 100; ++iter) {
    const auto inst = fixtures::random_instance(rng);
    const ReebGraph g = build_reeb(inst.data, inst.eps);
    const auto fast = compute_maximal_groups(g, 2, 0.5);
    const auto brute = oracle::brute_maximal_groups(inst.data, inst.eps, 2, 0.5);
    ASSERT_EQ(fast.size(), brute.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      EXPECT_EQ(fast[i].entities, brute[i].entities);
      EXPECT_NEAR(fast[i].interval.start, brute[i].interval.start, 1e-9);
      EXPECT_NEAR(fast[i].interval.end, brute[i].interval.end, 1e-9);
    }
  }
}

TEST(MaximalGroups, CubicGeneratorMatchesBruteForce) {
  const Dataset d = gen::gen_groups_cubic(8, 2);
  const ReebGraph g = build_reeb(d, 1.0);
  const auto fast = compute_maximal_groups(g, 1, 0.0);
  const auto brute = oracle::brute_maximal_groups(d, 1.0, 1, 0.0);
  ASSERT_EQ(fast.size(), brute.size());
  for (std::size_t i = 0; i < fast.size(); ++i) {
    EXPECT_EQ(fast[i].entities, brute[i].entities);
    EXPECT_NEAR(fast[i].interval.start, brute[i].interval.start, 1e-9);
    EXPECT_NEAR(fast[i].interval.end, brute[i].interval.end, 1e-9);
  }
}
