#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "model.hpp"
#include "reeb.hpp"

namespace trajgroup {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Storage for grouping trees. A tree is identified by its root node.
///
/// Every node stands for a set of entities (the leaves below it) together
/// with the time since which that set has been continuously in one
/// component. Leaves are singletons. A node is a live maximal-group
/// candidate exactly when it is a root or starts strictly before its
/// parent; otherwise it is shadowed by the parent.
class GroupingForest {
 public:
  struct Node {
    EntitySet members;
    Time start = 0.0;
    std::vector<NodeId> children;
  };

  struct SplitResult {
    NodeId left = kNoNode;
    NodeId right = kNoNode;
    std::vector<MaximalGroup> ended;
  };

  explicit GroupingForest(std::size_t num_entities) : n_(num_entities) {}

  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t live_nodes() const noexcept { return nodes_.size() - free_.size(); }

  NodeId make_leaf(EntityId x, Time start) {
    EntitySet s(n_);
    s.insert(x);
    return make_node(std::move(s), start, {});
  }

  /// Tree for a fresh component: root at `start` over singleton leaves.
  NodeId make_component(const EntitySet& members, Time start) {
    if (members.size() == 1) return make_leaf(members.first(), start);
    std::vector<NodeId> leaves;
    members.for_each([&](EntityId x) { leaves.push_back(make_leaf(x, start)); });
    return make_node(members, start, std::move(leaves));
  }

  /// New root at time t over two trees with disjoint leaf sets.
  NodeId merge(NodeId a, NodeId b, Time t) {
    if (nodes_[a].members.intersects(nodes_[b].members))
      throw Error(ErrorCode::OverlappingLeaves, "merging trees that share entities");
    return make_node(nodes_[a].members | nodes_[b].members, t, {a, b});
  }

  /// Splits a tree at time t into the parts on `left` and on `right`.
  ///
  /// Nodes whose entities end up on both sides are groups that end at t;
  /// the candidates among them are returned in `ended`. Every surviving set
  /// keeps the start of the smallest old node containing it, i.e. the first
  /// time it was together on the way to t. Unary chains are contracted.
  SplitResult split(NodeId root, const EntitySet& left, const EntitySet& right, Time t) {
    const EntitySet& all = nodes_[root].members;
    if (left.intersects(right) || !((left | right) == all))
      throw Error(ErrorCode::PartitionMismatch, "split sides do not partition the tree's entities");
    SplitResult r;
    auto [l, rr] = split_node(root, kInfinity, left, t, r.ended);
    r.left = l;
    r.right = rr;
    return r;
  }

  /// Reports every candidate of the tree as ending at t and frees the tree.
  void finish(NodeId root, Time t, std::vector<MaximalGroup>& out) {
    report_all(root, kInfinity, t, out);
  }

  void release(NodeId root) {
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      for (NodeId c : nodes_[x].children) stack.push_back(c);
      free_node(x);
    }
  }

 private:
  static constexpr Time kInfinity = std::numeric_limits<Time>::infinity();

  NodeId make_node(EntitySet members, Time start, std::vector<NodeId> children) {
    NodeId id;
    if (!free_.empty()) {
      id = free_.back();
      free_.pop_back();
    } else {
      id = static_cast<NodeId>(nodes_.size());
      nodes_.emplace_back();
    }
    nodes_[id].members = std::move(members);
    nodes_[id].start = start;
    nodes_[id].children = std::move(children);
    return id;
  }

  void free_node(NodeId id) {
    nodes_[id].children.clear();
    free_.push_back(id);
  }

  std::pair<NodeId, NodeId> split_node(NodeId id, Time parent_start, const EntitySet& left, Time t,
                                       std::vector<MaximalGroup>& ended) {
    if (nodes_[id].members.subset_of(left)) return {id, kNoNode};
    if (!nodes_[id].members.intersects(left)) return {kNoNode, id};

    const Time start = nodes_[id].start;
    if (start < parent_start) ended.push_back({nodes_[id].members, {start, t}});

    std::vector<NodeId> lc, rc;
    const std::vector<NodeId> children = std::move(nodes_[id].children);
    for (NodeId c : children) {
      auto [a, b] = split_node(c, start, left, t, ended);
      if (a != kNoNode) lc.push_back(a);
      if (b != kNoNode) rc.push_back(b);
    }
    EntitySet lm = nodes_[id].members & left;
    EntitySet rm = nodes_[id].members - left;
    free_node(id);
    auto image = [&](std::vector<NodeId>& kids, EntitySet members) {
      if (kids.size() == 1) return kids.front();
      return make_node(std::move(members), start, std::move(kids));
    };
    const NodeId l = image(lc, std::move(lm));
    const NodeId r = image(rc, std::move(rm));
    return {l, r};
  }

  void report_all(NodeId root, Time parent_start, Time t, std::vector<MaximalGroup>& out) {
    struct Item {
      NodeId id;
      Time parent_start;
    };
    std::vector<Item> stack{{root, parent_start}};
    while (!stack.empty()) {
      const Item it = stack.back();
      stack.pop_back();
      const Node& nd = nodes_[it.id];
      if (nd.start < it.parent_start) out.push_back({nd.members, {nd.start, t}});
      for (NodeId c : nd.children) stack.push_back({c, nd.start});
      free_node(it.id);
    }
  }

  std::size_t n_;
  std::vector<Node> nodes_;
  std::vector<NodeId> free_;
};

inline void canonicalize(std::vector<MaximalGroup>& groups) {
  std::sort(groups.begin(), groups.end(), group_less);
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
}

/// All maximal groups of the Reeb graph with at least m entities and
/// duration at least delta, in canonical order.
///
/// Vertices are visited in topological order and each edge is labelled with
/// the grouping tree of its candidates; groups are reported when they end
/// at split and end vertices.
inline std::vector<MaximalGroup> compute_maximal_groups(const ReebGraph& g, std::size_t m, double delta) {
  GroupingForest forest(g.num_entities);
  std::vector<NodeId> tree(g.edges.size(), kNoNode);
  std::vector<MaximalGroup> found, out;

  auto take = [&](EdgeId e) {
    const NodeId r = tree[e];
    if (r == kNoNode) throw InvariantViolation("edge " + std::to_string(e) + " has no grouping tree");
    tree[e] = kNoNode;
    return r;
  };
  auto flush = [&] {
    for (auto& grp : found)
      if (grp.entities.size() >= m && grp.interval.length() >= delta) out.push_back(std::move(grp));
    found.clear();
  };

  for (VertexId v : g.topological_order()) {
    const ReebVertex& vx = g.vertices[v];
    switch (vx.kind) {
      case VertexKind::Start: {
        const EdgeId e = vx.out.at(0);
        tree[e] = forest.make_component(g.edges[e].component, vx.time);
        break;
      }
      case VertexKind::Merge: {
        const NodeId a = take(vx.in.at(0));
        const NodeId b = take(vx.in.at(1));
        tree[vx.out.at(0)] = forest.merge(a, b, vx.time);
        break;
      }
      case VertexKind::Split: {
        const EdgeId e1 = vx.out.at(0), e2 = vx.out.at(1);
        auto res = forest.split(take(vx.in.at(0)), g.edges[e1].component, g.edges[e2].component, vx.time);
        tree[e1] = res.left;
        tree[e2] = res.right;
        found = std::move(res.ended);
        flush();
        break;
      }
      case VertexKind::End: {
        forest.finish(take(vx.in.at(0)), vx.time, found);
        flush();
        break;
      }
    }
  }
  canonicalize(out);
  return out;
}

}  // namespace trajgroup
