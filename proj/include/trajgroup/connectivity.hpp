#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "entity_set.hpp"
#include "error.hpp"

namespace trajgroup {

/// Link-cut tree over a fixed node pool with path-minimum aggregates.
///
/// Each node carries a value; `path_min(u, v)` returns the node of minimum
/// value on the tree path u..v. Forest edges are modelled as nodes of their
/// own, so vertex nodes carry +inf and lose ties against edge nodes.
class LinkCutTree {
 public:
  static constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

  explicit LinkCutTree(std::size_t nodes = 0) { resize(nodes); }

  void resize(std::size_t nodes) {
    nodes_.resize(nodes);
    for (std::uint32_t i = 0; i < nodes; ++i)
      if (nodes_[i].min_node == kNil) nodes_[i].min_node = i;
  }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Resets node `x` to an isolated node with value `v`.
  void reset(std::uint32_t x, double v) {
    nodes_[x] = Node{};
    nodes_[x].value = v;
    nodes_[x].vertex = false;
    nodes_[x].min_node = x;
  }
  double value(std::uint32_t x) const { return nodes_[x].value; }

  void link(std::uint32_t u, std::uint32_t v) {
    make_root(u);
    nodes_[u].parent = v;
  }

  void cut(std::uint32_t u, std::uint32_t v) {
    make_root(u);
    access(v);
    splay(u);
    // u is now v's left child with no right subtree of its own.
    nodes_[u].child[1] = kNil;
    nodes_[v].parent = kNil;
    update(u);
  }

  bool connected(std::uint32_t u, std::uint32_t v) {
    if (u == v) return true;
    return find_root(u) == find_root(v);
  }

  /// Node with the smallest value on the u..v path. Requires connected(u, v).
  std::uint32_t path_min(std::uint32_t u, std::uint32_t v) {
    make_root(u);
    access(v);
    splay(v);
    return nodes_[v].min_node;
  }

 private:
  struct Node {
    std::uint32_t child[2] = {kNil, kNil};
    std::uint32_t parent = kNil;
    std::uint32_t min_node = kNil;
    double value = std::numeric_limits<double>::infinity();
    bool vertex = true;
    bool flip = false;
  };

  bool lighter(std::uint32_t a, std::uint32_t b) const {
    if (nodes_[a].value != nodes_[b].value) return nodes_[a].value < nodes_[b].value;
    return !nodes_[a].vertex && nodes_[b].vertex;
  }

  bool is_root(std::uint32_t x) const {
    const std::uint32_t p = nodes_[x].parent;
    return p == kNil || (nodes_[p].child[0] != x && nodes_[p].child[1] != x);
  }

  void update(std::uint32_t x) {
    Node& n = nodes_[x];
    n.min_node = x;
    for (std::uint32_t c : n.child)
      if (c != kNil && lighter(nodes_[c].min_node, n.min_node)) n.min_node = nodes_[c].min_node;
  }

  void push(std::uint32_t x) {
    Node& n = nodes_[x];
    if (!n.flip) return;
    std::swap(n.child[0], n.child[1]);
    for (std::uint32_t c : n.child)
      if (c != kNil) nodes_[c].flip = !nodes_[c].flip;
    n.flip = false;
  }

  void rotate(std::uint32_t x) {
    const std::uint32_t p = nodes_[x].parent;
    const std::uint32_t g = nodes_[p].parent;
    const int dir = nodes_[p].child[1] == x ? 1 : 0;
    const std::uint32_t b = nodes_[x].child[1 - dir];
    if (!is_root(p)) {
      if (nodes_[g].child[0] == p)
        nodes_[g].child[0] = x;
      else
        nodes_[g].child[1] = x;
    }
    nodes_[x].parent = g;
    nodes_[x].child[1 - dir] = p;
    nodes_[p].parent = x;
    nodes_[p].child[dir] = b;
    if (b != kNil) nodes_[b].parent = p;
    update(p);
    update(x);
  }

  void splay(std::uint32_t x) {
    // Push pending flips from the splay root down to x.
    stack_.clear();
    for (std::uint32_t y = x;; y = nodes_[y].parent) {
      stack_.push_back(y);
      if (is_root(y)) break;
    }
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) push(*it);

    while (!is_root(x)) {
      const std::uint32_t p = nodes_[x].parent;
      if (!is_root(p)) {
        const std::uint32_t g = nodes_[p].parent;
        const bool zigzig = (nodes_[g].child[0] == p) == (nodes_[p].child[0] == x);
        rotate(zigzig ? p : x);
      }
      rotate(x);
    }
  }

  void access(std::uint32_t x) {
    std::uint32_t last = kNil;
    for (std::uint32_t y = x; y != kNil; y = nodes_[y].parent) {
      splay(y);
      nodes_[y].child[1] = last;
      update(y);
      last = y;
    }
    splay(x);
  }

  void make_root(std::uint32_t x) {
    access(x);
    nodes_[x].flip = !nodes_[x].flip;
    push(x);
  }

  std::uint32_t find_root(std::uint32_t x) {
    access(x);
    std::uint32_t r = x;
    push(r);
    while (nodes_[r].child[0] != kNil) {
      r = nodes_[r].child[0];
      push(r);
    }
    splay(r);
    return r;
  }

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> stack_;
};

/// Maximum-weight spanning forest of a dynamic graph whose edge weights are
/// their scheduled deletion times.
///
/// With that weighting a deleted forest edge is the lightest edge present,
/// so a replacement across the cut can only be a non-forest edge of equal
/// weight (a tie). Those are checked explicitly, which keeps the structure
/// exact for simultaneous events and arbitrary schedules alike.
class SpanningForest {
 public:
  explicit SpanningForest(std::size_t n) : n_(n), lct_(n), adjacency_(n) {}

  std::size_t num_vertices() const noexcept { return n_; }

  bool has_edge(EntityId a, EntityId b) const { return edges_.count(key(a, b)) != 0; }

  bool is_forest_edge(EntityId a, EntityId b) const {
    auto it = edges_.find(key(a, b));
    return it != edges_.end() && it->second.node != LinkCutTree::kNil;
  }

  void insert(EntityId a, EntityId b, double weight) {
    if (a == b) throw Error(ErrorCode::InvalidParameter, "self loop");
    const std::uint64_t k = key(a, b);
    if (edges_.count(k)) throw Error(ErrorCode::DuplicateEdge, edge_name(a, b));
    EdgeRecord rec{weight, LinkCutTree::kNil};
    if (!lct_.connected(a, b)) {
      link_edge(a, b, rec);
    } else {
      const std::uint32_t lightest = lct_.path_min(a, b);
      const std::uint64_t lk = node_edge_[lightest - n_];
      EdgeRecord& light = edges_.at(lk);
      if (weight > light.weight) {
        unlink_edge(lk, light);
        non_forest_.emplace(light.weight, lk);
        link_edge(a, b, rec);
      }
    }
    if (rec.node == LinkCutTree::kNil) non_forest_.emplace(weight, k);
    edges_.emplace(k, rec);
  }

  void erase(EntityId a, EntityId b) {
    const std::uint64_t k = key(a, b);
    auto it = edges_.find(k);
    if (it == edges_.end()) throw Error(ErrorCode::MissingEdge, edge_name(a, b));
    EdgeRecord rec = it->second;
    edges_.erase(it);
    if (rec.node == LinkCutTree::kNil) {
      erase_non_forest(rec.weight, k);
      return;
    }
    unlink_edge(k, rec);
    // Any non-forest edge crossing the new cut had this edge on its tree
    // path, so its weight is <= rec.weight. Reconnect with the heaviest one.
    std::uint64_t best = 0;
    double best_weight = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (auto nf = non_forest_.begin(); nf != non_forest_.end() && nf->first <= rec.weight; ++nf) {
      const auto [u, v] = unkey(nf->second);
      if (!lct_.connected(u, v) && nf->first >= best_weight) {
        best = nf->second;
        best_weight = nf->first;
        found = true;
      }
    }
    if (found) {
      erase_non_forest(best_weight, best);
      const auto [u, v] = unkey(best);
      link_edge(u, v, edges_.at(best));
    }
  }

  bool same_component(EntityId a, EntityId b) { return lct_.connected(a, b); }

  /// Members of a's component, via the forest adjacency.
  EntitySet component(EntityId a) const {
    EntitySet out(n_);
    std::vector<EntityId> stack{a};
    out.insert(a);
    while (!stack.empty()) {
      const EntityId x = stack.back();
      stack.pop_back();
      for (EntityId y : adjacency_[x])
        if (!out.contains(y)) {
          out.insert(y);
          stack.push_back(y);
        }
    }
    return out;
  }

  /// Canonical label: smallest entity index in the component.
  EntityId component_of(EntityId a) const { return component(a).first(); }

  /// Of the components of a and b (assumed different), returns the smaller
  /// one and a flag telling whether it is a's. Cost O(size of the smaller).
  std::pair<EntitySet, bool> smaller_component(EntityId a, EntityId b) const {
    EntitySet seen_a(n_), seen_b(n_);
    std::vector<EntityId> sa{a}, sb{b};
    seen_a.insert(a);
    seen_b.insert(b);
    auto step = [&](std::vector<EntityId>& st, EntitySet& seen) {
      const EntityId x = st.back();
      st.pop_back();
      for (EntityId y : adjacency_[x])
        if (!seen.contains(y)) {
          seen.insert(y);
          st.push_back(y);
        }
    };
    while (true) {
      if (sa.empty()) return {std::move(seen_a), true};
      if (sb.empty()) return {std::move(seen_b), false};
      step(sa, seen_a);
      step(sb, seen_b);
    }
  }

  struct WeightedEdge {
    EntityId a, b;
    double weight;
  };

  std::vector<WeightedEdge> forest_edges() const { return collect(true); }
  std::vector<WeightedEdge> non_forest_edges() const { return collect(false); }

 private:
  struct EdgeRecord {
    double weight;
    std::uint32_t node;  ///< link-cut node, kNil when not in the forest
  };

  static std::uint64_t key(EntityId a, EntityId b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t{a} << 32) | b;
  }
  static std::pair<EntityId, EntityId> unkey(std::uint64_t k) {
    return {static_cast<EntityId>(k >> 32), static_cast<EntityId>(k & 0xffffffffu)};
  }
  static std::string edge_name(EntityId a, EntityId b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }

  void link_edge(EntityId a, EntityId b, EdgeRecord& rec) {
    std::uint32_t node;
    if (!free_nodes_.empty()) {
      node = free_nodes_.back();
      free_nodes_.pop_back();
    } else {
      node = static_cast<std::uint32_t>(lct_.size());
      lct_.resize(node + 1);
      node_edge_.push_back(0);
    }
    lct_.reset(node, rec.weight);
    node_edge_[node - n_] = key(a, b);
    lct_.link(a, node);
    lct_.link(node, b);
    rec.node = node;
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }

  void unlink_edge(std::uint64_t k, EdgeRecord& rec) {
    const auto [a, b] = unkey(k);
    lct_.cut(a, rec.node);
    lct_.cut(rec.node, b);
    free_nodes_.push_back(rec.node);
    rec.node = LinkCutTree::kNil;
    drop_adjacent(a, b);
    drop_adjacent(b, a);
  }

  void drop_adjacent(EntityId x, EntityId y) {
    auto& adj = adjacency_[x];
    auto it = std::find(adj.begin(), adj.end(), y);
    *it = adj.back();
    adj.pop_back();
  }

  void erase_non_forest(double weight, std::uint64_t k) {
    auto [lo, hi] = non_forest_.equal_range(weight);
    for (auto it = lo; it != hi; ++it)
      if (it->second == k) {
        non_forest_.erase(it);
        return;
      }
  }

  std::vector<WeightedEdge> collect(bool forest) const {
    std::vector<WeightedEdge> out;
    for (const auto& [k, rec] : edges_)
      if ((rec.node != LinkCutTree::kNil) == forest) {
        const auto [a, b] = unkey(k);
        out.push_back({a, b, rec.weight});
      }
    std::sort(out.begin(), out.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
      return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });
    return out;
  }

  std::size_t n_;
  LinkCutTree lct_;
  std::vector<std::vector<EntityId>> adjacency_;
  std::unordered_map<std::uint64_t, EdgeRecord> edges_;
  std::multimap<double, std::uint64_t> non_forest_;
  std::vector<std::uint64_t> node_edge_;  ///< edge key per link-cut edge node (offset n)
  std::vector<std::uint32_t> free_nodes_;
};

}  // namespace trajgroup
