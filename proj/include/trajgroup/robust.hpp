#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <tuple>
#include <vector>

#include "reeb.hpp"

namespace trajgroup {

/// A split vertex meeting the merge vertex at the head of its out-edge.
/// Both move toward each other at unit rate, so they meet at gamma = half
/// the edge's duration (in original times).
struct Encounter {
  double gamma = 0.0;
  VertexId split_vertex = 0;
  VertexId merge_vertex = 0;
  EdgeId edge = 0;
  std::uint64_t generation = 0;
};

/// Pops smallest (gamma, split, merge, edge) first.
struct EncounterOrder {
  bool operator()(const Encounter& a, const Encounter& b) const {
    return std::tie(a.gamma, a.split_vertex, a.merge_vertex, a.edge) >
           std::tie(b.gamma, b.split_vertex, b.merge_vertex, b.edge);
  }
};

using EncounterQueue = std::priority_queue<Encounter, std::vector<Encounter>, EncounterOrder>;

/// Every split->merge edge of duration at most alpha, keyed by half its duration.
inline EncounterQueue find_initial_encounters(const ReebGraph& g, double alpha) {
  EncounterQueue q;
  for (EdgeId e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    const auto& u = g.vertices[ed.from];
    const auto& v = g.vertices[ed.to];
    if (u.kind != VertexKind::Split || v.kind != VertexKind::Merge) continue;
    const double duration = v.time - u.time;
    if (duration <= alpha) q.push({duration / 2.0, ed.from, ed.to, e, 0});
  }
  return q;
}

struct RobustStats {
  std::size_t passings = 0;
  std::size_t collapses = 0;
  std::size_t stale = 0;

  std::size_t encounters() const noexcept { return passings + collapses; }
};

namespace detail {

inline void replace_id(std::vector<EdgeId>& list, EdgeId from, EdgeId to) {
  auto it = std::find(list.begin(), list.end(), from);
  if (it == list.end()) throw InvariantViolation("robustify: adjacency list out of sync");
  *it = to;
}

/// Reeb graph under the encounter process. Vertices keep their original
/// times; only adjacency and edge components change.
class EncounterProcess {
 public:
  EncounterProcess(const ReebGraph& g, double alpha)
      : g_(g), alpha_(alpha), alive_v_(g.vertices.size(), 1), alive_e_(g.edges.size(), 1),
        gen_(g.edges.size(), 0) {}

  void run(RobustStats& stats) {
    EncounterQueue q = find_initial_encounters(g_, alpha_);
    while (!q.empty()) {
      const Encounter enc = q.top();
      q.pop();
      if (!valid(enc)) {
        ++stats.stale;
        continue;
      }
      const auto& u = g_.vertices[enc.split_vertex];
      const EdgeId other = u.out[0] == enc.edge ? u.out[1] : u.out[0];
      if (g_.edges[other].to == enc.merge_vertex) {
        collapse(enc, q);
        ++stats.collapses;
      } else {
        pass(enc, q);
        ++stats.passings;
      }
    }
  }

  /// Shifts split/merge times by alpha/2, clamps to the window and compacts
  /// ids in topological order.
  ReebGraph result() const {
    const double half = alpha_ / 2.0;
    std::vector<Time> shifted(g_.vertices.size());
    for (VertexId v = 0; v < g_.vertices.size(); ++v) {
      const auto& vx = g_.vertices[v];
      Time t = vx.time;
      if (vx.kind == VertexKind::Split) t += half;
      if (vx.kind == VertexKind::Merge) t -= half;
      shifted[v] = std::clamp(t, g_.start_time, g_.end_time);
    }
    ReebGraph out;
    out.num_entities = g_.num_entities;
    out.start_time = g_.start_time;
    out.end_time = g_.end_time;
    out.entity_ids = g_.entity_ids;
    std::vector<VertexId> remap(g_.vertices.size(), static_cast<VertexId>(-1));
    const auto order = live_topological_order(shifted);
    for (VertexId v : order) remap[v] = out.add_vertex(shifted[v], g_.vertices[v].kind);
    for (VertexId v : order)
      for (EdgeId e : g_.vertices[v].out) {
        const auto& ed = g_.edges[e];
        if (shifted[ed.from] > shifted[ed.to])
          throw InvariantViolation("robustify: edge " + std::to_string(e) + " inverted after shifting");
        out.add_edge(remap[ed.from], remap[ed.to], ed.component);
      }
    return out;
  }

 private:
  bool valid(const Encounter& enc) const {
    if (!alive_e_[enc.edge] || gen_[enc.edge] != enc.generation) return false;
    const auto& ed = g_.edges[enc.edge];
    return ed.from == enc.split_vertex && ed.to == enc.merge_vertex &&
           g_.vertices[ed.from].kind == VertexKind::Split && g_.vertices[ed.to].kind == VertexKind::Merge;
  }

  void maybe_enqueue(EdgeId e, double floor, EncounterQueue& q) {
    const auto& ed = g_.edges[e];
    const auto& u = g_.vertices[ed.from];
    const auto& v = g_.vertices[ed.to];
    if (u.kind != VertexKind::Split || v.kind != VertexKind::Merge) return;
    const double gamma = std::max(floor, (v.time - u.time) / 2.0);
    if (gamma <= alpha_ / 2.0) q.push({gamma, ed.from, ed.to, e, gen_[e]});
  }

  // Split u with both out-edges into merge v: the two vertices vanish and
  // the in-edge of u, the two parallel edges and the out-edge of v fuse.
  void collapse(const Encounter& enc, EncounterQueue& q) {
    const VertexId u = enc.split_vertex, v = enc.merge_vertex;
    const EdgeId a = g_.vertices[u].in.at(0);
    const EdgeId b = g_.vertices[v].out.at(0);
    const VertexId p = g_.edges[a].from, r = g_.edges[b].to;

    const auto fused = static_cast<EdgeId>(g_.edges.size());
    g_.edges.push_back({p, r, g_.edges[a].component});
    alive_e_.push_back(1);
    gen_.push_back(0);
    replace_id(g_.vertices[p].out, a, fused);
    replace_id(g_.vertices[r].in, b, fused);

    for (EdgeId e : g_.vertices[u].out) alive_e_[e] = 0;
    alive_e_[a] = alive_e_[b] = 0;
    alive_v_[u] = alive_v_[v] = 0;
    g_.vertices[u].in.clear();
    g_.vertices[u].out.clear();
    g_.vertices[v].in.clear();
    g_.vertices[v].out.clear();
    maybe_enqueue(fused, enc.gamma, q);
  }

  // Split u -> merge v becomes merge v -> split u: the branch that left at u
  // and the branch that joined at v now meet first, then part again.
  void pass(const Encounter& enc, EncounterQueue& q) {
    const VertexId u = enc.split_vertex, v = enc.merge_vertex;
    const EdgeId e = enc.edge;
    const EdgeId a = g_.vertices[u].in.at(0);
    const EdgeId b = g_.vertices[v].out.at(0);
    const EdgeId joining = g_.vertices[v].in[0] == e ? g_.vertices[v].in[1] : g_.vertices[v].in[0];

    // a: p -> u  becomes  p -> v
    g_.edges[a].to = v;
    replace_id(g_.vertices[v].in, e, a);
    // b: v -> q  becomes  u -> q
    g_.edges[b].from = u;
    replace_id(g_.vertices[u].out, e, b);
    // e: u -> v  becomes  v -> u, carrying everything that met at v
    g_.edges[e].from = v;
    g_.edges[e].to = u;
    g_.edges[e].component = g_.edges[a].component | g_.edges[joining].component;
    g_.vertices[v].out = {e};
    g_.vertices[u].in = {e};

    ++gen_[a];
    ++gen_[b];
    ++gen_[e];
    maybe_enqueue(a, enc.gamma, q);
    maybe_enqueue(b, enc.gamma, q);
  }

  std::vector<VertexId> live_topological_order(const std::vector<Time>& key) const {
    std::vector<std::size_t> indeg(g_.vertices.size(), 0);
    using Item = std::pair<Time, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
    for (VertexId v = 0; v < g_.vertices.size(); ++v) {
      if (!alive_v_[v]) continue;
      indeg[v] = g_.vertices[v].in.size();
      if (indeg[v] == 0) ready.emplace(key[v], v);
    }
    std::vector<VertexId> order;
    while (!ready.empty()) {
      const VertexId v = ready.top().second;
      ready.pop();
      order.push_back(v);
      for (EdgeId e : g_.vertices[v].out) {
        const VertexId w = g_.edges[e].to;
        if (--indeg[w] == 0) ready.emplace(key[w], w);
      }
    }
    return order;
  }

  ReebGraph g_;
  double alpha_;
  std::vector<char> alive_v_;
  std::vector<char> alive_e_;
  std::vector<std::uint64_t> gen_;
};

}  // namespace detail

/// The Reeb graph after letting every split move alpha/2 forward and every
/// merge alpha/2 backward in time, resolving the split/merge encounters on
/// the way. alpha = 0 returns the input unchanged.
inline ReebGraph robustify(const ReebGraph& g, double alpha, RobustStats* stats = nullptr) {
  if (alpha < 0.0) throw Error(ErrorCode::InvalidParameter, "alpha must be >= 0");
  RobustStats local;
  if (alpha == 0.0) {
    if (stats) *stats = local;
    return g;
  }
  detail::EncounterProcess proc(g, alpha);
  proc.run(local);
  if (stats) *stats = local;
  return proc.result();
}

}  // namespace trajgroup
