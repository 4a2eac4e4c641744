#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "connectivity.hpp"
#include "events.hpp"
#include "model.hpp"

namespace trajgroup {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class VertexKind : std::uint8_t { Start, End, Merge, Split };

inline const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Start: return "start";
    case VertexKind::End: return "end";
    case VertexKind::Merge: return "merge";
    case VertexKind::Split: return "split";
  }
  return "?";
}

struct ReebVertex {
  Time time = 0.0;
  VertexKind kind = VertexKind::Start;
  std::vector<EdgeId> in;
  std::vector<EdgeId> out;
};

struct ReebEdge {
  VertexId from = 0;
  VertexId to = 0;
  EntitySet component;

  Interval interval(const std::vector<ReebVertex>& v) const { return {v[from].time, v[to].time}; }
};

/// Directed graph of components over time. Vertex and edge ids are indices
/// into the two arrays and are stable for serialization.
struct ReebGraph {
  std::size_t num_entities = 0;
  Time start_time = 0.0;
  Time end_time = 0.0;
  std::vector<std::string> entity_ids;
  std::vector<ReebVertex> vertices;
  std::vector<ReebEdge> edges;

  Interval interval(EdgeId e) const { return edges[e].interval(vertices); }

  VertexId add_vertex(Time t, VertexKind kind) {
    vertices.push_back({t, kind, {}, {}});
    return static_cast<VertexId>(vertices.size() - 1);
  }
  EdgeId add_edge(VertexId from, VertexId to, EntitySet component) {
    const auto id = static_cast<EdgeId>(edges.size());
    edges.push_back({from, to, std::move(component)});
    vertices[from].out.push_back(id);
    vertices[to].in.push_back(id);
    return id;
  }

  std::size_t count(VertexKind k) const {
    return static_cast<std::size_t>(
        std::count_if(vertices.begin(), vertices.end(), [k](const ReebVertex& v) { return v.kind == k; }));
  }

  /// Vertices in topological order, ties broken by (time, id).
  std::vector<VertexId> topological_order() const;

  /// The partition of entities induced by the edges whose open interval contains t.
  std::vector<EntitySet> partition_at(Time t) const {
    std::vector<EntitySet> out;
    for (const auto& e : edges)
      if (vertices[e.from].time < t && t < vertices[e.to].time) out.push_back(e.component);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Edge ids on the path of entity x from its start vertex to its end vertex.
  std::vector<EdgeId> entity_path(EntityId x) const;
};

inline std::vector<VertexId> ReebGraph::topological_order() const {
  std::vector<std::size_t> indeg(vertices.size());
  using Key = std::pair<Time, VertexId>;
  std::vector<Key> heap;
  auto cmp = [](const Key& a, const Key& b) { return a > b; };
  for (VertexId v = 0; v < vertices.size(); ++v) {
    indeg[v] = vertices[v].in.size();
    if (indeg[v] == 0) heap.emplace_back(vertices[v].time, v);
  }
  std::make_heap(heap.begin(), heap.end(), cmp);
  std::vector<VertexId> order;
  order.reserve(vertices.size());
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const VertexId v = heap.back().second;
    heap.pop_back();
    order.push_back(v);
    for (EdgeId e : vertices[v].out) {
      const VertexId w = edges[e].to;
      if (--indeg[w] == 0) {
        heap.emplace_back(vertices[w].time, w);
        std::push_heap(heap.begin(), heap.end(), cmp);
      }
    }
  }
  if (order.size() != vertices.size()) throw InvariantViolation("Reeb graph has a cycle");
  return order;
}

inline std::vector<EdgeId> ReebGraph::entity_path(EntityId x) const {
  std::vector<EdgeId> path;
  VertexId v = static_cast<VertexId>(vertices.size());
  for (VertexId s = 0; s < vertices.size(); ++s)
    if (vertices[s].kind == VertexKind::Start && edges[vertices[s].out.at(0)].component.contains(x)) {
      v = s;
      break;
    }
  if (v == vertices.size()) throw InvariantViolation("entity " + std::to_string(x) + " has no start vertex");
  while (vertices[v].kind != VertexKind::End) {
    EdgeId next = static_cast<EdgeId>(edges.size());
    for (EdgeId e : vertices[v].out)
      if (edges[e].component.contains(x)) {
        if (next != edges.size())
          throw InvariantViolation("entity " + std::to_string(x) + " leaves a vertex twice");
        next = e;
      }
    if (next == edges.size())
      throw InvariantViolation("entity " + std::to_string(x) + " stops at a non-end vertex");
    path.push_back(next);
    v = edges[next].to;
  }
  return path;
}

/// Sweeps the sorted pair events, maintaining the directly-connected graph
/// in a SpanningForest, and emits a vertex whenever the component partition
/// changes.
inline ReebGraph build_reeb(const Dataset& d, double eps) {
  validate(d);
  const std::size_t n = d.num_entities();
  const auto events = all_events(d, eps);

  // Deletion time of the edge inserted by each connect event; for pairs
  // adjacent at t_0, the time of their first disconnect.
  constexpr double kNever = std::numeric_limits<double>::infinity();
  std::vector<double> until(events.size(), kNever);
  std::unordered_map<std::uint64_t, double> next_disconnect;
  next_disconnect.reserve(events.size());
  for (std::size_t i = events.size(); i-- > 0;) {
    const auto& ev = events[i];
    const std::uint64_t k = (std::uint64_t{ev.a} << 32) | ev.b;
    if (ev.kind == EventKind::Disconnect) {
      next_disconnect[k] = ev.time;
    } else {
      auto it = next_disconnect.find(k);
      until[i] = it == next_disconnect.end() ? kNever : it->second;
      next_disconnect.erase(k);
    }
  }

  ReebGraph g;
  g.num_entities = n;
  g.start_time = d.start_time();
  g.end_time = d.end_time();
  g.entity_ids = d.ids.empty() ? numbered_ids(n) : d.ids;

  SpanningForest forest(n);
  for (const auto& [a, b] : initial_adjacency(d, eps)) {
    const std::uint64_t k = (std::uint64_t{a} << 32) | b;
    auto it = next_disconnect.find(k);
    forest.insert(a, b, it == next_disconnect.end() ? kNever : it->second);
  }

  // An open component: the vertex it leaves from and its members. Every
  // entity points at the open component it currently belongs to.
  struct Open {
    VertexId from;
    EntitySet members;
  };
  std::vector<Open> open;
  std::vector<std::uint32_t> owner(n, std::numeric_limits<std::uint32_t>::max());

  auto open_component = [&](VertexId from, EntitySet members) {
    const auto id = static_cast<std::uint32_t>(open.size());
    members.for_each([&](EntityId x) { owner[x] = id; });
    open.push_back({from, std::move(members)});
    return id;
  };
  auto close_component = [&](std::uint32_t id, VertexId to) {
    g.add_edge(open[id].from, to, std::move(open[id].members));
  };

  for (EntityId x = 0; x < n; ++x) {
    if (owner[x] != std::numeric_limits<std::uint32_t>::max()) continue;
    const VertexId s = g.add_vertex(d.start_time(), VertexKind::Start);
    open_component(s, forest.component(x));
  }

  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& ev = events[i];
    if (ev.kind == EventKind::Connect) {
      if (!forest.same_component(ev.a, ev.b)) {
        const std::uint32_t ca = owner[ev.a], cb = owner[ev.b];
        const VertexId v = g.add_vertex(ev.time, VertexKind::Merge);
        EntitySet merged = open[ca].members | open[cb].members;
        close_component(ca, v);
        close_component(cb, v);
        open_component(v, std::move(merged));
      }
      forest.insert(ev.a, ev.b, until[i]);
    } else {
      forest.erase(ev.a, ev.b);
      if (forest.same_component(ev.a, ev.b)) continue;
      const std::uint32_t c = owner[ev.a];
      auto [smaller, is_a] = forest.smaller_component(ev.a, ev.b);
      EntitySet rest = open[c].members - smaller;
      const VertexId v = g.add_vertex(ev.time, VertexKind::Split);
      close_component(c, v);
      if (is_a) {
        open_component(v, std::move(smaller));
        open_component(v, std::move(rest));
      } else {
        open_component(v, std::move(rest));
        open_component(v, std::move(smaller));
      }
    }
  }

  for (EntityId x = 0; x < n; ++x) {
    const std::uint32_t c = owner[x];
    if (open[c].members.empty()) continue;  // already closed
    const VertexId v = g.add_vertex(d.end_time(), VertexKind::End);
    close_component(c, v);
  }
  return g;
}

/// Structural audit. Throws InvariantViolation on the first problem:
/// degree table per vertex kind, time order along edges, disjoint unions at
/// merges and splits, and every entity following one start-to-end path
/// that covers the whole observation window.
inline void audit(const ReebGraph& g) {
  auto fail = [](const std::string& what) { throw InvariantViolation("Reeb audit: " + what); };
  const EntitySet all = EntitySet::full(g.num_entities);
  for (VertexId v = 0; v < g.vertices.size(); ++v) {
    const auto& vx = g.vertices[v];
    std::size_t want_in = 0, want_out = 0;
    switch (vx.kind) {
      case VertexKind::Start: want_in = 0, want_out = 1; break;
      case VertexKind::End: want_in = 1, want_out = 0; break;
      case VertexKind::Merge: want_in = 2, want_out = 1; break;
      case VertexKind::Split: want_in = 1, want_out = 2; break;
    }
    if (vx.in.size() != want_in || vx.out.size() != want_out)
      fail("vertex " + std::to_string(v) + " (" + to_string(vx.kind) + ") has degree " +
           std::to_string(vx.in.size()) + "/" + std::to_string(vx.out.size()));
    if (vx.kind == VertexKind::Start && vx.time != g.start_time) fail("start vertex not at t_0");
    if (vx.kind == VertexKind::End && vx.time != g.end_time) fail("end vertex not at t_tau");
    if (vx.time < g.start_time || vx.time > g.end_time) fail("vertex time outside window");
    for (EdgeId e : vx.in)
      if (g.edges[e].to != v) fail("in-edge list inconsistent at vertex " + std::to_string(v));
    for (EdgeId e : vx.out)
      if (g.edges[e].from != v) fail("out-edge list inconsistent at vertex " + std::to_string(v));
    if (vx.kind == VertexKind::Merge || vx.kind == VertexKind::Split) {
      const auto& pair = vx.kind == VertexKind::Merge ? vx.in : vx.out;
      const auto& single = vx.kind == VertexKind::Merge ? vx.out : vx.in;
      const EntitySet& c1 = g.edges[pair[0]].component;
      const EntitySet& c2 = g.edges[pair[1]].component;
      if (c1.intersects(c2)) fail("overlapping branches at vertex " + std::to_string(v));
      if (!((c1 | c2) == g.edges[single[0]].component))
        fail("branches do not union to the component at vertex " + std::to_string(v));
    }
  }
  for (EdgeId e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    if (ed.component.empty()) fail("empty component on edge " + std::to_string(e));
    if (g.vertices[ed.from].time > g.vertices[ed.to].time) fail("edge " + std::to_string(e) + " runs backwards");
  }
  std::vector<std::size_t> seen(g.edges.size(), 0);
  EntitySet starts(g.num_entities);
  for (const auto& vx : g.vertices)
    if (vx.kind == VertexKind::Start) {
      const EntitySet& c = g.edges[vx.out[0]].component;
      if (starts.intersects(c)) fail("entity in two start components");
      starts |= c;
    }
  if (!(starts == all)) fail("start components do not cover all entities");
  for (EntityId x = 0; x < g.num_entities; ++x)
    for (EdgeId e : g.entity_path(x)) ++seen[e];
  for (EdgeId e = 0; e < g.edges.size(); ++e)
    if (seen[e] != g.edges[e].component.size())
      fail("edge " + std::to_string(e) + " not on the paths of exactly its entities");
}

/// Restriction of `g` to the edges that support at least one of `groups`:
/// the group lies inside the edge's component and the two intervals overlap
/// with positive length (zero-length edges count when inside the group's
/// interval). Ids are renumbered; degree-1 chains are kept as they are.
inline ReebGraph reduce(const ReebGraph& g, const std::vector<MaximalGroup>& groups) {
  std::vector<char> keep(g.edges.size(), 0);
  std::vector<std::vector<EdgeId>> paths(g.num_entities);
  std::vector<char> have_path(g.num_entities, 0);
  for (const auto& grp : groups) {
    const EntityId x = grp.entities.first();
    if (x >= g.num_entities) continue;
    if (!have_path[x]) {
      paths[x] = g.entity_path(x);
      have_path[x] = 1;
    }
    const auto& path = paths[x];
    // First edge on the path that ends at or after the group starts.
    auto it = std::lower_bound(path.begin(), path.end(), grp.interval.start,
                               [&](EdgeId e, Time t) { return g.vertices[g.edges[e].to].time < t; });
    for (; it != path.end(); ++it) {
      const Interval ie = g.interval(*it);
      if (ie.start > grp.interval.end) break;
      const double overlap = std::min(ie.end, grp.interval.end) - std::max(ie.start, grp.interval.start);
      const bool supports = overlap > 0.0 || (ie.length() == 0.0 && grp.interval.contains(ie.start));
      if (supports && grp.entities.subset_of(g.edges[*it].component)) keep[*it] = 1;
    }
  }

  ReebGraph out;
  out.num_entities = g.num_entities;
  out.start_time = g.start_time;
  out.end_time = g.end_time;
  out.entity_ids = g.entity_ids;
  std::vector<VertexId> remap(g.vertices.size(), std::numeric_limits<VertexId>::max());
  auto map_vertex = [&](VertexId v) {
    if (remap[v] == std::numeric_limits<VertexId>::max())
      remap[v] = out.add_vertex(g.vertices[v].time, g.vertices[v].kind);
    return remap[v];
  };
  for (VertexId v : g.topological_order())
    for (EdgeId e : g.vertices[v].out)
      if (keep[e]) {
        const VertexId a = map_vertex(g.edges[e].from);
        const VertexId b = map_vertex(g.edges[e].to);
        out.add_edge(a, b, g.edges[e].component);
      }
  return out;
}

}  // namespace trajgroup
