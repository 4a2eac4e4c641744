#pragma once

// Brute-force reference computations. Nothing here uses the event,
// connectivity, Reeb or grouping code; only the shared domain types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "model.hpp"

namespace trajgroup::oracle {

namespace detail {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

inline std::size_t segment_of(const Dataset& d, Time t) {
  if (t < d.times.front() || t > d.times.back())
    throw Error(ErrorCode::TimeOutOfRange, "oracle query outside observation window");
  std::size_t k = 0;
  while (k + 2 < d.times.size() && d.times[k + 1] <= t) ++k;
  return k;
}

inline Point lerp_position(const Dataset& d, std::size_t e, Time t) {
  const std::size_t k = segment_of(d, t);
  const double s = (t - d.times[k]) / (d.times[k + 1] - d.times[k]);
  const Point a = d.trajectories[e][k], b = d.trajectories[e][k + 1];
  return {a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s};
}

inline std::vector<EntitySet> blocks(DisjointSets& ds, std::size_t n) {
  std::vector<EntitySet> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t r = ds.find(x);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.emplace_back(n);
    }
    out[slot[r]].insert(static_cast<EntityId>(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Minimum squared distance between entities a and b over [lo, hi].
inline double min_distance2(const Dataset& d, std::size_t a, std::size_t b, Time lo, Time hi) {
  double best = INFINITY;
  for (std::size_t k = 0; k + 1 < d.times.size(); ++k) {
    const Time s0 = std::max(lo, d.times[k]), s1 = std::min(hi, d.times[k + 1]);
    if (s0 > s1) continue;
    const Point p = lerp_position(d, a, s0) - lerp_position(d, b, s0);
    const Point q = (s1 > s0) ? lerp_position(d, a, s1) - lerp_position(d, b, s1) : p;
    // |p + u (q - p)|^2 for u in [0, 1]
    const Point w = q - p;
    const double ww = dot(w, w);
    double u = ww > 0.0 ? -dot(p, w) / ww : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    const Point c = p + u * w;
    best = std::min({best, dot(c, c), dot(p, p), dot(q, q)});
  }
  return best;
}

}  // namespace detail

/// Components at time t: union-find over all pairs within 2*eps.
inline std::vector<EntitySet> components_at(const Dataset& d, double eps, Time t) {
  const std::size_t n = d.trajectories.size();
  std::vector<Point> pos(n);
  for (std::size_t e = 0; e < n; ++e) pos[e] = detail::lerp_position(d, e, t);
  detail::DisjointSets ds(n);
  const double r2 = 4.0 * eps * eps;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (dot(pos[a] - pos[b], pos[a] - pos[b]) <= r2) ds.unite(a, b);
  return detail::blocks(ds, n);
}

/// alpha-components at time t: a pair is linked when it is within 2*eps at
/// some moment of [t - alpha/2, t + alpha/2] clamped to the window.
inline std::vector<EntitySet> alpha_components_at(const Dataset& d, double eps, double alpha, Time t) {
  detail::segment_of(d, t);
  const std::size_t n = d.trajectories.size();
  const Time lo = std::max(d.times.front(), t - alpha / 2.0);
  const Time hi = std::min(d.times.back(), t + alpha / 2.0);
  detail::DisjointSets ds(n);
  const double r2 = 4.0 * eps * eps;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (detail::min_distance2(d, a, b, lo, hi) <= r2) ds.unite(a, b);
  return detail::blocks(ds, n);
}

/// Times at which some pair is at distance exactly 2*eps, plus all sample times.
inline std::vector<Time> critical_times(const Dataset& d, double eps) {
  std::vector<Time> out(d.times.begin(), d.times.end());
  const std::size_t n = d.trajectories.size();
  const double r2 = 4.0 * eps * eps;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t k = 0; k + 1 < d.times.size(); ++k) {
        const Time t0 = d.times[k], t1 = d.times[k + 1];
        const Point p = d.trajectories[a][k] - d.trajectories[b][k];
        const Point q = d.trajectories[a][k + 1] - d.trajectories[b][k + 1];
        const Point v = (1.0 / (t1 - t0)) * (q - p);
        // |p + v (t - t0)|^2 = r2, textbook formula
        const double A = dot(v, v), B = 2.0 * dot(p, v), C = dot(p, p) - r2;
        if (A == 0.0) continue;
        const double disc = B * B - 4.0 * A * C;
        if (disc <= 0.0) continue;
        for (double sign : {-1.0, 1.0}) {
          const double u = (-B + sign * std::sqrt(disc)) / (2.0 * A);
          if (u > 0.0 && t0 + u < t1) out.push_back(t0 + u);
        }
      }
  std::sort(out.begin(), out.end());
  std::vector<Time> uniq;
  for (Time t : out)
    if (uniq.empty() || t - uniq.back() > 1e-12) uniq.push_back(t);
  return uniq;
}

/// The component partition as a piecewise-constant timeline: piece i spans
/// [cuts[i], cuts[i+1]] and labels[i][x] names x's block on its interior.
struct Timeline {
  std::vector<Time> cuts;
  std::vector<std::vector<std::size_t>> labels;
};

inline Timeline component_timeline(const Dataset& d, double eps) {
  Timeline tl;
  tl.cuts = critical_times(d, eps);
  const std::size_t n = d.trajectories.size();
  for (std::size_t i = 0; i + 1 < tl.cuts.size(); ++i) {
    const Time mid = 0.5 * (tl.cuts[i] + tl.cuts[i + 1]);
    std::vector<std::size_t> label(n);
    const auto comps = components_at(d, eps, mid);
    for (std::size_t c = 0; c < comps.size(); ++c) comps[c].for_each([&](EntityId x) { label[x] = c; });
    tl.labels.push_back(std::move(label));
  }
  return tl;
}

inline constexpr std::size_t kMaxBruteEntities = 12;

/// All maximal groups by subset enumeration over the component timeline.
inline std::vector<MaximalGroup> brute_maximal_groups(const Dataset& d, double eps, std::size_t m, double delta) {
  const std::size_t n = d.trajectories.size();
  if (n > kMaxBruteEntities) throw Error(ErrorCode::TooManyEntities, "brute force supports at most 12 entities");
  const Timeline tl = component_timeline(d, eps);
  const std::size_t pieces = tl.labels.size();

  struct Candidate {
    std::uint32_t mask;
    Time start, end;
  };
  std::vector<Candidate> cand;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) < m) continue;
    const std::size_t first = static_cast<std::size_t>(std::countr_zero(mask));
    std::size_t i = 0;
    while (i < pieces) {
      auto together = [&](std::size_t p) {
        for (std::size_t x = 0; x < n; ++x)
          if ((mask >> x) & 1u && tl.labels[p][x] != tl.labels[p][first]) return false;
        return true;
      };
      if (!together(i)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < pieces && together(j + 1)) ++j;
      const Time s = tl.cuts[i], e = tl.cuts[j + 1];
      if (e - s >= delta) cand.push_back({mask, s, e});
      i = j + 1;
    }
  }

  std::vector<MaximalGroup> out;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < cand.size() && !covered; ++j) {
      if (i == j) continue;
      const auto& g = cand[i];
      const auto& h = cand[j];
      covered = (g.mask & ~h.mask) == 0 && h.start <= g.start && g.end <= h.end;
    }
    if (covered) continue;
    EntitySet s(n);
    for (std::size_t x = 0; x < n; ++x)
      if ((cand[i].mask >> x) & 1u) s.insert(static_cast<EntityId>(x));
    out.push_back({std::move(s), {cand[i].start, cand[i].end}});
  }
  std::sort(out.begin(), out.end(), group_less);
  return out;
}

/// Number of interior times at which the component partition changes.
inline std::size_t partition_changes(const Dataset& d, double eps) {
  const Timeline tl = component_timeline(d, eps);
  std::size_t changes = 0;
  for (std::size_t i = 0; i + 1 < tl.labels.size(); ++i) {
    // compare as partitions (labels are canonical by block order)
    if (tl.labels[i] != tl.labels[i + 1]) ++changes;
  }
  return changes;
}

}  // namespace trajgroup::oracle
