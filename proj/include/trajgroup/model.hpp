#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "entity_set.hpp"
#include "error.hpp"

namespace trajgroup {

using Time = double;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Point p) { return dot(p, p); }

/// n entities sampled at the same tau+1 timestamps.
///
/// Entity ids are the external labels; everything internal works on dense
/// indices 0..n-1 in the order of `ids`.
struct Dataset {
  std::vector<std::string> ids;
  std::vector<Time> times;
  std::vector<std::vector<Point>> trajectories;  ///< [entity][time index]

  std::size_t num_entities() const noexcept { return trajectories.size(); }
  /// Number of trajectory edges (tau).
  std::size_t num_edges() const noexcept { return times.empty() ? 0 : times.size() - 1; }
  Time start_time() const { return times.front(); }
  Time end_time() const { return times.back(); }

  const Point& sample(EntityId e, std::size_t k) const { return trajectories[e][k]; }
};

struct Params {
  double eps = 0.0;
  std::size_t m = 1;
  double delta = 0.0;
  double alpha = 0.0;
};

struct Interval {
  Time start = 0.0;
  Time end = 0.0;

  double length() const noexcept { return end - start; }
  bool contains(Time t) const noexcept { return start <= t && t <= end; }
  bool contains(const Interval& o) const noexcept { return start <= o.start && o.end <= end; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A maximal group: entity set together with its (closed) interval.
struct MaximalGroup {
  EntitySet entities;
  Interval interval;

  friend bool operator==(const MaximalGroup& a, const MaximalGroup& b) {
    return a.entities == b.entities && a.interval == b.interval;
  }
};

/// Canonical output order: start, end, then entity set.
inline bool group_less(const MaximalGroup& a, const MaximalGroup& b) {
  if (a.interval.start != b.interval.start) return a.interval.start < b.interval.start;
  if (a.interval.end != b.interval.end) return a.interval.end < b.interval.end;
  return a.entities < b.entities;
}

/// Default ids "0", "1", ... for generated data.
inline std::vector<std::string> numbered_ids(std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return ids;
}

/// Throws Error on the first violated Dataset invariant.
inline void validate(const Dataset& d) {
  if (d.trajectories.empty()) throw Error(ErrorCode::EmptyDataset, "dataset has no entities");
  if (d.times.size() < 2)
    throw Error(ErrorCode::NonMonotonicTime, "need at least two timestamps (tau >= 1)");
  for (std::size_t k = 0; k < d.times.size(); ++k) {
    if (!std::isfinite(d.times[k]))
      throw Error(ErrorCode::NonMonotonicTime, "non-finite timestamp at index " + std::to_string(k));
    if (k > 0 && !(d.times[k] > d.times[k - 1]))
      throw Error(ErrorCode::NonMonotonicTime,
                  "timestamps not strictly increasing at index " + std::to_string(k));
  }
  if (!d.ids.empty() && d.ids.size() != d.trajectories.size())
    throw Error(ErrorCode::RaggedTrajectory, "id list and trajectory count differ");
  for (std::size_t e = 0; e < d.trajectories.size(); ++e) {
    const auto& traj = d.trajectories[e];
    if (traj.size() != d.times.size())
      throw Error(ErrorCode::RaggedTrajectory, "entity " + std::to_string(e) + " has " +
                                                   std::to_string(traj.size()) + " positions, expected " +
                                                   std::to_string(d.times.size()));
    for (std::size_t k = 0; k < traj.size(); ++k)
      if (!std::isfinite(traj[k].x) || !std::isfinite(traj[k].y))
        throw Error(ErrorCode::NonFiniteCoordinate,
                    "entity " + std::to_string(e) + ", time index " + std::to_string(k));
  }
}

inline void validate(const Params& p) {
  auto bad = [](double v) { return !std::isfinite(v) || v < 0.0; };
  if (bad(p.eps)) throw Error(ErrorCode::InvalidParameter, "eps must be finite and >= 0");
  if (p.m < 1) throw Error(ErrorCode::InvalidParameter, "m must be >= 1");
  if (bad(p.delta)) throw Error(ErrorCode::InvalidParameter, "delta must be finite and >= 0");
  if (bad(p.alpha)) throw Error(ErrorCode::InvalidParameter, "alpha must be finite and >= 0");
}

/// Index k of the trajectory edge [t_k, t_{k+1}] containing t (last edge for t_tau).
inline std::size_t edge_index(const Dataset& d, Time t) {
  if (t < d.start_time() || t > d.end_time())
    throw Error(ErrorCode::TimeOutOfRange, "time " + std::to_string(t) + " outside observation window");
  auto it = std::upper_bound(d.times.begin(), d.times.end(), t);
  std::size_t k = static_cast<std::size_t>(it - d.times.begin());
  k = k == 0 ? 0 : k - 1;
  return std::min(k, d.num_edges() - 1);
}

/// Linear interpolation along the trajectory of `e`.
inline Point position_at(const Dataset& d, EntityId e, Time t) {
  const std::size_t k = edge_index(d, t);
  const Time t0 = d.times[k], t1 = d.times[k + 1];
  const Point& p0 = d.trajectories[e][k];
  const Point& p1 = d.trajectories[e][k + 1];
  if (t == t0) return p0;
  if (t == t1) return p1;
  const double s = (t - t0) / (t1 - t0);
  return {p0.x + s * (p1.x - p0.x), p0.y + s * (p1.y - p0.y)};
}

}  // namespace trajgroup
