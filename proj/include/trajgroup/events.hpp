#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "model.hpp"

namespace trajgroup {

/// Root-deduplication and tie tolerance, in time units.
inline constexpr double kEventTolerance = 1e-9;

/// Disconnect sorts before Connect at equal (time, a, b).
enum class EventKind : std::uint8_t { Disconnect = 0, Connect = 1 };

struct PairEvent {
  Time time = 0.0;
  EntityId a = 0;
  EntityId b = 0;
  EventKind kind = EventKind::Connect;

  friend bool operator==(const PairEvent&, const PairEvent&) = default;
};

inline bool event_less(const PairEvent& x, const PairEvent& y) {
  if (x.time != y.time) return x.time < y.time;
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  return x.kind < y.kind;
}

namespace detail {

/// Real roots of A s^2 + B s + C in ascending order, stable form.
/// Double roots (tangencies) are dropped: they never flip the sign.
inline int solve_quadratic(double A, double B, double C, std::array<double, 2>& roots) {
  const double scale = std::max({std::abs(A), std::abs(B), std::abs(C)});
  if (scale == 0.0) return 0;
  if (std::abs(A) <= 1e-14 * scale) {
    if (B == 0.0) return 0;
    roots[0] = -C / B;
    return 1;
  }
  const double disc = B * B - 4.0 * A * C;
  if (disc <= 0.0) return 0;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
  double r1 = q / A;
  double r2 = q != 0.0 ? C / q : -r1;
  if (r1 > r2) std::swap(r1, r2);
  roots[0] = r1;
  roots[1] = r2;
  return 2;
}

/// Squared relative distance minus threshold on one trajectory edge, as a
/// quadratic in the edge parameter s in [0, 1].
struct EdgeQuadratic {
  double A, B, C;
  double at(double s) const { return (A * s + B) * s + C; }
};

inline EdgeQuadratic edge_quadratic(Point d0, Point d1, double threshold2) {
  const Point dv = d1 - d0;
  return {norm2(dv), 2.0 * dot(d0, dv), norm2(d0) - threshold2};
}

}  // namespace detail

/// True when a and b are within 2*eps of each other at t_0 (closed disc overlap).
inline bool initially_adjacent(const Dataset& d, EntityId a, EntityId b, double eps) {
  const double r = 2.0 * eps;
  return norm2(d.sample(a, 0) - d.sample(b, 0)) <= r * r;
}

/// Appends the connect/disconnect events of one pair to `out`, in time order.
///
/// The state at t_0 is the closed-disc test. On each trajectory edge the
/// distance crossings split the edge into pieces whose state is read at the
/// piece midpoint; an event is emitted wherever that state differs from the
/// current one. Roots closer than kEventTolerance to each other are grazing
/// contacts and are dropped; roots that close to an edge endpoint snap to it.
inline void append_pair_events(const Dataset& d, EntityId a, EntityId b, double eps,
                               std::vector<PairEvent>& out) {
  if (a > b) std::swap(a, b);
  const double threshold2 = 4.0 * eps * eps;
  const auto& pa = d.trajectories[a];
  const auto& pb = d.trajectories[b];
  bool connected = norm2(pa[0] - pb[0]) <= threshold2;

  std::array<double, 2> roots{};
  std::array<double, 4> cuts{};
  for (std::size_t k = 0; k + 1 < d.times.size(); ++k) {
    const Time t0 = d.times[k];
    const Time dt = d.times[k + 1] - t0;
    const auto f = detail::edge_quadratic(pa[k] - pb[k], pa[k + 1] - pb[k + 1], threshold2);

    // Fast path: constant state on the whole edge.
    const double f0 = f.C, f1 = f.A + f.B + f.C;
    if (f0 > 0.0 && f1 > 0.0) {
      bool never_close = f.B >= 0.0 || f.A <= 0.0;
      if (!never_close) {
        const double s_min = -f.B / (2.0 * f.A);
        never_close = s_min >= 1.0 || f.at(s_min) > 0.0;
      }
      if (never_close) {
        if (connected) {
          out.push_back({t0, a, b, EventKind::Disconnect});
          connected = false;
        }
        continue;
      }
    }

    const int nr = detail::solve_quadratic(f.A, f.B, f.C, roots);
    const double tol = kEventTolerance / dt;
    int nc = 0;
    cuts[nc++] = 0.0;
    if (nr == 2 && roots[1] - roots[0] <= tol) {
      // grazing contact
    } else {
      for (int i = 0; i < nr; ++i) {
        const double s = roots[i];
        if (s > tol && s < 1.0 - tol) cuts[nc++] = s;
      }
    }
    cuts[nc++] = 1.0;

    for (int i = 0; i + 1 < nc; ++i) {
      // Three probes so that a piece touching the threshold only at an
      // isolated tangency does not count as connected.
      const double lo = cuts[i], w = cuts[i + 1] - cuts[i];
      const bool piece = f.at(lo + 0.25 * w) <= 0.0 && f.at(lo + 0.5 * w) <= 0.0 && f.at(lo + 0.75 * w) <= 0.0;
      if (piece != connected) {
        const Time t = i == 0 ? t0 : t0 + cuts[i] * dt;
        out.push_back({t, a, b, piece ? EventKind::Connect : EventKind::Disconnect});
        connected = piece;
      }
    }
  }
}

inline std::vector<PairEvent> pair_events(const Dataset& d, EntityId a, EntityId b, double eps) {
  std::vector<PairEvent> out;
  if (a == b) return out;
  append_pair_events(d, a, b, eps, out);
  return out;
}

/// Every pair event of the dataset, sorted by (time, a, b, kind).
inline std::vector<PairEvent> all_events(const Dataset& d, double eps) {
  std::vector<PairEvent> out;
  const auto n = static_cast<EntityId>(d.num_entities());
  for (EntityId a = 0; a < n; ++a)
    for (EntityId b = a + 1; b < n; ++b) append_pair_events(d, a, b, eps, out);
  std::sort(out.begin(), out.end(), event_less);
  return out;
}

/// Pairs (a < b) directly connected at t_0.
inline std::vector<std::pair<EntityId, EntityId>> initial_adjacency(const Dataset& d, double eps) {
  std::vector<std::pair<EntityId, EntityId>> out;
  const auto n = static_cast<EntityId>(d.num_entities());
  for (EntityId a = 0; a < n; ++a)
    for (EntityId b = a + 1; b < n; ++b)
      if (initially_adjacent(d, a, b, eps)) out.emplace_back(a, b);
  return out;
}

}  // namespace trajgroup
