#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "model.hpp"

namespace trajgroup::gen {

/// Boids-style flocking. Angles are in degrees, distances in world units,
/// one sample per tick at t = 0, 1, ..., tau.
struct FlockParams {
  double world_size = 100.0;    ///< square world [0, world_size]^2
  double vision = 5.0;          ///< flockmate radius
  double min_separation = 1.0;  ///< closer than this: steer away
  double cohesion = 3.0;        ///< max turn toward flockmates' centre
  double separation = 1.5;      ///< max turn away from the nearest bird
  double alignment = 5.0;       ///< max turn toward flockmates' heading
  double max_turn = 10.0;       ///< cap on the total turn per tick
  double jitter = 2.0;          ///< uniform random turn in [-jitter, jitter]
  double speed = 1.0;
  double border_margin = 10.0;  ///< start turning back this close to a wall
};

namespace detail {

/// Uniform double in [0, 1) from the raw engine output, so results do not
/// depend on the standard library's distribution implementation.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double wrap_angle(double a) {
  while (a > 180.0) a -= 360.0;
  while (a <= -180.0) a += 360.0;
  return a;
}

inline double clamp_turn(double wanted, double limit) { return std::clamp(wrap_angle(wanted), -limit, limit); }

inline double heading_to(Point from, Point to) {
  return std::atan2(to.y - from.y, to.x - from.x) * 180.0 / std::numbers::pi;
}

}  // namespace detail

inline Dataset gen_flock(std::size_t n, std::size_t tau, std::uint64_t seed, const FlockParams& p = {}) {
  if (n < 1 || tau < 1) throw Error(ErrorCode::InvalidParameter, "gen_flock needs n >= 1 and tau >= 1");
  if (!(p.world_size > 0.0) || p.vision < 0.0 || p.speed < 0.0 || p.max_turn < 0.0 || p.jitter < 0.0)
    throw Error(ErrorCode::InvalidParameter, "gen_flock: invalid flocking parameters");
  using detail::uniform01;
  std::mt19937_64 rng(seed);
  std::vector<Point> pos(n);
  std::vector<double> heading(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos[i] = {uniform01(rng) * p.world_size, uniform01(rng) * p.world_size};
    heading[i] = uniform01(rng) * 360.0 - 180.0;
  }

  Dataset d;
  d.ids = numbered_ids(n);
  d.trajectories.assign(n, {});
  for (auto& tr : d.trajectories) tr.reserve(tau + 1);
  for (std::size_t k = 0; k <= tau; ++k) d.times.push_back(static_cast<double>(k));
  auto record = [&] {
    for (std::size_t i = 0; i < n; ++i) d.trajectories[i].push_back(pos[i]);
  };
  record();

  const double vision2 = p.vision * p.vision;
  const Point centre{p.world_size / 2.0, p.world_size / 2.0};
  std::vector<double> next(n);
  for (std::size_t k = 0; k < tau; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      double sx = 0.0, sy = 0.0, cx = 0.0, cy = 0.0;
      std::size_t mates = 0;
      std::size_t nearest = n;
      double nearest2 = INFINITY;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const Point dlt = pos[j] - pos[i];
        const double d2 = norm2(dlt);
        if (d2 > vision2) continue;
        ++mates;
        const double h = heading[j] * std::numbers::pi / 180.0;
        sx += std::cos(h);
        sy += std::sin(h);
        cx += dlt.x;
        cy += dlt.y;
        if (d2 < nearest2) {
          nearest2 = d2;
          nearest = j;
        }
      }
      double turn = 0.0;
      if (mates > 0) {
        if (std::sqrt(nearest2) < p.min_separation) {
          turn += detail::clamp_turn(heading[i] - heading[nearest], p.separation);
        } else {
          const double avg_heading = std::atan2(sy, sx) * 180.0 / std::numbers::pi;
          turn += detail::clamp_turn(avg_heading - heading[i], p.alignment);
          if (cx != 0.0 || cy != 0.0) {
            const double towards = std::atan2(cy, cx) * 180.0 / std::numbers::pi;
            turn += detail::clamp_turn(towards - heading[i], p.cohesion);
          }
        }
      }
      const Point q = pos[i];
      const bool near_wall = q.x < p.border_margin || q.y < p.border_margin ||
                             q.x > p.world_size - p.border_margin || q.y > p.world_size - p.border_margin;
      if (near_wall) turn += detail::clamp_turn(detail::heading_to(q, centre) - heading[i], p.max_turn);
      turn += (2.0 * uniform01(rng) - 1.0) * p.jitter;
      next[i] = detail::wrap_angle(heading[i] + std::clamp(turn, -p.max_turn, p.max_turn));
    }
    for (std::size_t i = 0; i < n; ++i) {
      heading[i] = next[i];
      const double h = heading[i] * std::numbers::pi / 180.0;
      pos[i].x = std::clamp(pos[i].x + p.speed * std::cos(h), 0.0, p.world_size);
      pos[i].y = std::clamp(pos[i].y + p.speed * std::sin(h), 0.0, p.world_size);
    }
    record();
  }
  return d;
}

/// Radius the quadratic construction is laid out for.
inline constexpr double kQuadraticEps = 0.1;

/// Every step, n/2 entities moving right cross n/2 entities moving down and
/// each such pair comes within 2*eps exactly once (eps = kQuadraticEps),
/// giving n^2/2 merge and split vertices per step. Odd steps run the same
/// motion backwards, so positions reset every two steps.
inline Dataset gen_reeb_quadratic(std::size_t n, std::size_t tau) {
  if (n < 2 || n % 2 != 0 || tau < 2) throw Error(ErrorCode::InvalidParameter, "gen_reeb_quadratic needs even n >= 2, tau >= 2");
  const std::size_t half = n / 2;
  const double span = static_cast<double>(n + 2);  // distance covered per step
  // Entity r_j starts slightly behind its lane so that pairs with equal j + l
  // meet at distinct times; the miss distance stays well below 2 eps.
  const double stagger = kQuadraticEps / static_cast<double>(n);
  Dataset d;
  d.ids.reserve(n);
  for (std::size_t j = 1; j <= half; ++j) d.ids.push_back("r" + std::to_string(j));
  for (std::size_t l = 1; l <= half; ++l) d.ids.push_back("d" + std::to_string(l));
  for (std::size_t k = 0; k <= tau; ++k) d.times.push_back(static_cast<double>(k));
  d.trajectories.assign(n, {});
  for (std::size_t j = 1; j <= half; ++j) {
    const double jj = static_cast<double>(j);
    const Point a{-jj - jj * stagger, -jj};
    const Point b{a.x + span, a.y};
    for (std::size_t k = 0; k <= tau; ++k) d.trajectories[j - 1].push_back(k % 2 == 0 ? a : b);
  }
  for (std::size_t l = 1; l <= half; ++l) {
    const double ll = static_cast<double>(l);
    const Point a{ll, ll};
    const Point b{ll, ll - span};
    for (std::size_t k = 0; k <= tau; ++k) d.trajectories[half + l - 1].push_back(k % 2 == 0 ? a : b);
  }
  return d;
}

/// Layout of the cubic construction.
struct CubicLayout {
  double eps = 1.0;
  double spacing = 1.5;  ///< between stationary entities, < 2 eps
  double reach = 0.7;    ///< horizontal reach of a mover to a stationary entity, < spacing / 2
  double drift = 1.0;    ///< sum of the extra mover offsets, sets how far the phases spread
  /// Height of the movers' lines, between eps and 2 eps, chosen so that a
  /// mover is directly connected to a stationary entity only within `reach`.
  double height() const { return std::sqrt(4.0 * eps * eps - reach * reach); }

  /// Long contact windows: many movers are attached at every split.
  static CubicLayout for_groups() { return {}; }
  /// Contact and gap windows of similar length: many merges fall inside
  /// each gap, which is what the split/merge encounters feed on.
  static CubicLayout for_encounters() {
    CubicLayout c;
    c.reach = 0.5;
    c.drift = 0.7;
    return c;
  }
};

namespace detail {

inline std::vector<double> cubic_mover_offsets(std::size_t movers, const CubicLayout& c) {
  const double k = static_cast<double>(movers);
  const double mu = c.drift / std::max(1.0, k * (k - 1.0) / 2.0);
  std::vector<double> x(movers);
  if (movers > 0) x[0] = -(c.reach + 1.0);
  for (std::size_t i = 1; i < movers; ++i) x[i] = x[i - 1] - (c.spacing + static_cast<double>(movers - i) * mu);
  return x;
}

}  // namespace detail

/// 3n/4 stationary entities in an eps-connected row and n/4 movers passing
/// over them. Consecutive movers are one row spacing apart plus a shrinking
/// offset, and they alternate between the lines above and below the row so
/// that neighbours never come within 2 eps of each other. Each mover is
/// directly connected to the row while it is within `reach` of a stationary
/// entity, so it merges with and splits from the row once per row spacing.
/// Odd steps run the pass backwards.
inline Dataset gen_groups_cubic(std::size_t n, std::size_t tau, const CubicLayout& layout = {}) {
  if (n < 4 || n % 4 != 0 || tau < 2)
    throw Error(ErrorCode::InvalidParameter, "gen_groups_cubic needs n divisible by 4, tau >= 2");
  if (!(layout.spacing < 2.0 * layout.eps) || !(layout.reach > 0.0) || !(2.0 * layout.reach < layout.spacing) ||
      !(layout.drift >= 0.0))
    throw Error(ErrorCode::InvalidParameter, "invalid cubic layout");
  const std::size_t stationary = 3 * n / 4;
  const std::size_t movers = n / 4;
  const double r = layout.spacing;
  const auto mover_x = detail::cubic_mover_offsets(movers, layout);
  const double last_stationary = static_cast<double>(stationary - 1) * r;
  const double travel = last_stationary + layout.reach + 1.0 - mover_x[movers - 1];

  Dataset d;
  for (std::size_t i = 1; i <= stationary; ++i) d.ids.push_back("s" + std::to_string(i));
  for (std::size_t i = 1; i <= movers; ++i) d.ids.push_back("d" + std::to_string(i));
  for (std::size_t t = 0; t <= tau; ++t) d.times.push_back(static_cast<double>(t));
  d.trajectories.assign(n, {});
  for (std::size_t i = 0; i < stationary; ++i)
    d.trajectories[i].assign(tau + 1, Point{static_cast<double>(i) * r, 0.0});
  const double y = layout.height();
  for (std::size_t i = 0; i < movers; ++i) {
    const double side = i % 2 == 0 ? y : -y;
    const Point a{mover_x[i], side};
    const Point b{mover_x[i] + travel, side};
    for (std::size_t t = 0; t <= tau; ++t) d.trajectories[stationary + i].push_back(t % 2 == 0 ? a : b);
  }
  return d;
}

/// Time a mover of gen_groups_cubic(n, ...) spends between two consecutive
/// stationary entities without touching either.
inline double cubic_gap_duration(std::size_t n, const CubicLayout& layout = {}) {
  const std::size_t stationary = 3 * n / 4, movers = n / 4;
  const auto mover_x = detail::cubic_mover_offsets(movers, layout);
  const double travel = static_cast<double>(stationary - 1) * layout.spacing + layout.reach + 1.0 - mover_x[movers - 1];
  return (layout.spacing - 2.0 * layout.reach) / travel;
}

}  // namespace trajgroup::gen
