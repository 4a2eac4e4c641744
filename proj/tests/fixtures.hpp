#pragma once

#include <random>
#include <string>
#include <vector>

#include <trajgroup.hpp>

namespace fixtures {

using trajgroup::Dataset;
using trajgroup::Point;

inline Dataset make(std::vector<double> times, std::vector<std::vector<Point>> trajs, std::vector<std::string> ids = {}) {
  Dataset d;
  d.times = std::move(times);
  d.trajectories = std::move(trajs);
  if (ids.empty()) ids = trajgroup::numbered_ids(d.trajectories.size());
  d.ids = std::move(ids);
  return d;
}

/// Six entities in three rigid pairs, eps = 1 and times 0..5. The top pair
/// joins the middle pair on [6/7, 15/7]; the bottom pair touches the middle
/// pair on [3.9375, 4.0625].
inline constexpr double kCrossingEps = 1.0;
inline constexpr double kCrossingJoinStart = 6.0 / 7.0;
inline constexpr double kCrossingJoinEnd = 15.0 / 7.0;
inline constexpr double kCrossingTouchStart = 3.9375;
inline constexpr double kCrossingTouchEnd = 4.0625;

inline Dataset crossing_pairs() {
  const std::vector<double> top{5, 1.5, 1.5, 5, 5, 5};
  const std::vector<double> bottom{-5, -5, -5, -5, -1.8, -5};
  std::vector<std::vector<Point>> t(6);
  for (std::size_t k = 0; k < 6; ++k) {
    t[0].push_back({0, top[k]});
    t[1].push_back({1, top[k]});
    t[2].push_back({0, 0});
    t[3].push_back({1, 0});
    t[4].push_back({0, bottom[k]});
    t[5].push_back({1, bottom[k]});
  }
  return make({0, 1, 2, 3, 4, 5}, std::move(t), {"x1", "x2", "x3", "x4", "x5", "x6"});
}

/// Two stationary entities and a third that leaves them briefly.
inline Dataset single_detour() {
  const std::vector<double> y{0, 0, 3, 0, 0};
  std::vector<std::vector<Point>> t(3);
  for (std::size_t k = 0; k < y.size(); ++k) {
    t[0].push_back({0, 0});
    t[1].push_back({1, 0});
    t[2].push_back({2, y[k]});
  }
  return make({0, 1, 2, 3, 4}, std::move(t), {"x1", "x2", "x3"});
}

/// Two groups of three, ten units apart; x3 walks from the first to the second.
inline Dataset walker() {
  const std::vector<double> x{1, 1, 9, 9, 9};
  std::vector<std::vector<Point>> t(6);
  for (std::size_t k = 0; k < x.size(); ++k) {
    t[0].push_back({0, 0});
    t[1].push_back({0, 1});
    t[2].push_back({x[k], 0});
    t[3].push_back({10, 0});
    t[4].push_back({10, 1});
    t[5].push_back({10, 2});
  }
  return make({0, 1, 2, 3, 4}, std::move(t), {"x1", "x2", "x3", "x4", "x5", "x6"});
}

struct RandomInstance {
  Dataset data;
  double eps;
};

/// Random walks in a small box so that components change often.
inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_n = 8, std::size_t max_tau = 6) {
  std::uniform_int_distribution<std::size_t> n_dist(1, max_n), tau_dist(1, max_tau);
  std::uniform_real_distribution<double> start(0.0, 6.0), step(-2.0, 2.0), eps_dist(0.3, 1.5);
  const std::size_t n = n_dist(rng), tau = tau_dist(rng);
  std::vector<double> times;
  for (std::size_t k = 0; k <= tau; ++k) times.push_back(static_cast<double>(k));
  std::vector<std::vector<Point>> t(n);
  for (auto& traj : t) {
    Point p{start(rng), start(rng)};
    for (std::size_t k = 0; k <= tau; ++k) {
      traj.push_back(p);
      p = p + Point{step(rng), step(rng)};
    }
  }
  return {make(std::move(times), std::move(t)), eps_dist(rng)};
}

inline trajgroup::EntitySet set_of(std::size_t n, std::initializer_list<trajgroup::EntityId> xs) {
  trajgroup::EntitySet s(n);
  for (auto x : xs) s.insert(x);
  return s;
}

}  // namespace fixtures
