#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "model.hpp"
#include "reeb.hpp"

namespace trajgroup {

enum class QueryKind {
  LargestAt,
  LongestAt,
  UngroupedCount,
  FirstStartAfter,
  FirstEndAfter,
  TotalGroupedTime,
  MaxPartners,
};

inline const char* to_string(QueryKind k) {
  switch (k) {
    case QueryKind::LargestAt: return "largest-at";
    case QueryKind::LongestAt: return "longest-at";
    case QueryKind::UngroupedCount: return "ungrouped-count";
    case QueryKind::FirstStartAfter: return "first-start-after";
    case QueryKind::FirstEndAfter: return "first-end-after";
    case QueryKind::TotalGroupedTime: return "total-grouped-time";
    case QueryKind::MaxPartners: return "max-partners";
  }
  return "?";
}

inline QueryKind parse_query_kind(const std::string& s) {
  for (auto k : {QueryKind::LargestAt, QueryKind::LongestAt, QueryKind::UngroupedCount, QueryKind::FirstStartAfter,
                 QueryKind::FirstEndAfter, QueryKind::TotalGroupedTime, QueryKind::MaxPartners})
    if (s == to_string(k)) return k;
  throw Error(ErrorCode::UnknownQuery, "unknown query " + s);
}

/// Time queries take a time, entity queries take an entity index.
inline bool takes_entity(QueryKind k) { return k == QueryKind::TotalGroupedTime || k == QueryKind::MaxPartners; }

/// Size descending, then start ascending, then entity set.
inline bool query_tie_less(const MaximalGroup& a, const MaximalGroup& b) {
  if (a.entities.size() != b.entities.size()) return a.entities.size() > b.entities.size();
  if (a.interval.start != b.interval.start) return a.interval.start < b.interval.start;
  return a.entities < b.entities;
}

namespace detail {

inline void check_time(const ReebGraph& g, Time t) {
  if (!(t >= g.start_time && t <= g.end_time))
    throw Error(ErrorCode::TimeOutOfRange, "t outside [" + std::to_string(g.start_time) + ", " +
                                               std::to_string(g.end_time) + "]");
}

inline void check_entity(const ReebGraph& g, EntityId x) {
  if (x >= g.num_entities) throw Error(ErrorCode::InvalidParameter, "entity index out of range");
}

template <class Better>
std::optional<MaximalGroup> best_of(const std::vector<MaximalGroup>& groups, Better better) {
  const MaximalGroup* best = nullptr;
  for (const auto& g : groups)
    if (!best || better(g, *best)) best = &g;
  if (!best) return std::nullopt;
  return *best;
}

}  // namespace detail

inline std::optional<MaximalGroup> largest_at(const std::vector<MaximalGroup>& groups, const ReebGraph& g, Time t) {
  detail::check_time(g, t);
  std::vector<MaximalGroup> alive;
  for (const auto& grp : groups)
    if (grp.interval.contains(t)) alive.push_back(grp);
  return detail::best_of(alive, query_tie_less);
}

inline std::optional<MaximalGroup> longest_at(const std::vector<MaximalGroup>& groups, const ReebGraph& g, Time t) {
  detail::check_time(g, t);
  std::vector<MaximalGroup> alive;
  for (const auto& grp : groups)
    if (grp.interval.contains(t)) alive.push_back(grp);
  return detail::best_of(alive, [](const MaximalGroup& a, const MaximalGroup& b) {
    if (a.interval.length() != b.interval.length()) return a.interval.length() > b.interval.length();
    return query_tie_less(a, b);
  });
}

/// Entities in no reported group at time t.
inline std::size_t ungrouped_count(const std::vector<MaximalGroup>& groups, const ReebGraph& g, Time t) {
  detail::check_time(g, t);
  EntitySet covered(g.num_entities);
  for (const auto& grp : groups)
    if (grp.interval.contains(t)) covered |= grp.entities;
  return g.num_entities - covered.size();
}

/// The group with the earliest start strictly after t.
inline std::optional<MaximalGroup> first_start_after(const std::vector<MaximalGroup>& groups, const ReebGraph& g,
                                                     Time t) {
  detail::check_time(g, t);
  std::vector<MaximalGroup> later;
  for (const auto& grp : groups)
    if (grp.interval.start > t) later.push_back(grp);
  return detail::best_of(later, [](const MaximalGroup& a, const MaximalGroup& b) {
    if (a.interval.start != b.interval.start) return a.interval.start < b.interval.start;
    return query_tie_less(a, b);
  });
}

/// The group with the earliest end strictly after t.
inline std::optional<MaximalGroup> first_end_after(const std::vector<MaximalGroup>& groups, const ReebGraph& g,
                                                   Time t) {
  detail::check_time(g, t);
  std::vector<MaximalGroup> later;
  for (const auto& grp : groups)
    if (grp.interval.end > t) later.push_back(grp);
  return detail::best_of(later, [](const MaximalGroup& a, const MaximalGroup& b) {
    if (a.interval.end != b.interval.end) return a.interval.end < b.interval.end;
    return query_tie_less(a, b);
  });
}

/// Measure of the union of the intervals of groups containing x.
inline double total_grouped_time(const std::vector<MaximalGroup>& groups, const ReebGraph& g, EntityId x) {
  detail::check_entity(g, x);
  std::vector<Interval> iv;
  for (const auto& grp : groups)
    if (grp.entities.contains(x)) iv.push_back(grp.interval);
  std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.start < b.start; });
  double total = 0.0;
  std::optional<Interval> cur;
  for (const auto& i : iv) {
    if (cur && i.start <= cur->end) {
      cur->end = std::max(cur->end, i.end);
      continue;
    }
    if (cur) total += cur->length();
    cur = i;
  }
  if (cur) total += cur->length();
  return total;
}

struct Partners {
  std::vector<EntityId> entities;  ///< ascending
  std::size_t shared = 0;          ///< groups shared with each of them
};

/// The other entities that share the most maximal groups with x.
inline Partners max_partners(const std::vector<MaximalGroup>& groups, const ReebGraph& g, EntityId x) {
  detail::check_entity(g, x);
  std::vector<std::size_t> count(g.num_entities, 0);
  for (const auto& grp : groups)
    if (grp.entities.contains(x)) grp.entities.for_each([&](EntityId y) { ++count[y]; });
  count[x] = 0;
  Partners p;
  for (EntityId y = 0; y < g.num_entities; ++y) {
    if (count[y] == 0 || count[y] < p.shared) continue;
    if (count[y] > p.shared) p.entities.clear();
    p.shared = count[y];
    p.entities.push_back(y);
  }
  return p;
}

}  // namespace trajgroup
