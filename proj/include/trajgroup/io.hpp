#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "model.hpp"
#include "reeb.hpp"

namespace trajgroup::io {

using json = nlohmann::json;

struct Sample {
  Time t;
  Point p;
};

/// Per-entity samples as read from a file, possibly asynchronous.
struct RawTrajectories {
  std::vector<std::string> ids;               ///< first-appearance order
  std::vector<std::vector<Sample>> samples;   ///< sorted by time
};

/// Shortest decimal that round-trips.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Reads rows `entity_id,t,x,y`. A first row whose t/x/y are not numbers is
/// taken as a header. Blank lines are skipped.
inline RawTrajectories load_csv(std::istream& in) {
  RawTrajectories raw;
  std::unordered_map<std::string, std::size_t> index;
  std::string line;
  std::size_t lineno = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_fields(line);
    std::optional<double> t, x, y;
    if (fields.size() == 4) {
      t = detail::parse_double(fields[1]);
      x = detail::parse_double(fields[2]);
      y = detail::parse_double(fields[3]);
    }
    const bool numeric = t && x && y;
    if (first_row && fields.size() == 4 && !numeric && !t) {
      first_row = false;
      continue;  // header
    }
    first_row = false;
    if (!numeric || fields[0].empty())
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected entity_id,t,x,y");
    const std::string id(fields[0]);
    auto [it, inserted] = index.emplace(id, raw.ids.size());
    if (inserted) {
      raw.ids.push_back(id);
      raw.samples.emplace_back();
    }
    raw.samples[it->second].push_back({*t, {*x, *y}});
  }
  for (std::size_t e = 0; e < raw.samples.size(); ++e) {
    auto& s = raw.samples[e];
    std::stable_sort(s.begin(), s.end(), [](const Sample& a, const Sample& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i].t == s[i - 1].t)
        throw Error(ErrorCode::DuplicateSample, "entity " + raw.ids[e] + " at t=" + format_number(s[i].t));
  }
  return raw;
}

inline RawTrajectories load_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return load_csv(f);
}

struct ResampleOptions {
  double dt = 1.0;
  bool clip = false;                   ///< drop entities that do not cover the window
  std::optional<Time> from, to;        ///< window; defaults to the common window
};

/// Resamples every entity onto the grid from, from + dt, ... <= to by linear
/// interpolation. Without an explicit window the grid spans the common
/// window [max of starts, min of ends].
inline Dataset resample(const RawTrajectories& raw, const ResampleOptions& opt) {
  if (!(opt.dt > 0.0) || !std::isfinite(opt.dt)) throw Error(ErrorCode::InvalidParameter, "dt must be > 0");
  if (raw.samples.empty()) throw Error(ErrorCode::EmptyDataset, "no trajectories");
  Time lo = -INFINITY, hi = INFINITY;
  for (const auto& s : raw.samples) {
    if (s.empty()) continue;
    lo = std::max(lo, s.front().t);
    hi = std::min(hi, s.back().t);
  }
  if (opt.from) lo = *opt.from;
  if (opt.to) hi = *opt.to;
  if (!(hi > lo)) throw Error(ErrorCode::EmptyCommonWindow, "trajectories share no common time window");

  std::vector<Time> grid;
  const double tol = 1e-9 * std::max(1.0, std::abs(hi));
  for (std::size_t k = 0;; ++k) {
    const Time t = lo + static_cast<double>(k) * opt.dt;
    if (t > hi + tol) break;
    grid.push_back(std::min(t, hi));
  }
  if (grid.size() < 2) throw Error(ErrorCode::EmptyCommonWindow, "common window shorter than dt");

  Dataset d;
  d.times = grid;
  for (std::size_t e = 0; e < raw.samples.size(); ++e) {
    const auto& s = raw.samples[e];
    const bool covers = !s.empty() && s.front().t <= grid.front() && s.back().t >= grid.back();
    if (!covers) {
      if (opt.clip) continue;
      throw Error(ErrorCode::EntityOutsideWindow, "entity " + raw.ids[e] + " does not cover the window");
    }
    std::vector<Point> traj;
    traj.reserve(grid.size());
    std::size_t j = 0;
    for (Time t : grid) {
      while (j + 1 < s.size() && s[j + 1].t < t) ++j;
      if (j + 1 >= s.size() || s[j].t >= t) {
        traj.push_back(s[j].p);
        continue;
      }
      const Sample& a = s[j];
      const Sample& b = s[j + 1];
      const double u = (t - a.t) / (b.t - a.t);
      traj.push_back({a.p.x + u * (b.p.x - a.p.x), a.p.y + u * (b.p.y - a.p.y)});
    }
    d.ids.push_back(raw.ids[e]);
    d.trajectories.push_back(std::move(traj));
  }
  if (d.trajectories.empty()) throw Error(ErrorCode::EntityOutsideWindow, "no entity covers the window");
  validate(d);
  return d;
}

/// Synchronous datasets load without interpolation when dt is not given.
inline Dataset to_dataset(const RawTrajectories& raw) {
  Dataset d;
  d.ids = raw.ids;
  if (raw.samples.empty()) throw Error(ErrorCode::EmptyDataset, "no trajectories");
  for (const auto& s : raw.samples.front()) d.times.push_back(s.t);
  for (std::size_t e = 0; e < raw.samples.size(); ++e) {
    const auto& s = raw.samples[e];
    std::vector<Point> traj;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k >= d.times.size() || s[k].t != d.times[k])
        throw Error(ErrorCode::RaggedTrajectory,
                    "entity " + raw.ids[e] + " is not sampled at the common timestamps (use --dt to resample)");
      traj.push_back(s[k].p);
    }
    d.trajectories.push_back(std::move(traj));
  }
  validate(d);
  return d;
}

inline void write_dataset_csv(std::ostream& out, const Dataset& d) {
  out << "entity_id,t,x,y\n";
  const auto ids = d.ids.empty() ? numbered_ids(d.num_entities()) : d.ids;
  for (std::size_t e = 0; e < d.num_entities(); ++e)
    for (std::size_t k = 0; k < d.times.size(); ++k)
      out << ids[e] << ',' << format_number(d.times[k]) << ',' << format_number(d.trajectories[e][k].x) << ','
          << format_number(d.trajectories[e][k].y) << '\n';
}

// ---------------------------------------------------------------------------
// Groups

inline json entities_json(const EntitySet& s, const std::vector<std::string>& ids) {
  std::vector<std::string> names;
  s.for_each([&](EntityId x) { names.push_back(ids.at(x)); });
  std::sort(names.begin(), names.end());
  return names;
}

inline json group_to_json(const MaximalGroup& g, const std::vector<std::string>& ids) {
  return json{{"entities", entities_json(g.entities, ids)}, {"start", g.interval.start}, {"end", g.interval.end}};
}

inline json groups_to_json(const std::vector<MaximalGroup>& groups, const std::vector<std::string>& ids) {
  json arr = json::array();
  for (const auto& g : groups) arr.push_back(group_to_json(g, ids));
  return arr;
}

inline EntitySet entities_from_json(const json& j, const std::vector<std::string>& ids) {
  std::unordered_map<std::string, EntityId> index;
  for (EntityId i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);
  EntitySet s(ids.size());
  for (const auto& name : j) {
    auto it = index.find(name.get<std::string>());
    if (it == index.end()) throw Error(ErrorCode::ParseError, "unknown entity id " + name.get<std::string>());
    s.insert(it->second);
  }
  return s;
}

inline std::vector<MaximalGroup> groups_from_json(const json& arr, const std::vector<std::string>& ids) {
  std::vector<MaximalGroup> out;
  for (const auto& g : arr)
    out.push_back({entities_from_json(g.at("entities"), ids), {g.at("start").get<double>(), g.at("end").get<double>()}});
  return out;
}

/// One row per group: start,end,size,ids joined by ';'.
inline void write_groups_csv(std::ostream& out, const std::vector<MaximalGroup>& groups,
                             const std::vector<std::string>& ids) {
  out << "start,end,size,ids\n";
  for (const auto& g : groups) {
    out << format_number(g.interval.start) << ',' << format_number(g.interval.end) << ',' << g.entities.size() << ',';
    const auto names = entities_json(g.entities, ids);
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ";" : "") << names[i].get<std::string>();
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Reeb graphs

inline VertexKind kind_from_string(const std::string& s) {
  if (s == "start") return VertexKind::Start;
  if (s == "end") return VertexKind::End;
  if (s == "merge") return VertexKind::Merge;
  if (s == "split") return VertexKind::Split;
  throw Error(ErrorCode::ParseError, "unknown vertex kind " + s);
}

inline json reeb_to_json(const ReebGraph& g) {
  json j;
  j["entities"] = g.entity_ids;
  j["start_time"] = g.start_time;
  j["end_time"] = g.end_time;
  json vs = json::array();
  for (VertexId v = 0; v < g.vertices.size(); ++v)
    vs.push_back({{"id", v}, {"kind", to_string(g.vertices[v].kind)}, {"time", g.vertices[v].time}});
  json es = json::array();
  for (EdgeId e = 0; e < g.edges.size(); ++e) {
    std::vector<EntityId> members = g.edges[e].component.members();
    es.push_back({{"id", e}, {"from", g.edges[e].from}, {"to", g.edges[e].to}, {"entities", members}});
  }
  j["vertices"] = std::move(vs);
  j["edges"] = std::move(es);
  return j;
}

/// Inverse of reeb_to_json. Edge entities are dense indices into "entities".
inline ReebGraph reeb_from_json(const json& j) {
  ReebGraph g;
  g.entity_ids = j.at("entities").get<std::vector<std::string>>();
  g.num_entities = g.entity_ids.size();
  g.start_time = j.at("start_time").get<double>();
  g.end_time = j.at("end_time").get<double>();
  for (const auto& v : j.at("vertices")) {
    if (v.at("id").get<std::size_t>() != g.vertices.size()) throw Error(ErrorCode::ParseError, "vertex ids must be dense");
    g.add_vertex(v.at("time").get<double>(), kind_from_string(v.at("kind").get<std::string>()));
  }
  for (const auto& e : j.at("edges")) {
    if (e.at("id").get<std::size_t>() != g.edges.size()) throw Error(ErrorCode::ParseError, "edge ids must be dense");
    EntitySet s(g.num_entities);
    for (const auto& x : e.at("entities")) {
      const auto id = x.get<EntityId>();
      if (id >= g.num_entities) throw Error(ErrorCode::ParseError, "entity index out of range");
      s.insert(id);
    }
    const auto from = e.at("from").get<VertexId>(), to = e.at("to").get<VertexId>();
    if (from >= g.vertices.size() || to >= g.vertices.size()) throw Error(ErrorCode::ParseError, "edge endpoint out of range");
    g.add_edge(from, to, std::move(s));
  }
  return g;
}

/// Vertices labelled kind@time; edges labelled with |C_e|, plus the id list
/// when verbose.
inline void write_dot(std::ostream& out, const ReebGraph& g, bool verbose = false) {
  out << "digraph reeb {\n  rankdir=LR;\n";
  for (VertexId v = 0; v < g.vertices.size(); ++v)
    out << "  v" << v << " [label=\"" << to_string(g.vertices[v].kind) << '@' << format_number(g.vertices[v].time)
        << "\"];\n";
  for (const auto& e : g.edges) {
    out << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.component.size();
    if (verbose) {
      out << ": ";
      const auto names = entities_json(e.component, g.entity_ids);
      for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i].get<std::string>();
    }
    out << "\"];\n";
  }
  out << "}\n";
}

}  // namespace trajgroup::io
