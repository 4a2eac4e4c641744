// Command-line front end: analyze, generate, query, export.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <trajgroup.hpp>

namespace {

using namespace trajgroup;
using io::json;

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kInvariant = 3 };

struct InputOptions {
  std::string input = "-";
  std::optional<double> dt;
  bool clip = false;
  std::optional<double> from, to;
};

struct AnalysisOptions {
  InputOptions in;
  Params params;
  std::string format = "json";
  std::string output = "-";
  bool verbose = false;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("-i,--input", in.input, "CSV with rows entity_id,t,x,y ('-' for stdin)")->required();
  cmd->add_option("--dt", in.dt, "resample onto a regular grid with this step")->check(CLI::PositiveNumber);
  cmd->add_flag("--clip", in.clip, "drop entities that do not cover the resampling window");
  cmd->add_option("--from", in.from, "start of the resampling window");
  cmd->add_option("--to", in.to, "end of the resampling window");
}

void add_analysis_options(CLI::App* cmd, AnalysisOptions& o) {
  add_input_options(cmd, o.in);
  cmd->add_option("--eps", o.params.eps, "entities within 2*eps are directly connected")->required();
  cmd->add_option("-m,--group-size", o.params.m, "minimum group size")->capture_default_str();
  cmd->add_option("-d,--duration", o.params.delta, "minimum group duration")->capture_default_str();
  cmd->add_option("-a,--alpha", o.params.alpha, "robustness: ignore separations shorter than alpha")
      ->capture_default_str();
  cmd->add_option("-o,--output", o.output, "output file ('-' for stdout)")->capture_default_str();
  cmd->add_flag("-v,--verbose", o.verbose, "list entity ids on DOT edges");
}

Dataset load_dataset(const InputOptions& in) {
  io::RawTrajectories raw;
  if (in.input == "-") {
    raw = io::load_csv(std::cin);
  } else {
    raw = io::load_csv(in.input);
  }
  if (!in.dt && !in.from && !in.to && !in.clip) return io::to_dataset(raw);
  io::ResampleOptions opt;
  if (!in.dt) throw Error(ErrorCode::InvalidParameter, "--from, --to and --clip need --dt");
  opt.dt = *in.dt;
  opt.clip = in.clip;
  opt.from = in.from;
  opt.to = in.to;
  return io::resample(raw, opt);
}

/// Runs `body` with the requested output stream.
template <class Body>
void with_output(const std::string& path, Body body) {
  if (path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write " + path);
  body(f);
}

json params_json(const Params& p) {
  return {{"eps", p.eps}, {"group_size", p.m}, {"duration", p.delta}, {"alpha", p.alpha}};
}

json group_or_null(const std::optional<MaximalGroup>& g, const std::vector<std::string>& ids) {
  return g ? io::group_to_json(*g, ids) : json(nullptr);
}

EntityId entity_index(const std::vector<std::string>& ids, const std::string& name) {
  for (EntityId i = 0; i < ids.size(); ++i)
    if (ids[i] == name) return i;
  throw Error(ErrorCode::InvalidParameter, "unknown entity " + name);
}

int run(int argc, char** argv) {
  CLI::App app{"Trajectory grouping structure: maximal groups of moving entities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "trajgroup 1.0");

  AnalysisOptions analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "compute the maximal groups of a dataset");
  add_analysis_options(cmd_analyze, analyze);
  cmd_analyze->add_option("-f,--format", analyze.format, "json, dot (reduced graph) or csv")
      ->check(CLI::IsMember({"json", "dot", "csv"}))
      ->capture_default_str();

  std::string model;
  std::size_t gen_n = 0, gen_tau = 0;
  std::uint64_t seed = 1;
  std::string gen_output = "-";
  gen::FlockParams flock;
  auto* cmd_generate = app.add_subcommand("generate", "write a synthetic dataset as CSV");
  cmd_generate->add_option("model", model, "flock, quadratic or cubic")
      ->required()
      ->check(CLI::IsMember({"flock", "quadratic", "cubic"}));
  cmd_generate->add_option("-n,--entities", gen_n, "number of entities")->required();
  cmd_generate->add_option("-t,--tau", gen_tau, "number of time steps")->required();
  cmd_generate->add_option("-s,--seed", seed, "random seed (flock)")->capture_default_str();
  cmd_generate->add_option("--world-size", flock.world_size)->capture_default_str();
  cmd_generate->add_option("--cohesion", flock.cohesion)->capture_default_str();
  cmd_generate->add_option("--separation", flock.separation)->capture_default_str();
  cmd_generate->add_option("--alignment", flock.alignment)->capture_default_str();
  cmd_generate->add_option("--max-turn", flock.max_turn)->capture_default_str();
  cmd_generate->add_option("--jitter", flock.jitter)->capture_default_str();
  cmd_generate->add_option("-o,--output", gen_output, "output file ('-' for stdout)")->capture_default_str();

  AnalysisOptions query;
  std::string query_kind;
  std::optional<double> query_time;
  std::optional<std::string> query_entity;
  auto* cmd_query = app.add_subcommand("query", "answer a question about the maximal groups");
  add_analysis_options(cmd_query, query);
  cmd_query->add_option("kind", query_kind,
                        "largest-at, longest-at, ungrouped-count, first-start-after, first-end-after, "
                        "total-grouped-time or max-partners")
      ->required();
  cmd_query->add_option("--at", query_time, "time argument");
  cmd_query->add_option("--entity", query_entity, "entity id argument");

  AnalysisOptions exporting;
  std::string what = "reeb";
  auto* cmd_export = app.add_subcommand("export", "write an intermediate structure");
  add_analysis_options(cmd_export, exporting);
  cmd_export->add_option("what", what, "reeb, robust, reduced, groups or dataset")
      ->check(CLI::IsMember({"reeb", "robust", "reduced", "groups", "dataset"}))
      ->capture_default_str();
  cmd_export->add_option("-f,--format", exporting.format, "json, dot or csv")
      ->check(CLI::IsMember({"json", "dot", "csv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (cmd_generate->parsed()) {
    Dataset d;
    if (model == "flock") {
      d = gen::gen_flock(gen_n, gen_tau, seed, flock);
    } else if (model == "quadratic") {
      d = gen::gen_reeb_quadratic(gen_n, gen_tau);
    } else {
      d = gen::gen_groups_cubic(gen_n, gen_tau);
    }
    with_output(gen_output, [&](std::ostream& out) { io::write_dataset_csv(out, d); });
    return kOk;
  }

  if (cmd_analyze->parsed()) {
    const Dataset d = load_dataset(analyze.in);
    const PipelineResult r = run_pipeline(d, analyze.params);
    with_output(analyze.output, [&](std::ostream& out) {
      if (analyze.format == "csv") {
        io::write_groups_csv(out, r.groups, r.reeb.entity_ids);
      } else if (analyze.format == "dot") {
        io::write_dot(out, r.reduced_reeb, analyze.verbose);
      } else {
        json j{{"parameters", params_json(analyze.params)},
               {"entities", d.num_entities()},
               {"start_time", d.start_time()},
               {"end_time", d.end_time()},
               {"reeb", {{"vertices", r.reeb.vertices.size()}, {"edges", r.reeb.edges.size()}}},
               {"robust",
                {{"vertices", r.robust_reeb.vertices.size()},
                 {"edges", r.robust_reeb.edges.size()},
                 {"passings", r.robust_stats.passings},
                 {"collapses", r.robust_stats.collapses}}},
               {"groups", io::groups_to_json(r.groups, r.reeb.entity_ids)}};
        out << j.dump(2) << '\n';
      }
    });
    return kOk;
  }

  if (cmd_query->parsed()) {
    const QueryKind kind = parse_query_kind(query_kind);
    const Dataset d = load_dataset(query.in);
    const PipelineResult r = run_pipeline(d, query.params);
    const auto& ids = r.reeb.entity_ids;
    json answer{{"query", to_string(kind)}};
    if (takes_entity(kind)) {
      if (!query_entity) throw Error(ErrorCode::InvalidParameter, std::string(to_string(kind)) + " needs --entity");
      const EntityId x = entity_index(ids, *query_entity);
      answer["entity"] = *query_entity;
      if (kind == QueryKind::TotalGroupedTime) {
        answer["answer"] = total_grouped_time(r.groups, r.robust_reeb, x);
      } else {
        const Partners p = max_partners(r.groups, r.robust_reeb, x);
        json names = json::array();
        for (EntityId y : p.entities) names.push_back(ids[y]);
        answer["answer"] = {{"partners", names}, {"shared_groups", p.shared}};
      }
    } else {
      if (!query_time) throw Error(ErrorCode::InvalidParameter, std::string(to_string(kind)) + " needs --at");
      const Time t = *query_time;
      answer["at"] = t;
      switch (kind) {
        case QueryKind::LargestAt: answer["answer"] = group_or_null(largest_at(r.groups, r.robust_reeb, t), ids); break;
        case QueryKind::LongestAt: answer["answer"] = group_or_null(longest_at(r.groups, r.robust_reeb, t), ids); break;
        case QueryKind::UngroupedCount: answer["answer"] = ungrouped_count(r.groups, r.robust_reeb, t); break;
        case QueryKind::FirstStartAfter:
          answer["answer"] = group_or_null(first_start_after(r.groups, r.robust_reeb, t), ids);
          break;
        case QueryKind::FirstEndAfter:
          answer["answer"] = group_or_null(first_end_after(r.groups, r.robust_reeb, t), ids);
          break;
        default: break;
      }
    }
    with_output(query.output, [&](std::ostream& out) { out << answer.dump(2) << '\n'; });
    return kOk;
  }

  // export
  const Dataset d = load_dataset(exporting.in);
  if (what == "dataset") {
    with_output(exporting.output, [&](std::ostream& out) { io::write_dataset_csv(out, d); });
    return kOk;
  }
  const PipelineResult r = run_pipeline(d, exporting.params);
  with_output(exporting.output, [&](std::ostream& out) {
    if (what == "groups") {
      if (exporting.format == "csv") {
        io::write_groups_csv(out, r.groups, r.reeb.entity_ids);
      } else {
        out << io::groups_to_json(r.groups, r.reeb.entity_ids).dump(2) << '\n';
      }
      return;
    }
    const ReebGraph& g = what == "reeb" ? r.reeb : what == "robust" ? r.robust_reeb : r.reduced_reeb;
    if (exporting.format == "dot") {
      io::write_dot(out, g, exporting.verbose);
    } else if (exporting.format == "json") {
      out << io::reeb_to_json(g).dump(2) << '\n';
    } else {
      throw Error(ErrorCode::InvalidParameter, "graphs export as json or dot");
    }
  });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const trajgroup::InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvariant;
  } catch (const trajgroup::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
}
