#pragma once

#include <vector>

#include "groups.hpp"
#include "model.hpp"
#include "reeb.hpp"
#include "robust.hpp"

namespace trajgroup {

struct PipelineResult {
  ReebGraph reeb;
  ReebGraph robust_reeb;  ///< equals reeb when alpha = 0
  std::vector<MaximalGroup> groups;
  ReebGraph reduced_reeb;
  RobustStats robust_stats;
};

inline PipelineResult run_pipeline(const Dataset& d, const Params& p) {
  validate(d);
  validate(p);
  PipelineResult r;
  r.reeb = build_reeb(d, p.eps);
  r.robust_reeb = p.alpha > 0.0 ? robustify(r.reeb, p.alpha, &r.robust_stats) : r.reeb;
  r.groups = compute_maximal_groups(r.robust_reeb, p.m, p.delta);
  r.reduced_reeb = reduce(r.robust_reeb, r.groups);
  return r;
}

}  // namespace trajgroup
