#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rlmoc/clustering.hpp"
#include "rlmoc/graph.hpp"
#include "rlmoc/makeshifts.hpp"
#include "rlmoc/objectives.hpp"

namespace rlmoc {

struct ProblemSpec {
  std::vector<ObjectiveSpec> objectives;
  std::vector<double> slacks;
  int k = 1;
  MakeshiftOptions options;
  // Maximum accepted local-search moves per stage; 0 means 50 * n.
  int local_search_cap = 0;
  bool allow_infeasible_slack = false;

  // Throws ConfigError on a malformed spec.
  void validate() const;
};

struct ProcessedObjective {
  ObjectiveSpec spec;
  ObjectiveValue value;
  OptimalEstimate estimate;
  double delta = 1.0;
  // E' of an RS or F stage.
  std::optional<PairStructure> pairs;
};

struct StageTrace {
  std::string objective;
  // Value right after the makeshift and after any local search.
  ObjectiveValue makeshift_value;
  ObjectiveValue value;
  OptimalEstimate estimate;
  double slack = 1.0;
  bool violated = false;
  bool violated_after = false;
  int local_search_moves = 0;
  // Score of the repaired objective after each accepted move.
  std::vector<double> local_search_values;
  double elapsed_ms = 0.0;
  std::string warning;
};

struct PipelineState {
  Clustering clustering;
  std::vector<ProcessedObjective> processed;
  std::vector<StageTrace> trace;

  // Evaluation context for processed objective i.
  EvalContext context(std::size_t i) const;
  // Current values of all processed objectives on `clustering`.
  std::vector<ObjectiveValue> current_values(const GraphInstance& h) const;
};

struct ZeusResult {
  Clustering clustering;
  PipelineState state;
};

ZeusResult zeus_run(const GraphInstance& h, const ProblemSpec& spec);

struct LocalSearchResult {
  Clustering clustering;
  int moves = 0;
  std::vector<double> values;
  bool cap_reached = false;
};

// Best-improvement repair of processed objective `target` on
// state.clustering. Moves relocate a whole atom or a single node (which
// then leaves its atom); centers never move and no block empties. A move
// is admissible when every earlier processed objective that currently meets
// its slack still does, and none that already misses it gets worse.
LocalSearchResult local_search(const GraphInstance& h, const PipelineState& state,
                               std::size_t target, int cap);

nlohmann::json trace_to_json(const PipelineState& state);
// Non-finite values are written as the string "inf".
nlohmann::json value_to_json(double v);

}  // namespace rlmoc
