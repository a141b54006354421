#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rlmoc/clustering.hpp"
#include "rlmoc/graph.hpp"
#include "rlmoc/makeshifts.hpp"
#include "rlmoc/objectives.hpp"
#include "rlmoc/zeus.hpp"

namespace rlmoc {

// ---- synthetic instances -------------------------------------------------

enum class GeneratorKind : std::uint8_t { kResourceSharing, kFairness, kTeamFormation };

GeneratorKind parse_generator_kind(const std::string& name);

struct GeneratorOptions {
  GeneratorKind kind = GeneratorKind::kResourceSharing;
  int n = 100;
  std::uint64_t seed = 0;
  // Pairs closer than edge_radius join E with probability edge_keep.
  double edge_radius = 0.15;
  double edge_keep = 0.5;
  double blue_fraction = 0.3;
  double expert_fraction = 0.3;
};

// Uniform points in the unit square under the Euclidean metric.
//  rs: random E at the threshold radius; an isolated node is linked to its
//      nearest neighbor so an edge cover exists.
//  f:  Blue/Purple coloring; E is the random threshold graph plus, for each
//      Blue node in turn, an edge to the nearest Purple node not yet used,
//      so a Blue-saturating matching exists.
//  tf: random threshold E and random expert flags (at least one expert).
GraphInstance generate_instance(const GeneratorOptions& opts);

// ---- baselines ---------------------------------------------------------------

// Runs only the first objective's makeshift; fragments are merged pairwise
// by closest block centers (per-block 1-centers) until k blocks remain.
Clustering baseline_b1(const GraphInstance& h, const ProblemSpec& spec);
// Plain greedy k-center.
Clustering baseline_b2(const GraphInstance& h, int k, const MakeshiftOptions& opts);
// Agglomerative merging from singletons. Each round applies the merge that
// minimizes the equal-weight sum of both objectives, each normalized to
// [0, 1] over this round's candidate merges (maximized objectives negated).
// Blocks carry their best in-block centers.
Clustering baseline_moc(const GraphInstance& h, const ProblemSpec& spec);

// ---- experiments ---------------------------------------------------------------

struct ExperimentConfig {
  // Either an instance file or a generator (regenerated per seed).
  std::optional<std::filesystem::path> instance;
  std::optional<double> fill;
  std::optional<GeneratorOptions> generator;
  std::vector<ObjectiveSpec> objectives;
  std::vector<std::vector<double>> slacks;
  std::vector<int> ks;
  std::vector<std::uint64_t> seeds{0};
  std::vector<std::string> algorithms;
  std::filesystem::path output_dir = "bench_out";
  std::vector<std::string> formats{"csv", "json", "svg"};
  MakeshiftOptions options;
  bool allow_infeasible_slack = false;

  // Throws ConfigError.
  void validate() const;
};

// `base` resolves a relative instance path.
ExperimentConfig parse_experiment_config(const nlohmann::json& j,
                                         const std::filesystem::path& base = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct RunRecord {
  std::string algorithm;
  int k = 0;
  std::vector<double> slack;
  std::uint64_t seed = 0;
  std::vector<std::string> objective_names;
  // Recomputed from `clustering`, never copied from the algorithm.
  std::vector<double> values;
  double wall_ms = 0.0;
  std::string error;
  Clustering clustering;
  nlohmann::json trace;
};

// The E' pair set used to score the first F objective of `objectives` on
// any clustering of `h` (the same set the Zeus fairness stage builds).
// Empty when there is no F objective.
PairStructure fairness_reference(const GraphInstance& h,
                                 const std::vector<ObjectiveSpec>& objectives);

// Runs one algorithm for one (k, slack, seed) cell and re-evaluates it.
RunRecord run_cell(const GraphInstance& h, const ExperimentConfig& cfg, const std::string& algorithm,
                   int k, const std::vector<double>& slack, std::uint64_t seed);
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

std::string slack_label(const std::vector<double>& slack);
std::string records_to_csv(const std::vector<RunRecord>& records);
nlohmann::json records_to_json(const std::vector<RunRecord>& records);
// Reads back what records_to_csv / records_to_json wrote (clusterings and
// traces are not part of these formats).
std::vector<RunRecord> records_from_csv(const std::string& text);
std::vector<RunRecord> records_from_json(const nlohmann::json& j);

// SVG line chart of one objective for one slack setting: x = k, one series
// per algorithm (mean over seeds of successful runs).
std::string render_svg(const std::vector<RunRecord>& records, std::size_t objective,
                       const std::vector<double>& slack);

// Writes results.csv, results.json and <objective>_slack_<label>.svg files
// for the requested formats. Returns the written paths.
std::vector<std::filesystem::path> emit_report(const std::vector<RunRecord>& records,
                                               const std::vector<std::string>& formats,
                                               const std::filesystem::path& outdir);

}  // namespace rlmoc
