#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rlmoc/clustering.hpp"
#include "rlmoc/graph.hpp"

namespace rlmoc {

enum class ObjectiveKind : std::uint8_t {
  kKCenter,
  kKMedian,
  kResourceSharing,
  kFairness,
  kTeamFormation,
};

enum class Direction : std::uint8_t { kMinimize, kMaximize };

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::kKCenter;
  // Resource sharing: required number of co-clustered neighbors.
  int gamma = 1;
  // Fairness: each Blue node needs `alpha` Purple partners; each Purple
  // node serves at most `beta` Blue nodes.
  int alpha = 1;
  int beta = 1;
  // Team formation expert set. Empty means "use the instance's expert flags".
  std::vector<NodeId> experts;

  Direction direction() const;
  // CLI spelling: kc, km, rs, f, tf.
  std::string name() const;
  bool is_classical() const {
    return kind == ObjectiveKind::kKCenter || kind == ObjectiveKind::kKMedian;
  }
};

ObjectiveSpec parse_objective(std::string_view name);
// Comma separated list, e.g. "rs,kc".
std::vector<ObjectiveSpec> parse_objectives(std::string_view list);

// Experts used by a TF objective on this instance.
std::vector<NodeId> resolve_experts(const GraphInstance& h, const ObjectiveSpec& o);

struct ObjectiveValue {
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  double value = 0.0;
  Direction direction = Direction::kMinimize;

  bool is_infinite() const { return value == kInfinity; }
};

enum class PairKind : std::uint8_t { kEdgeCover, kMatching, kBMatching, kGammaCover };

// Auxiliary edge set E' produced by the RS and F makeshifts.
struct PairStructure {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  double realized_radius = 0.0;
  PairKind kind = PairKind::kEdgeCover;
};

// Extra inputs some objectives need beyond (H, C).
struct EvalContext {
  // E' from the fairness makeshift; required by eval_fairness.
  const PairStructure* fairness_pairs = nullptr;
};

// Two objective values are equal when they differ by at most
// kValueTolerance * max(1, |a|, |b|). Infinities equal each other only.
inline constexpr double kValueTolerance = 1e-9;
bool values_equal(double a, double b);
// Strictly better in the given direction, beyond tolerance.
bool is_better(double a, double b, Direction dir);

ObjectiveValue eval_kcenter(const GraphInstance& h, const Clustering& c);
ObjectiveValue eval_kmedian(const GraphInstance& h, const Clustering& c);
ObjectiveValue eval_resource_sharing(const GraphInstance& h, const Clustering& c,
                                     int gamma = 1);
ObjectiveValue eval_fairness(const GraphInstance& h, const Clustering& c,
                             const PairStructure& matched);
ObjectiveValue eval_team_formation(const GraphInstance& h, const Clustering& c,
                                   const std::vector<NodeId>& experts);

ObjectiveValue evaluate(const GraphInstance& h, const Clustering& c,
                        const ObjectiveSpec& o, const EvalContext& ctx = {});
std::vector<ObjectiveValue> evaluate_all(const GraphInstance& h, const Clustering& c,
                                         const std::vector<ObjectiveSpec>& objectives,
                                         const EvalContext& ctx = {});

enum class LexOrder : std::uint8_t { kFirstSuperior, kSecondSuperior, kEqual };

// First-difference rule: the first objective whose values differ decides.
LexOrder lex_compare_values(const std::vector<ObjectiveValue>& a,
                            const std::vector<ObjectiveValue>& b);
LexOrder lex_compare(const GraphInstance& h, const Clustering& c1, const Clustering& c2,
                     const std::vector<ObjectiveSpec>& objectives,
                     const EvalContext& ctx = {});

enum class EstimateKind : std::uint8_t { kExact, kLowerBound, kUpperBound };

struct OptimalEstimate {
  EstimateKind kind = EstimateKind::kExact;
  double value = 0.0;
};

bool slack_violated(const ObjectiveValue& value, double delta, const OptimalEstimate& est);
bool slack_violated(const GraphInstance& h, const Clustering& c, const ObjectiveSpec& o,
                    double delta, const OptimalEstimate& est, const EvalContext& ctx = {});

// Rejects slack vectors of the wrong length, negative entries, and (unless
// allow_infeasible) values that cannot be met: delta > 1 for maximized
// objectives, delta < 2 for k-center, delta < 1 for the other minimized ones.
void check_slack(const std::vector<ObjectiveSpec>& objectives,
                 const std::vector<double>& deltas, bool allow_infeasible);

}  // namespace rlmoc
