#include "rlmoc/estimate.hpp"

#include <algorithm>
#include <numeric>

#include "rlmoc/errors.hpp"

namespace rlmoc {

namespace {

std::vector<NodeId> all_nodes(const GraphInstance& h) {
  std::vector<NodeId> v(h.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

OptimalEstimate estimate_optimal(const GraphInstance& h, const ObjectiveSpec& o, int k,
                                 const MakeshiftOptions& opts, double makeshift_value) {
  switch (o.kind) {
    case ObjectiveKind::kResourceSharing:
    case ObjectiveKind::kFairness:
      return {EstimateKind::kExact, makeshift_value};
    case ObjectiveKind::kKCenter:
      return {EstimateKind::kLowerBound, greedy_kcenter(h, all_nodes(h), k, opts).radius / 2.0};
    case ObjectiveKind::kKMedian: {
      const auto all = all_nodes(h);
      const auto centers = swap_kmedian(h, all, k, opts);
      double cost = 0.0;
      for (NodeId u : all) {
        double best = ObjectiveValue::kInfinity;
        for (NodeId c : centers) best = std::min(best, h.d(u, c));
        cost += best;
      }
      return {EstimateKind::kLowerBound, cost / kSwapKMedianFactor};
    }
    case ObjectiveKind::kTeamFormation: {
      const auto experts = resolve_experts(h, o);
      const int m = static_cast<int>(experts.size());
      if (k < 1) throw ConfigError("k must be positive");
      if (m / k == 0) {
        throw DegenerateError("fewer experts (" + std::to_string(m) + ") than teams (" +
                              std::to_string(k) + ")");
      }
      const double hi = (m + k - 1) / k;
      const double lo = m / k;
      return {EstimateKind::kLowerBound, hi / lo};
    }
  }
  throw Error("unknown objective kind");
}

}  // namespace rlmoc
