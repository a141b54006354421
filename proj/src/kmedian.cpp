#include <limits>

#include "makeshift_internal.hpp"
#include "rlmoc/errors.hpp"
#include "rlmoc/makeshifts.hpp"

namespace rlmoc {

namespace {

constexpr double kMinRelativeGain = 1e-6;

struct NearestTwo {
  std::vector<int> first;  // index into centers
  std::vector<double> d1;
  std::vector<double> d2;
  double cost = 0.0;
};

NearestTwo nearest_two(const GraphInstance& h, const std::vector<NodeId>& subset,
                       const std::vector<NodeId>& centers) {
  const double inf = std::numeric_limits<double>::infinity();
  const int m = static_cast<int>(subset.size());
  NearestTwo out{std::vector<int>(m, 0), std::vector<double>(m, inf),
                 std::vector<double>(m, inf), 0.0};
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < static_cast<int>(centers.size()); ++c) {
      const double x = h.d(subset[i], centers[c]);
      if (x < out.d1[i]) {
        out.d2[i] = out.d1[i];
        out.d1[i] = x;
        out.first[i] = c;
      } else if (x < out.d2[i]) {
        out.d2[i] = x;
      }
    }
    out.cost += out.d1[i];
  }
  return out;
}

}  // namespace

std::vector<NodeId> swap_kmedian(const GraphInstance& h, const std::vector<NodeId>& subset,
                                 int k, const MakeshiftOptions& opts) {
  std::vector<NodeId> centers = greedy_kcenter(h, subset, k, opts).centers;
  const int m = static_cast<int>(subset.size());
  std::vector<char> is_center(h.size(), 0);
  for (NodeId c : centers) is_center[c] = 1;

  for (;;) {
    const NearestTwo near = nearest_two(h, subset, centers);
    double best_cost = near.cost;
    int best_out = -1;
    int best_in = -1;
    for (int out = 0; out < k; ++out) {
      for (int j = 0; j < m; ++j) {
        const NodeId cand = subset[j];
        if (is_center[cand]) continue;
        double cost = 0.0;
        for (int i = 0; i < m; ++i) {
          const double rest = near.first[i] == out ? near.d2[i] : near.d1[i];
          cost += std::min(rest, h.d(subset[i], cand));
          if (cost >= best_cost) break;
        }
        if (cost < best_cost) {
          best_cost = cost;
          best_out = out;
          best_in = cand;
        }
      }
    }
    if (best_out < 0 || near.cost - best_cost <= kMinRelativeGain * near.cost) break;
    is_center[centers[best_out]] = 0;
    is_center[best_in] = 1;
    centers[best_out] = best_in;
  }
  return centers;
}

Clustering makeshift_kmedian(const GraphInstance& h, const Clustering& in, int k,
                             const MakeshiftOptions& opts) {
  auto atoms = detail::atoms_or_singletons(in);
  const int n = h.size();
  if (k > n) {
    throw InfeasibleError("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  }
  if (k > static_cast<int>(atoms.size())) {
    throw InfeasibleError("k = " + std::to_string(k) + " exceeds the " +
                          std::to_string(atoms.size()) +
                          " co-clustered groups; relax the earlier objective or lower k");
  }
  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), 0);
  auto centers = swap_kmedian(h, all, k, opts);
  const NearestTwo near = nearest_two(h, all, centers);
  Clustering c = Clustering::FromAssignment(near.first, k);
  c.centers = std::move(centers);
  c.atoms = std::move(atoms);
  detail::repair_cohesion(h, c, detail::CenterScore::kSumDistance);
  return c;
}

}  // namespace rlmoc
