#include <algorithm>
#include <limits>
#include <random>

#include "makeshift_internal.hpp"
#include "rlmoc/errors.hpp"
#include "rlmoc/makeshifts.hpp"

namespace rlmoc {

GreedyCenters greedy_kcenter(const GraphInstance& h, const std::vector<NodeId>& subset, int k,
                             const MakeshiftOptions& opts) {
  const int m = static_cast<int>(subset.size());
  if (k < 1) throw ConfigError("k must be positive");
  if (k > m) {
    throw InfeasibleError("k = " + std::to_string(k) + " exceeds the " + std::to_string(m) +
                          " available points");
  }
  GreedyCenters out;
  std::vector<char> chosen(m, 0);
  std::vector<double> gap(m, std::numeric_limits<double>::infinity());
  std::vector<int> nearest(m, 0);

  int first = 0;
  if (opts.first_center == FirstCenterRule::kSeededRandom) {
    std::mt19937_64 rng(opts.seed);
    first = static_cast<int>(rng() % static_cast<std::uint64_t>(m));
  }
  int next = first;
  for (int b = 0; b < k; ++b) {
    chosen[next] = 1;
    out.centers.push_back(subset[next]);
    const NodeId c = subset[next];
    for (int i = 0; i < m; ++i) {
      const double x = h.d(subset[i], c);
      // Strict comparison keeps the earlier (lower index) center on ties.
      if (x < gap[i]) {
        gap[i] = x;
        nearest[i] = b;
      }
    }
    if (b + 1 == k) break;
    next = -1;
    for (int i = 0; i < m; ++i) {
      if (chosen[i]) continue;
      if (next < 0 || gap[i] > gap[next]) next = i;
    }
  }
  for (int b = 0; b < k; ++b) {
    for (int i = 0; i < m; ++i) {
      if (subset[i] == out.centers[b]) nearest[i] = b, gap[i] = 0.0;
    }
  }
  out.block = std::move(nearest);
  out.radius = m == 0 ? 0.0 : *std::max_element(gap.begin(), gap.end());
  return out;
}

Clustering greedy_kcenter_clustering(const GraphInstance& h, int k,
                                     const MakeshiftOptions& opts) {
  std::vector<NodeId> all(h.size());
  std::iota(all.begin(), all.end(), 0);
  auto g = greedy_kcenter(h, all, k, opts);
  Clustering c = Clustering::FromAssignment(std::move(g.block), k);
  c.centers = std::move(g.centers);
  return c;
}

Clustering makeshift_kcenter(const GraphInstance& h, const Clustering& in, int k,
                             const MakeshiftOptions& opts) {
  auto atoms = detail::atoms_or_singletons(in);
  if (k > h.size()) {
    throw InfeasibleError("k = " + std::to_string(k) + " exceeds n = " +
                          std::to_string(h.size()));
  }
  if (k > static_cast<int>(atoms.size())) {
    throw InfeasibleError("k = " + std::to_string(k) + " exceeds the " +
                          std::to_string(atoms.size()) +
                          " co-clustered groups; relax the earlier objective or lower k");
  }
  Clustering c = greedy_kcenter_clustering(h, k, opts);
  c.atoms = std::move(atoms);
  detail::repair_cohesion(h, c, detail::CenterScore::kMaxDistance);
  return c;
}

}  // namespace rlmoc
