#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rlmoc/clustering.hpp"
#include "rlmoc/graph.hpp"
#include "rlmoc/objectives.hpp"

namespace rlmoc {

inline constexpr int kOracleMaxNodes = 12;

// Calls `visit` once for every partition of {0..n-1} into exactly k
// non-empty blocks, as a restricted growth string (block of node i, with
// node 0 in block 0 and each new block opened in order).
void enumerate_partitions(int n, int k, const std::function<void(const std::vector<int>&)>& visit);
std::uint64_t count_partitions(int n, int k);

struct OracleResult {
  Clustering best_clustering;
  std::vector<ObjectiveValue> best_values;
  std::uint64_t enumerated = 0;
};

// Exhaustive lexicographic optimum. Each partition gets the best in-block
// centers for the first center-based objective in O; a later center-based
// objective then picks among centers that keep the earlier one optimal.
// Ties between partitions keep the first in enumeration order.
OracleResult oracle_lmoc(const GraphInstance& h, int k, const std::vector<ObjectiveSpec>& objectives,
                         const EvalContext& ctx = {});

double oracle_single_objective(const GraphInstance& h, int k, const ObjectiveSpec& o,
                               const EvalContext& ctx = {});

// Minimum over all edge covers of the heaviest edge, by branch and bound.
PairStructure oracle_edge_cover(const GraphInstance& h);

// Minimum over all Blue-saturating matchings (along E) of the heaviest
// matched edge, by exhaustive search.
double oracle_matching_radius(const GraphInstance& h);

}  // namespace rlmoc
