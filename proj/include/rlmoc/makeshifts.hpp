#pragma once

#include <cstdint>
#include <vector>

#include "rlmoc/clustering.hpp"
#include "rlmoc/graph.hpp"
#include "rlmoc/objectives.hpp"

namespace rlmoc {

enum class FirstCenterRule : std::uint8_t { kLowestIndex, kSeededRandom };
enum class NonExpertRule : std::uint8_t { kClosestExpert, kClosestCenter };

struct MakeshiftOptions {
  FirstCenterRule first_center = FirstCenterRule::kLowestIndex;
  std::uint64_t seed = 0;
  NonExpertRule nonexpert = NonExpertRule::kClosestCenter;
  // Experts may join a center within multiplier * r during the balanced
  // k-center search over radii r.
  double balance_radius_multiplier = 1.0;
};

// Output of the RS and F makeshifts: blocks are the fragments (stars,
// matched groups), which are also the atoms for later stages.
struct Fragments {
  Clustering clustering;
  PairStructure pairs;
  // Per block: the star center (RS), the Blue endpoint (F), or the lowest
  // member otherwise.
  std::vector<NodeId> hubs;
};

// Farthest-first (Gonzalez) centers over `subset`, plus the nearest-center
// assignment of every node in `subset` (ties to the lower block index).
struct GreedyCenters {
  std::vector<NodeId> centers;
  // Parallel to subset.
  std::vector<int> block;
  double radius = 0.0;
};

GreedyCenters greedy_kcenter(const GraphInstance& h, const std::vector<NodeId>& subset,
                             int k, const MakeshiftOptions& opts);
// Greedy k-center over all of V as a plain clustering (singleton atoms).
Clustering greedy_kcenter_clustering(const GraphInstance& h, int k,
                                     const MakeshiftOptions& opts);

// k-center makeshift: greedy centers on V, nearest assignment, then atoms
// of `in` are made whole again and every block is kept non-empty.
Clustering makeshift_kcenter(const GraphInstance& h, const Clustering& in, int k,
                             const MakeshiftOptions& opts);

// Minimum-bottleneck edge cover (minimum incident edge per node, then
// redundant edges pruned heaviest first). When `in` has multi-node atoms
// the cover is computed between atoms and only atoms with an uncovered
// member need covering.
Fragments makeshift_rs(const GraphInstance& h, const Clustering& in);
Fragments makeshift_rs(const GraphInstance& h);

// Cover in which every node keeps at least gamma incident pairs, at the
// smallest feasible radius.
Fragments makeshift_rs_gamma(const GraphInstance& h, int gamma);
Fragments makeshift_rs_gamma(const GraphInstance& h, const Clustering& in, int gamma);

// Minimum-radius matching saturating every Blue node.
Fragments makeshift_fairness(const GraphInstance& h, const Clustering& in);
Fragments makeshift_fairness(const GraphInstance& h);
// b-matching variant: each Blue node gets `alpha` Purple partners, each
// Purple node serves at most `beta` Blue nodes.
Fragments makeshift_fairness_ab(const GraphInstance& h, int alpha, int beta);
Fragments makeshift_fairness_ab(const GraphInstance& h, const Clustering& in, int alpha,
                                int beta);
// k-median flavour: Blue-saturating matching of minimum total distance.
Fragments makeshift_fairness_kmedian(const GraphInstance& h, const Clustering& in);

// Exactly balanced k-center on the expert set.
struct BalancedClusters {
  std::vector<NodeId> experts;
  std::vector<int> block;  // parallel to experts
  std::vector<NodeId> centers;
  // Smallest search radius at which the balanced assignment was feasible.
  double radius = 0.0;
  // Largest expert-to-own-center distance in the returned assignment.
  double assigned_radius = 0.0;
};

BalancedClusters balanced_kcenter(const GraphInstance& h, const std::vector<NodeId>& experts,
                                  int k, const MakeshiftOptions& opts);

Clustering makeshift_tf(const GraphInstance& h, const std::vector<NodeId>& experts, int k,
                        const MakeshiftOptions& opts);
Clustering makeshift_tf_kmedian(const GraphInstance& h, const std::vector<NodeId>& experts,
                                int k, const MakeshiftOptions& opts);

// Single-swap local search k-median over `subset`, seeded with the greedy
// k-center centers. Returns the centers.
std::vector<NodeId> swap_kmedian(const GraphInstance& h, const std::vector<NodeId>& subset,
                                 int k, const MakeshiftOptions& opts);
// Approximation factor of single-swap local search, used for estimates.
inline constexpr double kSwapKMedianFactor = 5.0;

Clustering makeshift_kmedian(const GraphInstance& h, const Clustering& in, int k,
                             const MakeshiftOptions& opts);

}  // namespace rlmoc
