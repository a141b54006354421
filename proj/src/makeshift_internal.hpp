#pragma once

#include <numeric>
#include <vector>

#include "rlmoc/clustering.hpp"
#include "rlmoc/graph.hpp"
#include "rlmoc/makeshifts.hpp"

namespace rlmoc::detail {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Smaller root wins so representatives are the lowest member.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

// Groups of nodes connected through `atoms` and `pairs`, ordered by their
// smallest member; members ascending.
std::vector<std::vector<NodeId>> merge_groups(
    int n, const std::vector<std::vector<NodeId>>& atoms,
    const std::vector<std::pair<NodeId, NodeId>>& pairs);

// Atoms of `in`, or singletons when it carries none.
std::vector<std::vector<NodeId>> atoms_or_singletons(const Clustering& in);

enum class CenterScore { kMaxDistance, kSumDistance };

double center_cost(const GraphInstance& h, const std::vector<NodeId>& members, NodeId center,
                   CenterScore score);
// Member minimizing center_cost; ties prefer `incumbent`, then the lowest id.
NodeId best_center(const GraphInstance& h, const std::vector<NodeId>& members,
                   CenterScore score, NodeId incumbent = -1);

// Given a nearest-center clustering `c` (assignment, centers, atoms), makes
// every atom whole by moving it to the block of its anchor member, refills
// blocks emptied by that, and re-centers blocks the repair altered.
void repair_cohesion(const GraphInstance& h, Clustering& c, CenterScore score);

// Fragments from groups; keeps `in` (with its centers) if the partition is
// unchanged.
Fragments make_fragments(const GraphInstance& h, const Clustering& in,
                         std::vector<std::vector<NodeId>> groups, PairStructure pairs,
                         const std::vector<NodeId>& preferred_hubs);

}  // namespace rlmoc::detail
