#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "rlmoc/graph.hpp"

namespace rlmoc {

// A partition of V into k blocks.
//
// `atoms` is itself a partition of V into groups that must stay in one
// block (stars from resource sharing, matched pairs from fairness,
// singletons otherwise). `centers` is either empty or holds one node per
// block; a center always lies in its own block.
struct Clustering {
  std::vector<int> assignment;
  int k = 0;
  std::vector<NodeId> centers;
  std::vector<std::vector<NodeId>> atoms;

  // Every node in its own block and its own atom.
  static Clustering Singletons(int n);
  // Blocks from an explicit assignment vector; atoms become singletons.
  static Clustering FromAssignment(std::vector<int> assignment, int k);
  // One block per group; groups must partition 0..n-1.
  static Clustering FromBlocks(const std::vector<std::vector<NodeId>>& blocks, int n);

  int size() const { return static_cast<int>(assignment.size()); }
  bool has_centers() const { return !centers.empty(); }

  // Members of every block, ascending.
  std::vector<std::vector<NodeId>> blocks() const;
  std::vector<int> block_sizes() const;
  // Index of the atom holding each node.
  std::vector<int> atom_index() const;

  // True when there are exactly `target_k` non-empty blocks.
  bool is_finalized(int target_k) const;
  // Throws ConfigError describing the first broken invariant.
  void validate() const;

  // Relabels blocks in order of their smallest member and sorts atoms, so
  // equal partitions compare equal. Centers follow their blocks.
  void canonicalize();
};

// True when both clusterings induce the same partition (labels ignored).
bool same_partition(const Clustering& a, const Clustering& b);

// Stable JSON rendering: node labels per block, centers, atoms. Blocks are
// listed in canonical order so the output is byte-identical for equal
// clusterings.
nlohmann::json clustering_to_json(const GraphInstance& h, const Clustering& c);
Clustering clustering_from_json(const GraphInstance& h, const nlohmann::json& j);

}  // namespace rlmoc
