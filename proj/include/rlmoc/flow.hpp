#pragma once

#include <vector>

namespace rlmoc {

// Dinic max-flow on integer capacities. Arc iteration follows insertion
// order, so results are deterministic for a fixed construction order.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  // Returns the arc id; its reverse is id ^ 1.
  int add_arc(int from, int to, int capacity);
  int solve(int source, int sink);
  int flow(int arc) const { return arcs_[arc].flow; }
  int node_count() const { return static_cast<int>(adj_.size()); }

 private:
  struct Arc {
    int to;
    int capacity;
    int flow;
  };
  bool build_levels(int source, int sink);
  int push(int u, int sink, int limit);

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

// Successive shortest paths with Dijkstra and potentials. Costs must be
// non-negative on the original arcs.
class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes);

  int add_arc(int from, int to, int capacity, double cost);
  // Pushes up to `limit` units; returns {flow, cost}.
  std::pair<int, double> solve(int source, int sink, int limit);
  int flow(int arc) const { return arcs_[arc].flow; }

 private:
  struct Arc {
    int to;
    int capacity;
    int flow;
    double cost;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace rlmoc
