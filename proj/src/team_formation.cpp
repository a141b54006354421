#include <algorithm>
#include <limits>
#include <optional>

#include "makeshift_internal.hpp"
#include "rlmoc/errors.hpp"
#include "rlmoc/flow.hpp"
#include "rlmoc/makeshifts.hpp"

namespace rlmoc {

namespace {

// Balanced assignment of experts to fixed centers. Each center starts in
// its own block; blocks then take floor(|X|/k) members, and |X| mod k of
// them one more. Only expert-center pairs within `threshold` are allowed.
// With `min_cost` the assignment also minimizes the total distance.
std::optional<std::vector<int>> balanced_assignment(const GraphInstance& h,
                                                    const std::vector<NodeId>& experts,
                                                    const std::vector<NodeId>& centers,
                                                    double threshold, bool min_cost) {
  const int m = static_cast<int>(experts.size());
  const int k = static_cast<int>(centers.size());
  const int floor_size = m / k;
  const int extra = m % k;

  std::vector<int> block(m, -1);
  std::vector<int> free_experts;
  for (int i = 0; i < m; ++i) {
    const auto it = std::find(centers.begin(), centers.end(), experts[i]);
    if (it != centers.end()) {
      block[i] = static_cast<int>(it - centers.begin());
    } else {
      free_experts.push_back(i);
    }
  }
  const int f = static_cast<int>(free_experts.size());
  if (f == 0) return block;

  // Nodes: source, free experts, centers, overflow, sink.
  const int source = 0;
  const int first_center = 1 + f;
  const int overflow = first_center + k;
  const int sink = overflow + 1;
  std::vector<std::pair<int, std::pair<int, int>>> arcs;  // (arc, (expert slot, block))

  auto build = [&](auto& flow, auto add) {
    for (int s = 0; s < f; ++s) add(flow, source, 1 + s, 1, 0.0);
    for (int s = 0; s < f; ++s) {
      const NodeId x = experts[free_experts[s]];
      for (int b = 0; b < k; ++b) {
        const double w = h.d(x, centers[b]);
        if (w <= threshold) arcs.push_back({add(flow, 1 + s, first_center + b, 1, w), {s, b}});
      }
    }
    for (int b = 0; b < k; ++b) {
      if (floor_size > 1) add(flow, first_center + b, sink, floor_size - 1, 0.0);
      if (extra > 0) add(flow, first_center + b, overflow, 1, 0.0);
    }
    if (extra > 0) add(flow, overflow, sink, extra, 0.0);
  };

  int pushed = 0;
  auto read = [&](const auto& flow) {
    for (const auto& [arc, slot] : arcs) {
      if (flow.flow(arc) > 0) block[free_experts[slot.first]] = slot.second;
    }
  };
  if (min_cost) {
    MinCostFlow flow(sink + 1);
    build(flow, [](MinCostFlow& g, int u, int v, int cap, double w) {
      return g.add_arc(u, v, cap, w);
    });
    pushed = flow.solve(source, sink, f).first;
    if (pushed != f) return std::nullopt;
    read(flow);
  } else {
    MaxFlow flow(sink + 1);
    build(flow, [](MaxFlow& g, int u, int v, int cap, double) { return g.add_arc(u, v, cap); });
    pushed = flow.solve(source, sink);
    if (pushed != f) return std::nullopt;
    read(flow);
  }
  return block;
}

void check_experts(const GraphInstance& h, const std::vector<NodeId>& experts, int k) {
  if (k < 1) throw ConfigError("k must be positive");
  if (experts.empty()) throw DegenerateError("team formation needs at least one expert");
  if (static_cast<int>(experts.size()) < k) {
    throw InfeasibleError("only " + std::to_string(experts.size()) +
                          " experts for k = " + std::to_string(k) +
                          "; some team would have no expert");
  }
  for (NodeId x : experts) {
    if (x < 0 || x >= h.size()) throw ConfigError("expert id out of range");
  }
}

BalancedClusters finish(const GraphInstance& h, std::vector<NodeId> experts,
                        std::vector<NodeId> centers, std::vector<int> block, double radius) {
  BalancedClusters out;
  out.radius = radius;
  for (std::size_t i = 0; i < experts.size(); ++i) {
    out.assigned_radius = std::max(out.assigned_radius, h.d(experts[i], centers[block[i]]));
  }
  out.experts = std::move(experts);
  out.centers = std::move(centers);
  out.block = std::move(block);
  return out;
}

// Extends an expert clustering to all of V.
Clustering attach_nonexperts(const GraphInstance& h, const BalancedClusters& bc,
                             const MakeshiftOptions& opts) {
  const int n = h.size();
  const int k = static_cast<int>(bc.centers.size());
  std::vector<int> assignment(n, -1);
  for (std::size_t i = 0; i < bc.experts.size(); ++i) assignment[bc.experts[i]] = bc.block[i];
  for (int u = 0; u < n; ++u) {
    if (assignment[u] >= 0) continue;
    double best = std::numeric_limits<double>::infinity();
    if (opts.nonexpert == NonExpertRule::kClosestCenter) {
      for (int b = 0; b < k; ++b) {
        const double x = h.d(u, bc.centers[b]);
        if (x < best) best = x, assignment[u] = b;
      }
    } else {
      for (std::size_t i = 0; i < bc.experts.size(); ++i) {
        const double x = h.d(u, bc.experts[i]);
        if (x < best) best = x, assignment[u] = bc.block[i];
      }
    }
  }
  Clustering c = Clustering::FromAssignment(std::move(assignment), k);
  c.centers = bc.centers;
  return c;
}

std::vector<NodeId> sorted_unique(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

BalancedClusters balanced_kcenter(const GraphInstance& h, const std::vector<NodeId>& experts_in,
                                  int k, const MakeshiftOptions& opts) {
  auto experts = sorted_unique(experts_in);
  check_experts(h, experts, k);
  if (opts.balance_radius_multiplier < 1.0) {
    throw ConfigError("balance radius multiplier must be at least 1");
  }
  auto centers = greedy_kcenter(h, experts, k, opts).centers;

  std::vector<double> radii;
  for (NodeId x : experts) {
    for (NodeId c : centers) radii.push_back(h.d(x, c));
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  const double mult = opts.balance_radius_multiplier;

  std::size_t lo = 0;
  std::size_t hi = radii.size() - 1;  // the largest distance admits every pair
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (balanced_assignment(h, experts, centers, mult * radii[mid], false)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  auto block = balanced_assignment(h, experts, centers, mult * radii[lo], false);
  if (!block) {
    block = balanced_assignment(h, experts, centers, radii.back(), false);
  }
  return finish(h, std::move(experts), std::move(centers), std::move(*block), radii[lo]);
}

Clustering makeshift_tf(const GraphInstance& h, const std::vector<NodeId>& experts, int k,
                        const MakeshiftOptions& opts) {
  return attach_nonexperts(h, balanced_kcenter(h, experts, k, opts), opts);
}

Clustering makeshift_tf_kmedian(const GraphInstance& h, const std::vector<NodeId>& experts_in,
                                int k, const MakeshiftOptions& opts) {
  auto experts = sorted_unique(experts_in);
  check_experts(h, experts, k);
  auto centers = swap_kmedian(h, experts, k, opts);
  auto block = balanced_assignment(h, experts, centers,
                                   std::numeric_limits<double>::infinity(), true);
  double radius = 0.0;
  for (std::size_t i = 0; i < experts.size(); ++i) {
    radius = std::max(radius, h.d(experts[i], centers[(*block)[i]]));
  }
  auto bc = finish(h, std::move(experts), std::move(centers), std::move(*block), radius);
  return attach_nonexperts(h, bc, opts);
}

}  // namespace rlmoc
