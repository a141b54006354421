#include "rlmoc/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <utility>

namespace rlmoc {

MaxFlow::MaxFlow(int nodes) : adj_(nodes), level_(nodes), next_(nodes) {}

int MaxFlow::add_arc(int from, int to, int capacity) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, 0});
  arcs_.push_back({from, 0, 0});
  adj_[from].push_back(id);
  adj_[to].push_back(id + 1);
  return id;
}

bool MaxFlow::build_levels(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int id : adj_[u]) {
      const Arc& a = arcs_[id];
      if (a.flow < a.capacity && level_[a.to] < 0) {
        level_[a.to] = level_[u] + 1;
        q.push(a.to);
      }
    }
  }
  return level_[sink] >= 0;
}

int MaxFlow::push(int u, int sink, int limit) {
  if (u == sink) return limit;
  for (; next_[u] < adj_[u].size(); ++next_[u]) {
    const int id = adj_[u][next_[u]];
    Arc& a = arcs_[id];
    if (a.flow >= a.capacity || level_[a.to] != level_[u] + 1) continue;
    const int pushed = push(a.to, sink, std::min(limit, a.capacity - a.flow));
    if (pushed > 0) {
      a.flow += pushed;
      arcs_[id ^ 1].flow -= pushed;
      return pushed;
    }
  }
  return 0;
}

int MaxFlow::solve(int source, int sink) {
  int total = 0;
  while (build_levels(source, sink)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (int f = push(source, sink, std::numeric_limits<int>::max())) total += f;
  }
  return total;
}

MinCostFlow::MinCostFlow(int nodes) : adj_(nodes) {}

int MinCostFlow::add_arc(int from, int to, int capacity, double cost) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, 0, cost});
  arcs_.push_back({from, 0, 0, -cost});
  adj_[from].push_back(id);
  adj_[to].push_back(id + 1);
  return id;
}

std::pair<int, double> MinCostFlow::solve(int source, int sink, int limit) {
  const int n = static_cast<int>(adj_.size());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> potential(n, 0.0);
  std::vector<double> dist(n);
  std::vector<int> via(n);
  int flow = 0;
  double cost = 0.0;
  while (flow < limit) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(via.begin(), via.end(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > dist[u]) continue;
      for (int id : adj_[u]) {
        const Arc& a = arcs_[id];
        if (a.flow >= a.capacity) continue;
        // Reduced costs can dip below zero by rounding; clamp.
        const double reduced = std::max(0.0, a.cost + potential[u] - potential[a.to]);
        if (dist[u] + reduced < dist[a.to]) {
          dist[a.to] = dist[u] + reduced;
          via[a.to] = id;
          heap.emplace(dist[a.to], a.to);
        }
      }
    }
    if (dist[sink] == kInf) break;
    for (int v = 0; v < n; ++v) {
      if (dist[v] < kInf) potential[v] += dist[v];
    }
    int push = limit - flow;
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      const Arc& a = arcs_[via[v]];
      push = std::min(push, a.capacity - a.flow);
    }
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      arcs_[via[v]].flow += push;
      arcs_[via[v] ^ 1].flow -= push;
      cost += push * arcs_[via[v]].cost;
    }
    flow += push;
  }
  return {flow, cost};
}

}  // namespace rlmoc
