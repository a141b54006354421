#include "rlmoc/oracle.hpp"

#include <algorithm>
#include <limits>

#include "rlmoc/errors.hpp"

namespace rlmoc {

namespace {

void check_cap(int n, int cap) {
  if (n > cap) {
    throw ConfigError("oracle is limited to " + std::to_string(cap) + " nodes, got " +
                      std::to_string(n));
  }
}

void grow(int i, int used, int n, int k, std::vector<int>& rgs,
          const std::function<void(const std::vector<int>&)>& visit) {
  if (i == n) {
    if (used == k) visit(rgs);
    return;
  }
  const int top = std::min(used, k - 1);
  for (int b = 0; b <= top; ++b) {
    const int next_used = std::max(used, b + 1);
    // Enough positions must remain to open the missing blocks.
    if (n - i - 1 < k - next_used) continue;
    rgs[i] = b;
    grow(i + 1, next_used, n, k, rgs, visit);
  }
}

bool within(double x, double bound) { return x <= bound || values_equal(x, bound); }

struct BlockCenter {
  NodeId center = -1;
  double radius = 0.0;
  double sum = 0.0;
};

}  // namespace

void enumerate_partitions(int n, int k,
                          const std::function<void(const std::vector<int>&)>& visit) {
  check_cap(n, kOracleMaxNodes);
  if (k < 1) throw ConfigError("k must be positive");
  if (n < 1 || k > n) return;
  std::vector<int> rgs(n, 0);
  grow(1, 1, n, k, rgs, visit);
}

std::uint64_t count_partitions(int n, int k) {
  if (n < 0 || k < 0) return 0;
  std::vector<std::vector<std::uint64_t>> s(n + 1, std::vector<std::uint64_t>(k + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= std::min(i, k); ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
  }
  return s[n][k];
}

OracleResult oracle_lmoc(const GraphInstance& h, int k,
                         const std::vector<ObjectiveSpec>& objectives, const EvalContext& ctx) {
  const int n = h.size();
  check_cap(n, kOracleMaxNodes);
  if (objectives.empty()) throw ConfigError("oracle needs at least one objective");

  // The first center-based objective decides how centers are picked.
  bool radius_first = true;
  for (const auto& o : objectives) {
    if (o.is_classical()) {
      radius_first = o.kind == ObjectiveKind::kKCenter;
      break;
    }
  }
  std::vector<std::vector<NodeId>> experts(objectives.size());
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    if (objectives[i].kind == ObjectiveKind::kTeamFormation) {
      experts[i] = resolve_experts(h, objectives[i]);
    }
    if (objectives[i].kind == ObjectiveKind::kFairness && ctx.fairness_pairs == nullptr) {
      throw ConfigError("fairness evaluation needs the matched pair set");
    }
  }

  OracleResult out;
  bool have_best = false;
  std::vector<std::vector<NodeId>> members(k);
  std::vector<BlockCenter> chosen(k);
  std::vector<ObjectiveValue> values(objectives.size());

  enumerate_partitions(n, k, [&](const std::vector<int>& rgs) {
    ++out.enumerated;
    for (auto& m : members) m.clear();
    for (int u = 0; u < n; ++u) members[rgs[u]].push_back(u);

    double bound = 0.0;
    for (int b = 0; b < k; ++b) {
      double best_radius = std::numeric_limits<double>::infinity();
      for (NodeId c : members[b]) {
        double r = 0.0;
        for (NodeId u : members[b]) r = std::max(r, h.d(u, c));
        best_radius = std::min(best_radius, r);
      }
      bound = std::max(bound, best_radius);
    }
    for (int b = 0; b < k; ++b) {
      BlockCenter best;
      bool any = false;
      for (NodeId c : members[b]) {
        BlockCenter cand{c, 0.0, 0.0};
        for (NodeId u : members[b]) {
          cand.radius = std::max(cand.radius, h.d(u, c));
          cand.sum += h.d(u, c);
        }
        bool better;
        if (!any) {
          better = true;
        } else if (radius_first &&
                   within(cand.radius, bound) != within(best.radius, bound)) {
          // Smallest sum among centers that keep the optimal max radius.
          better = within(cand.radius, bound);
        } else if (!values_equal(cand.sum, best.sum)) {
          better = cand.sum < best.sum;
        } else {
          better = !values_equal(cand.radius, best.radius) && cand.radius < best.radius;
        }
        if (better) best = cand;
        any = true;
      }
      chosen[b] = best;
    }
    for (std::size_t i = 0; i < objectives.size(); ++i) {
      const auto& o = objectives[i];
      switch (o.kind) {
        case ObjectiveKind::kKCenter: {
          double r = 0.0;
          for (const auto& bc : chosen) r = std::max(r, bc.radius);
          values[i] = {r, Direction::kMinimize};
          break;
        }
        case ObjectiveKind::kKMedian: {
          double s = 0.0;
          for (const auto& bc : chosen) s += bc.sum;
          values[i] = {s, Direction::kMinimize};
          break;
        }
        case ObjectiveKind::kResourceSharing: {
          int covered = 0;
          for (int u = 0; u < n; ++u) {
            int together = 0;
            for (NodeId v : h.neighbors(u)) together += rgs[v] == rgs[u];
            covered += together >= o.gamma;
          }
          values[i] = {n == 0 ? 0.0 : static_cast<double>(covered) / n, Direction::kMaximize};
          break;
        }
        case ObjectiveKind::kFairness: {
          Clustering view;
          view.assignment = rgs;
          view.k = k;
          values[i] = eval_fairness(h, view, *ctx.fairness_pairs);
          break;
        }
        case ObjectiveKind::kTeamFormation: {
          std::vector<int> count(k, 0);
          for (NodeId x : experts[i]) ++count[rgs[x]];
          const auto [lo, hi] = std::minmax_element(count.begin(), count.end());
          const double v = *lo == 0 ? ObjectiveValue::kInfinity
                                    : static_cast<double>(*hi) / static_cast<double>(*lo);
          values[i] = {v, Direction::kMinimize};
          break;
        }
      }
    }

    if (!have_best || lex_compare_values(values, out.best_values) == LexOrder::kFirstSuperior) {
      have_best = true;
      out.best_values = values;
      out.best_clustering = Clustering::FromAssignment(rgs, k);
      out.best_clustering.centers.clear();
      for (const auto& bc : chosen) out.best_clustering.centers.push_back(bc.center);
    }
  });
  if (!have_best) throw InfeasibleError("no partition of the instance into k blocks");
  return out;
}

double oracle_single_objective(const GraphInstance& h, int k, const ObjectiveSpec& o,
                               const EvalContext& ctx) {
  return oracle_lmoc(h, k, {o}, ctx).best_values.front().value;
}

PairStructure oracle_edge_cover(const GraphInstance& h) {
  const int n = h.size();
  check_cap(n, 10);
  std::vector<std::vector<std::pair<double, NodeId>>> incident(n);
  for (int u = 0; u < n; ++u) {
    for (NodeId v : h.neighbors(u)) incident[u].emplace_back(h.d(u, v), v);
    if (incident[u].empty()) {
      throw InfeasibleError("node '" + h.attrs(u).label + "' has no edge; no edge cover exists");
    }
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<NodeId, NodeId>> best_pairs;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<int> covered(n, 0);

  std::function<void(double)> search = [&](double heaviest) {
    int u = 0;
    while (u < n && covered[u] > 0) ++u;
    if (u == n) {
      if (heaviest < best) {
        best = heaviest;
        best_pairs = pairs;
      }
      return;
    }
    for (auto [w, v] : incident[u]) {
      const double next = std::max(heaviest, w);
      if (next >= best) continue;
      pairs.emplace_back(std::min<NodeId>(u, v), std::max<NodeId>(u, v));
      ++covered[u];
      ++covered[v];
      search(next);
      --covered[u];
      --covered[v];
      pairs.pop_back();
    }
  };
  search(0.0);

  PairStructure ps;
  ps.kind = PairKind::kEdgeCover;
  ps.pairs = std::move(best_pairs);
  std::sort(ps.pairs.begin(), ps.pairs.end());
  ps.realized_radius = n == 0 ? 0.0 : best;
  return ps;
}

double oracle_matching_radius(const GraphInstance& h) {
  const auto blue = h.blue_nodes();
  const auto purple = h.purple_nodes();
  if (blue.empty()) throw DegenerateError("matching radius is undefined without Blue nodes");
  if (blue.size() > 6 || purple.size() > 6) {
    throw ConfigError("matching oracle is limited to 6 Blue and 6 Purple nodes");
  }
  std::vector<char> used(h.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, double)> search = [&](std::size_t i, double heaviest) {
    if (i == blue.size()) {
      best = std::min(best, heaviest);
      return;
    }
    for (NodeId v : h.neighbors(blue[i])) {
      if (used[v] || h.attrs(v).color != Color::kPurple) continue;
      used[v] = 1;
      search(i + 1, std::max(heaviest, h.d(blue[i], v)));
      used[v] = 0;
    }
  };
  search(0, 0.0);
  if (best == std::numeric_limits<double>::infinity()) {
    throw InfeasibleError("no matching saturates the Blue nodes");
  }
  return best;
}

}  // namespace rlmoc
