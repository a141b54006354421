#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "makeshift_internal.hpp"
#include "rlmoc/bench.hpp"
#include "rlmoc/errors.hpp"

namespace rlmoc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Clustering with_centers(const GraphInstance& h, std::vector<std::vector<NodeId>> blocks,
                        detail::CenterScore score) {
  std::sort(blocks.begin(), blocks.end());
  Clustering c = Clustering::FromBlocks(blocks, h.size());
  for (const auto& b : blocks) c.centers.push_back(detail::best_center(h, b, score));
  return c;
}

detail::CenterScore score_for(const ProblemSpec& spec) {
  for (const auto& o : spec.objectives) {
    if (o.kind == ObjectiveKind::kKMedian) return detail::CenterScore::kSumDistance;
    if (o.kind == ObjectiveKind::kKCenter) return detail::CenterScore::kMaxDistance;
  }
  return detail::CenterScore::kMaxDistance;
}

}  // namespace

Clustering baseline_b2(const GraphInstance& h, int k, const MakeshiftOptions& opts) {
  if (k > h.size()) {
    throw InfeasibleError("k = " + std::to_string(k) + " exceeds n = " + std::to_string(h.size()));
  }
  return greedy_kcenter_clustering(h, k, opts);
}

Clustering baseline_b1(const GraphInstance& h, const ProblemSpec& spec) {
  if (spec.objectives.empty()) throw ConfigError("B1 needs an objective");
  const auto& o = spec.objectives.front();
  const int k = spec.k;
  const auto score = score_for(spec);
  std::vector<std::vector<NodeId>> blocks;
  switch (o.kind) {
    case ObjectiveKind::kTeamFormation:
      return makeshift_tf(h, resolve_experts(h, o), k, spec.options);
    case ObjectiveKind::kResourceSharing:
      blocks = (o.gamma == 1 ? makeshift_rs(h) : makeshift_rs_gamma(h, o.gamma)).clustering.blocks();
      break;
    case ObjectiveKind::kFairness:
      blocks = makeshift_fairness_ab(h, o.alpha, o.beta).clustering.blocks();
      break;
    default:
      throw ConfigError("B1 needs rs, f or tf as the first objective");
  }
  if (static_cast<int>(blocks.size()) < k) {
    throw InfeasibleError("only " + std::to_string(blocks.size()) + " fragments for k = " +
                          std::to_string(k));
  }
  std::vector<NodeId> centers;
  for (const auto& b : blocks) centers.push_back(detail::best_center(h, b, score));
  while (static_cast<int>(blocks.size()) > k) {
    std::size_t bi = 0;
    std::size_t bj = 1;
    double best = kInf;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        const double x = h.d(centers[i], centers[j]);
        if (x < best) best = x, bi = i, bj = j;
      }
    }
    blocks[bi].insert(blocks[bi].end(), blocks[bj].begin(), blocks[bj].end());
    std::sort(blocks[bi].begin(), blocks[bi].end());
    centers[bi] = detail::best_center(h, blocks[bi], score);
    blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(bj));
    centers.erase(centers.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return with_centers(h, std::move(blocks), score);
}

namespace {

// Incremental state for the agglomerative baseline.
class Agglomeration {
 public:
  Agglomeration(const GraphInstance& h, const ProblemSpec& spec)
      : h_(h), spec_(spec), n_(h.size()), block_of_(n_) {
    for (int u = 0; u < n_; ++u) {
      members_.push_back({u});
      block_of_[u] = u;
      alive_.push_back(1);
    }
    for (const auto& o : spec.objectives) {
      if (o.kind == ObjectiveKind::kTeamFormation) experts_ = resolve_experts(h, o);
    }
    pairs_ = fairness_reference(h, spec.objectives).pairs;
    expert_.assign(n_, 0);
    for (NodeId x : experts_) expert_[x] = 1;
    partners_.resize(n_);
    for (auto [a, b] : pairs_) {
      const NodeId blue = h.attrs(a).color == Color::kBlue ? a : b;
      partners_[blue].push_back(blue == a ? b : a);
    }
    max_to_.assign(n_, std::vector<double>(n_));
    sum_to_.assign(n_, std::vector<double>(n_));
    for (int c = 0; c < n_; ++c) {
      for (int b = 0; b < n_; ++b) max_to_[c][b] = sum_to_[c][b] = h.d(c, b);
    }
    radius_.assign(n_, 0.0);
    cost_.assign(n_, 0.0);
    covered_.assign(n_, 0);
    good_.assign(n_, 0);
  }

  Clustering run(int k) {
    int blocks = n_;
    while (blocks > k) {
      merge_best();
      --blocks;
    }
    std::vector<std::vector<NodeId>> out;
    for (int b = 0; b < n_; ++b) {
      if (alive_[b]) out.push_back(members_[b]);
    }
    std::sort(out.begin(), out.end());
    Clustering c = Clustering::FromBlocks(out, n_);
    for (const auto& m : out) c.centers.push_back(best_center_of(m, block_of_[m.front()]));
    return c;
  }

 private:
  struct Candidate {
    int a;
    int b;
    std::vector<double> values;
  };

  NodeId best_center_of(const std::vector<NodeId>& m, int block) const {
    const bool median = score_kind() == detail::CenterScore::kSumDistance;
    NodeId best = m.front();
    for (NodeId c : m) {
      const double x = median ? sum_to_[c][block] : max_to_[c][block];
      const double y = median ? sum_to_[best][block] : max_to_[best][block];
      if (x < y) best = c;
    }
    return best;
  }
  detail::CenterScore score_kind() const { return score_for(spec_); }

  // Best-center max and sum distance of the union of blocks a and b.
  std::pair<double, double> merged_cost(int a, int b) const {
    double rad = kInf;
    double sum = kInf;
    for (int side = 0; side < 2; ++side) {
      for (NodeId c : members_[side == 0 ? a : b]) {
        rad = std::min(rad, std::max(max_to_[c][a], max_to_[c][b]));
        sum = std::min(sum, sum_to_[c][a] + sum_to_[c][b]);
      }
    }
    return {rad, sum};
  }

  int covered_gain(int a, int b) const {
    int gain = 0;
    for (int side = 0; side < 2; ++side) {
      const int own = side == 0 ? a : b;
      const int other = side == 0 ? b : a;
      for (NodeId u : members_[own]) {
        if (covered_[u]) continue;
        const auto& adj = h_.neighbors(u);
        gain += std::any_of(adj.begin(), adj.end(),
                            [&](NodeId v) { return block_of_[v] == other; });
      }
    }
    return gain;
  }

  int good_gain(int a, int b) const {
    int gain = 0;
    for (int side = 0; side < 2; ++side) {
      for (NodeId u : members_[side == 0 ? a : b]) {
        if (partners_[u].empty() || good_[u]) continue;
        gain += std::all_of(partners_[u].begin(), partners_[u].end(), [&](NodeId p) {
          return block_of_[p] == a || block_of_[p] == b;
        });
      }
    }
    return gain;
  }

  // Expert-count ratio after merging a and b; `by_count` lists live blocks
  // by ascending expert count.
  double tf_after(int a, int b, const std::vector<int>& by_count) const {
    const int merged = experts_in_[a] + experts_in_[b];
    int lo = merged;
    int hi = merged;
    for (int x : by_count) {
      if (x == a || x == b) continue;
      lo = std::min(lo, experts_in_[x]);
      break;
    }
    for (auto it = by_count.rbegin(); it != by_count.rend(); ++it) {
      if (*it == a || *it == b) continue;
      hi = std::max(hi, experts_in_[*it]);
      break;
    }
    return lo == 0 ? kInf : static_cast<double>(hi) / lo;
  }

  void merge_best() {
    if (experts_in_.empty()) {
      experts_in_.assign(n_, 0);
      for (int u = 0; u < n_; ++u) experts_in_[block_of_[u]] += expert_[u];
    }
    const auto& objs = spec_.objectives;
    // Largest radius and total cost over untouched blocks, for the global
    // k-center and k-median values after a merge.
    std::vector<int> live;
    for (int x = 0; x < n_; ++x) {
      if (alive_[x]) live.push_back(x);
    }
    double total_cost = 0.0;
    for (int x : live) total_cost += cost_[x];
    std::vector<double> top_radius;
    for (int x : live) top_radius.push_back(radius_[x]);
    std::sort(top_radius.rbegin(), top_radius.rend());
    auto max_without = [&](int a, int b) {
      // Largest radius excluding blocks a and b (at most 3 lookups).
      int skipped_a = 0;
      int skipped_b = 0;
      for (double r : top_radius) {
        if (!skipped_a && r == radius_[a]) {
          skipped_a = 1;
          continue;
        }
        if (!skipped_b && r == radius_[b]) {
          skipped_b = 1;
          continue;
        }
        return r;
      }
      return 0.0;
    };
    int total_covered = 0;
    for (int u = 0; u < n_; ++u) total_covered += covered_[u];
    int total_good = 0;
    for (int u = 0; u < n_; ++u) total_good += good_[u];
    const int blues = static_cast<int>(h_.blue_nodes().size());
    std::vector<int> by_count = live;
    std::stable_sort(by_count.begin(), by_count.end(),
                     [&](int x, int y) { return experts_in_[x] < experts_in_[y]; });

    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        const int a = live[i];
        const int b = live[j];
        Candidate c{a, b, {}};
        const auto [rad, sum] = merged_cost(a, b);
        for (const auto& o : objs) {
          switch (o.kind) {
            case ObjectiveKind::kKCenter:
              c.values.push_back(std::max(max_without(a, b), rad));
              break;
            case ObjectiveKind::kKMedian:
              c.values.push_back(total_cost - cost_[a] - cost_[b] + sum);
              break;
            case ObjectiveKind::kResourceSharing:
              c.values.push_back(-static_cast<double>(total_covered + covered_gain(a, b)) / n_);
              break;
            case ObjectiveKind::kFairness:
              c.values.push_back(-static_cast<double>(total_good + good_gain(a, b)) /
                                 std::max(1, blues));
              break;
            case ObjectiveKind::kTeamFormation:
              c.values.push_back(tf_after(a, b, by_count));
              break;
          }
        }
        cands.push_back(std::move(c));
      }
    }

    const std::size_t r = objs.size();
    std::vector<double> lo(r, kInf);
    std::vector<double> hi(r, -kInf);
    for (const auto& c : cands) {
      for (std::size_t i = 0; i < r; ++i) {
        if (std::isinf(c.values[i])) continue;
        lo[i] = std::min(lo[i], c.values[i]);
        hi[i] = std::max(hi[i], c.values[i]);
      }
    }
    std::size_t pick = 0;
    double best = kInf;
    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
      double total = 0.0;
      for (std::size_t i = 0; i < r; ++i) {
        const double v = cands[ci].values[i];
        if (std::isinf(v)) {
          total += 1.0;
        } else if (hi[i] > lo[i]) {
          total += (v - lo[i]) / (hi[i] - lo[i]);
        }
      }
      if (total < best && !values_equal(total, best)) {
        best = total;
        pick = ci;
      }
    }
    apply(cands[pick].a, cands[pick].b);
  }

  void apply(int a, int b) {
    const auto [rad, sum] = merged_cost(a, b);
    for (NodeId u : members_[b]) block_of_[u] = a;
    members_[a].insert(members_[a].end(), members_[b].begin(), members_[b].end());
    std::sort(members_[a].begin(), members_[a].end());
    members_[b].clear();
    alive_[b] = 0;
    radius_[a] = rad;
    cost_[a] = sum;
    experts_in_[a] += experts_in_[b];
    for (int c = 0; c < n_; ++c) {
      max_to_[c][a] = std::max(max_to_[c][a], max_to_[c][b]);
      sum_to_[c][a] += sum_to_[c][b];
    }
    for (NodeId u : members_[a]) {
      const auto& adj = h_.neighbors(u);
      covered_[u] = std::any_of(adj.begin(), adj.end(),
                                [&](NodeId v) { return block_of_[v] == a; });
      good_[u] = !partners_[u].empty() &&
                 std::all_of(partners_[u].begin(), partners_[u].end(),
                             [&](NodeId p) { return block_of_[p] == a; });
    }
  }

  const GraphInstance& h_;
  const ProblemSpec& spec_;
  int n_;
  std::vector<int> block_of_;
  std::vector<std::vector<NodeId>> members_;
  std::vector<char> alive_;
  std::vector<NodeId> experts_;
  std::vector<char> expert_;
  std::vector<int> experts_in_;
  std::vector<std::pair<NodeId, NodeId>> pairs_;
  std::vector<std::vector<NodeId>> partners_;
  // max_to_[c][b] and sum_to_[c][b]: max and total distance from node c to
  // the members of block b.
  std::vector<std::vector<double>> max_to_;
  std::vector<std::vector<double>> sum_to_;
  std::vector<double> radius_;
  std::vector<double> cost_;
  std::vector<char> covered_;
  std::vector<char> good_;
};

}  // namespace

Clustering baseline_moc(const GraphInstance& h, const ProblemSpec& spec) {
  if (spec.objectives.size() != 2) throw ConfigError("MOC takes exactly two objectives");
  if (spec.k < 1 || spec.k > h.size()) {
    throw InfeasibleError("k = " + std::to_string(spec.k) + " is outside 1.." +
                          std::to_string(h.size()));
  }
  Agglomeration agg(h, spec);
  return agg.run(spec.k);
}

}  // namespace rlmoc
