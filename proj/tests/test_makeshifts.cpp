#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "rlmoc/errors.hpp"
#include "rlmoc/makeshifts.hpp"
#include "rlmoc/oracle.hpp"
#include "support/instances.hpp"

using namespace rlmoc;
using rlmoc::fixtures::line_instance;

namespace {

GraphInstance colored_line(const std::vector<double>& xs, const std::string& colors,
                           std::vector<std::pair<NodeId, NodeId>> edges) {
  std::vector<NodeAttrs> nodes(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    nodes[i].label = "n" + std::to_string(i);
    nodes[i].embedding = {xs[i]};
    nodes[i].color = colors[i] == 'B' ? Color::kBlue : Color::kPurple;
  }
  return GraphInstance::FromEmbeddings(std::move(nodes), std::move(edges));
}

GraphInstance expert_line(const std::vector<double>& xs, const std::vector<bool>& expert) {
  std::vector<NodeAttrs> nodes(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    nodes[i].embedding = {xs[i]};
    nodes[i].expert = expert[i];
  }
  return GraphInstance::FromEmbeddings(std::move(nodes), {});
}

std::vector<NodeId> all_nodes(int n) {
  std::vector<NodeId> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

void expect_atoms_whole(const Clustering& c, const std::vector<std::vector<NodeId>>& atoms) {
  for (const auto& a : atoms) {
    for (NodeId u : a) EXPECT_EQ(c.assignment[u], c.assignment[a.front()]);
  }
}

}  // namespace

TEST(GreedyKCenter, LineExample) {
  const auto h = line_instance({0, 4, 5});
  const auto g = greedy_kcenter(h, all_nodes(3), 2, {});
  EXPECT_EQ(g.centers, (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(g.radius, 1);
  const auto c = greedy_kcenter_clustering(h, 2, {});
  EXPECT_EQ(eval_kcenter(h, c).value, 1);
}

TEST(GreedyKCenter, SeededFirstCenterIsReproducible) {
  const auto h = generate_instance({GeneratorKind::kResourceSharing, 40, 5});
  MakeshiftOptions o;
  o.first_center = FirstCenterRule::kSeededRandom;
  o.seed = 9;
  EXPECT_EQ(greedy_kcenter(h, all_nodes(40), 4, o).centers,
            greedy_kcenter(h, all_nodes(40), 4, o).centers);
}

TEST(GreedyKCenter, TooManyCenters) {
  const auto h = line_instance({0, 1});
  EXPECT_THROW(greedy_kcenter_clustering(h, 3, {}), InfeasibleError);
}

TEST(ResourceSharing, TriangleRadius) {
  // d(0,1)=1, d(1,2)=2, d(0,2)=3.
  const auto h = line_instance({0, 1, 3}, {{0, 1}, {1, 2}, {0, 2}});
  const auto f = makeshift_rs(h);
  EXPECT_EQ(f.pairs.realized_radius, 2);
  EXPECT_EQ(f.pairs.kind, PairKind::kEdgeCover);
  EXPECT_EQ(f.clustering.k, 1);
  EXPECT_EQ(eval_resource_sharing(h, f.clustering).value, 1.0);
}

TEST(ResourceSharing, IsolatedNodeIsInfeasible) {
  const auto h = line_instance({0, 1, 5}, {{0, 1}});
  EXPECT_THROW(makeshift_rs(h), InfeasibleError);
}

TEST(ResourceSharing, PrunesRedundantEdges) {
  // Path 0-1-2-3 with unit gaps: minimum edges are (0,1), (1,2)/(0,1), (2,3).
  const auto h = line_instance({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}});
  const auto f = makeshift_rs(h);
  EXPECT_EQ(f.pairs.pairs.size(), 2u);
  EXPECT_EQ(f.clustering.k, 2);
}

TEST(ResourceSharingGamma, TwoNeighbors) {
  const auto h = line_instance({0, 1, 2, 4}, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {1, 3}});
  const auto f = makeshift_rs_gamma(h, 2);
  EXPECT_EQ(f.pairs.kind, PairKind::kGammaCover);
  std::vector<int> deg(4, 0);
  for (auto [a, b] : f.pairs.pairs) ++deg[a], ++deg[b];
  for (int d : deg) EXPECT_GE(d, 2);
  EXPECT_EQ(f.pairs.realized_radius, 3);
  EXPECT_EQ(eval_resource_sharing(h, f.clustering, 2).value, 1.0);
  EXPECT_THROW(makeshift_rs_gamma(h, 4), InfeasibleError);
}

TEST(Fairness, SingleBlue) {
  // b at 0, purples at 3 and 5.
  const auto h = colored_line({0, 3, 5}, "BPP", {{0, 1}, {0, 2}});
  const auto f = makeshift_fairness(h);
  EXPECT_EQ(f.pairs.realized_radius, 3);
  EXPECT_EQ(f.pairs.pairs, (std::vector<std::pair<NodeId, NodeId>>{{0, 1}}));
  EXPECT_EQ(f.hubs.size(), static_cast<std::size_t>(f.clustering.k));
}

TEST(Fairness, AlphaTwo) {
  const auto h = colored_line({0, 1, 2, 5}, "BPPP", {{0, 1}, {0, 2}, {0, 3}});
  const auto f = makeshift_fairness_ab(h, 2, 1);
  EXPECT_EQ(f.pairs.realized_radius, 2);
  EXPECT_EQ(f.pairs.kind, PairKind::kBMatching);
  EXPECT_EQ(f.pairs.pairs.size(), 2u);
}

TEST(Fairness, NoSaturatingMatching) {
  const auto h = colored_line({0, 1, 2}, "BBP", {{0, 2}, {1, 2}});
  EXPECT_THROW(makeshift_fairness(h), InfeasibleError);
  EXPECT_NO_THROW(makeshift_fairness_ab(h, 1, 2));
}

TEST(Fairness, NoBlue) {
  const auto h = colored_line({0, 1}, "PP", {{0, 1}});
  EXPECT_THROW(makeshift_fairness(h), DegenerateError);
}

TEST(Fairness, KMedianFlavourMinimizesTotal) {
  // Bottleneck-optimal is not sum-optimal here: b0-p2 (3) + b1-p3 (3)
  // versus b0-p3 (1) + b1-p2 (4).
  std::vector<NodeAttrs> nodes(4);
  nodes[0].color = nodes[1].color = Color::kBlue;
  nodes[2].color = nodes[3].color = Color::kPurple;
  std::vector<double> m(16, 10);
  for (int i = 0; i < 4; ++i) m[i * 4 + i] = 0;
  auto set = [&](int a, int b, double w) { m[a * 4 + b] = m[b * 4 + a] = w; };
  set(0, 2, 3);
  set(1, 3, 3);
  set(0, 3, 1);
  set(1, 2, 4);
  const auto h = GraphInstance::FromMatrix(nodes, m, {{0, 2}, {1, 3}, {0, 3}, {1, 2}});
  EXPECT_EQ(makeshift_fairness(h).pairs.realized_radius, 3);
  const auto f = makeshift_fairness_kmedian(h, Clustering::Singletons(4));
  EXPECT_EQ(f.pairs.pairs, (std::vector<std::pair<NodeId, NodeId>>{{0, 3}, {1, 2}}));
}

TEST(BalancedKCenter, TwoPairs) {
  const auto h = expert_line({0, 1, 10, 11}, {true, true, true, true});
  const auto b = balanced_kcenter(h, {0, 1, 2, 3}, 2, {});
  EXPECT_EQ(b.block[0], b.block[1]);
  EXPECT_EQ(b.block[2], b.block[3]);
  EXPECT_NE(b.block[0], b.block[2]);
  const auto c = makeshift_tf(h, {0, 1, 2, 3}, 2, {});
  auto blocks = c.blocks();
  std::sort(blocks.begin(), blocks.end());
  EXPECT_EQ(blocks, (std::vector<std::vector<NodeId>>{{0, 1}, {2, 3}}));
}

TEST(BalancedKCenter, Errors) {
  const auto h = expert_line({0, 1, 2}, {true, false, false});
  EXPECT_THROW(makeshift_tf(h, {0}, 2, {}), InfeasibleError);
  EXPECT_THROW(makeshift_tf(h, {}, 1, {}), DegenerateError);
  MakeshiftOptions o;
  o.balance_radius_multiplier = 0.5;
  EXPECT_THROW(makeshift_tf(h, {0}, 1, o), ConfigError);
}

TEST(BalancedKCenter, NonExpertRules) {
  // Experts at 0 and 10; non-expert at 6 is nearer expert 10, and both are
  // centers, so either rule sends it to 10's block.
  const auto h = expert_line({0, 10, 6}, {true, true, false});
  for (auto rule : {NonExpertRule::kClosestCenter, NonExpertRule::kClosestExpert}) {
    MakeshiftOptions o;
    o.nonexpert = rule;
    const auto c = makeshift_tf(h, {0, 1}, 2, o);
    EXPECT_EQ(c.assignment[2], c.assignment[1]);
  }
}

TEST(KMedian, LineExample) {
  const auto h = line_instance({0, 1, 10});
  const auto c = makeshift_kmedian(h, Clustering::Singletons(3), 2, {});
  EXPECT_EQ(eval_kmedian(h, c).value, 1);
}

TEST(KMedian, RespectsAtoms) {
  const auto h = line_instance({0, 1, 10, 11});
  auto in = Clustering::FromBlocks({{0, 2}, {1}, {3}}, 4);
  in.atoms = {{0, 2}, {1}, {3}};
  const auto c = makeshift_kmedian(h, in, 2, {});
  expect_atoms_whole(c, in.atoms);
  EXPECT_EQ(c.k, 2);
  EXPECT_THROW(makeshift_kmedian(h, in, 4, {}), InfeasibleError);
}

TEST(KCenterMakeshift, RespectsAtoms) {
  const auto h = line_instance({0, 1, 10, 11, 20});
  auto in = Clustering::FromBlocks({{0, 3}, {1}, {2}, {4}}, 5);
  in.atoms = {{0, 3}, {1}, {2}, {4}};
  const auto c = makeshift_kcenter(h, in, 3, {});
  c.validate();
  expect_atoms_whole(c, in.atoms);
  EXPECT_TRUE(c.is_finalized(3));
}

// ---- properties on random instances ------------------------------------------

class MakeshiftProperties : public ::testing::TestWithParam<int> {};

TEST_P(MakeshiftProperties, EdgeCoverIsOptimalStarForest) {
  std::mt19937_64 rng(GetParam());
  const int n = 2 + GetParam() % 9;
  const auto h = fixtures::random_rs_instance(n, rng);
  const auto f = makeshift_rs(h);
  std::vector<int> deg(n, 0);
  for (auto [a, b] : f.pairs.pairs) {
    EXPECT_TRUE(h.has_edge(a, b));
    EXPECT_LE(h.d(a, b), f.pairs.realized_radius);
    ++deg[a], ++deg[b];
  }
  for (int d : deg) EXPECT_GE(d, 1);
  for (auto [a, b] : f.pairs.pairs) EXPECT_FALSE(deg[a] >= 2 && deg[b] >= 2);
  EXPECT_EQ(f.pairs.realized_radius, oracle_edge_cover(h).realized_radius);
  EXPECT_EQ(eval_resource_sharing(h, f.clustering).value, 1.0);
  f.clustering.validate();
}

TEST_P(MakeshiftProperties, MatchingIsMinimumRadius) {
  std::mt19937_64 rng(100 + GetParam());
  const int purples = 1 + GetParam() % 6;
  const int blues = 1 + GetParam() % purples;
  const auto h = fixtures::random_f_instance(blues, purples, rng);
  const auto f = makeshift_fairness(h);
  std::map<NodeId, int> used;
  for (auto [a, b] : f.pairs.pairs) {
    EXPECT_TRUE(h.has_edge(a, b));
    ++used[a], ++used[b];
  }
  for (auto [u, c] : used) EXPECT_EQ(c, 1);
  EXPECT_EQ(f.pairs.pairs.size(), static_cast<std::size_t>(blues));
  EXPECT_EQ(f.pairs.realized_radius, oracle_matching_radius(h));
  EXPECT_EQ(eval_fairness(h, f.clustering, f.pairs).value, 1.0);
}

TEST_P(MakeshiftProperties, GreedyIsTwoApproximate) {
  std::mt19937_64 rng(200 + GetParam());
  const int n = 2 + GetParam() % 7;
  const int k = 1 + GetParam() % std::min(n, 3);
  const auto h = fixtures::random_rs_instance(n, rng);
  ObjectiveSpec kc;
  const double opt = oracle_single_objective(h, k, kc);
  EXPECT_LE(eval_kcenter(h, greedy_kcenter_clustering(h, k, {})).value, 2 * opt);
}

TEST_P(MakeshiftProperties, TeamFormationIsBalanced) {
  std::mt19937_64 rng(300 + GetParam());
  const int n = 3 + GetParam() % 20;
  const int k = 1 + GetParam() % 4;
  const auto h = fixtures::random_tf_instance(n, std::min(n, k), rng);
  if (static_cast<int>(h.experts().size()) < k) GTEST_SKIP();
  for (auto rule : {NonExpertRule::kClosestCenter, NonExpertRule::kClosestExpert}) {
    MakeshiftOptions o;
    o.nonexpert = rule;
    const auto c = makeshift_tf(h, h.experts(), k, o);
    c.validate();
    EXPECT_TRUE(c.is_finalized(k));
    std::vector<int> cnt(k, 0);
    for (NodeId x : h.experts()) ++cnt[c.assignment[x]];
    EXPECT_LE(*std::max_element(cnt.begin(), cnt.end()) - *std::min_element(cnt.begin(), cnt.end()),
              1);
    const auto cm = makeshift_tf_kmedian(h, h.experts(), k, o);
    std::fill(cnt.begin(), cnt.end(), 0);
    for (NodeId x : h.experts()) ++cnt[cm.assignment[x]];
    EXPECT_LE(*std::max_element(cnt.begin(), cnt.end()) - *std::min_element(cnt.begin(), cnt.end()),
              1);
  }
}

TEST_P(MakeshiftProperties, KMedianWithinSwapFactor) {
  std::mt19937_64 rng(400 + GetParam());
  const int n = 2 + GetParam() % 7;
  const int k = 1 + GetParam() % std::min(n, 3);
  const auto h = fixtures::random_rs_instance(n, rng);
  ObjectiveSpec km;
  km.kind = ObjectiveKind::kKMedian;
  const double opt = oracle_single_objective(h, k, km);
  const auto c = makeshift_kmedian(h, Clustering::Singletons(n), k, {});
  EXPECT_LE(eval_kmedian(h, c).value, kSwapKMedianFactor * opt + 1e-9);
}

TEST_P(MakeshiftProperties, KCenterAfterFragmentsKeepsAtoms) {
  const auto h = generate_instance(
      {GeneratorKind::kResourceSharing, 30 + GetParam(), static_cast<std::uint64_t>(GetParam())});
  const auto f = makeshift_rs(h);
  const int k = std::min(1 + GetParam() % 6, f.clustering.k);
  const auto c = makeshift_kcenter(h, f.clustering, k, {});
  c.validate();
  EXPECT_TRUE(c.is_finalized(k));
  expect_atoms_whole(c, f.clustering.atoms);
  EXPECT_EQ(eval_resource_sharing(h, c).value, 1.0);
}

INSTANTIATE_TEST_SUITE_P(Random, MakeshiftProperties, ::testing::Range(0, 40));
