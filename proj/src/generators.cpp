#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "rlmoc/bench.hpp"
#include "rlmoc/errors.hpp"

namespace rlmoc {

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "rs") return GeneratorKind::kResourceSharing;
  if (name == "f") return GeneratorKind::kFairness;
  if (name == "tf") return GeneratorKind::kTeamFormation;
  throw ConfigError("unknown generator kind '" + name + "' (expected rs, f or tf)");
}

GraphInstance generate_instance(const GeneratorOptions& opts) {
  const int n = opts.n;
  if (n < 2) throw ConfigError("generated instances need at least 2 nodes");
  if (opts.edge_radius < 0 || opts.edge_keep < 0 || opts.edge_keep > 1) {
    throw ConfigError("edge radius must be non-negative and keep probability in [0, 1]");
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<NodeAttrs> nodes(n);
  for (int i = 0; i < n; ++i) {
    nodes[i].label = "v" + std::to_string(i);
    nodes[i].embedding = {unit(rng), unit(rng)};
  }
  auto dist = [&](int a, int b) {
    const double dx = nodes[a].embedding[0] - nodes[b].embedding[0];
    const double dy = nodes[a].embedding[1] - nodes[b].embedding[1];
    return std::sqrt(dx * dx + dy * dy);
  };

  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<int> degree(n, 0);
  auto link = [&](int a, int b) {
    edges.emplace_back(std::min(a, b), std::max(a, b));
    ++degree[a];
    ++degree[b];
  };
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      // Draw for every pair so the stream does not depend on geometry.
      const double coin = unit(rng);
      if (dist(a, b) <= opts.edge_radius && coin < opts.edge_keep) link(a, b);
    }
  }

  auto nearest = [&](int a, auto&& allowed) {
    int best = -1;
    for (int b = 0; b < n; ++b) {
      if (b == a || !allowed(b)) continue;
      if (best < 0 || dist(a, b) < dist(a, best)) best = b;
    }
    return best;
  };

  switch (opts.kind) {
    case GeneratorKind::kResourceSharing:
      for (int a = 0; a < n; ++a) {
        if (degree[a] == 0) link(a, nearest(a, [](int) { return true; }));
      }
      break;
    case GeneratorKind::kFairness: {
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      const int blues = std::clamp(static_cast<int>(std::lround(opts.blue_fraction * n)), 1, n / 2);
      for (int i = 0; i < n; ++i) {
        nodes[order[i]].color = i < blues ? Color::kBlue : Color::kPurple;
      }
      std::vector<char> used(n, 0);
      for (int a = 0; a < n; ++a) {
        if (nodes[a].color != Color::kBlue) continue;
        const int p = nearest(a, [&](int b) { return nodes[b].color == Color::kPurple && !used[b]; });
        used[p] = 1;
        link(a, p);
      }
      break;
    }
    case GeneratorKind::kTeamFormation: {
      bool any = false;
      for (int a = 0; a < n; ++a) {
        nodes[a].expert = unit(rng) < opts.expert_fraction;
        any = any || nodes[a].expert;
      }
      if (!any) nodes[0].expert = true;
      break;
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return GraphInstance::FromEmbeddings(std::move(nodes), std::move(edges));
}

}  // namespace rlmoc
