#include <algorithm>

#include "makeshift_internal.hpp"
#include "rlmoc/errors.hpp"
#include "rlmoc/flow.hpp"
#include "rlmoc/makeshifts.hpp"

namespace rlmoc {

namespace {

struct BipartiteEdge {
  int blue;    // index into blues
  int purple;  // index into purples
  double weight;
};

struct Sides {
  std::vector<NodeId> blues;
  std::vector<NodeId> purples;
  std::vector<BipartiteEdge> edges;  // ordered by (blue, purple)
};

Sides bipartite_sides(const GraphInstance& h) {
  Sides s;
  s.blues = h.blue_nodes();
  s.purples = h.purple_nodes();
  if (s.blues.empty()) throw DegenerateError("fairness needs at least one Blue node");
  std::vector<int> purple_index(h.size(), -1);
  for (int j = 0; j < static_cast<int>(s.purples.size()); ++j) purple_index[s.purples[j]] = j;
  for (int i = 0; i < static_cast<int>(s.blues.size()); ++i) {
    for (NodeId v : h.neighbors(s.blues[i])) {
      if (purple_index[v] >= 0) s.edges.push_back({i, purple_index[v], h.d(s.blues[i], v)});
    }
  }
  return s;
}

// Pairs of a b-matching using only edges of weight <= radius, or empty
// when no assignment gives every Blue node `alpha` partners.
std::vector<std::pair<NodeId, NodeId>> b_matching(const Sides& s, double radius, int alpha,
                                                  int beta) {
  const int nb = static_cast<int>(s.blues.size());
  const int np = static_cast<int>(s.purples.size());
  const int source = nb + np;
  const int sink = source + 1;
  MaxFlow flow(nb + np + 2);
  for (int i = 0; i < nb; ++i) flow.add_arc(source, i, alpha);
  std::vector<std::pair<int, int>> arcs;  // (arc id, edge index)
  for (int e = 0; e < static_cast<int>(s.edges.size()); ++e) {
    if (s.edges[e].weight <= radius) {
      arcs.emplace_back(flow.add_arc(s.edges[e].blue, nb + s.edges[e].purple, 1), e);
    }
  }
  for (int j = 0; j < np; ++j) flow.add_arc(nb + j, sink, beta);
  if (flow.solve(source, sink) != alpha * nb) return {};
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (auto [arc, e] : arcs) {
    if (flow.flow(arc) > 0) {
      pairs.emplace_back(s.blues[s.edges[e].blue], s.purples[s.edges[e].purple]);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

PairStructure min_radius_matching(const GraphInstance& h, int alpha, int beta) {
  if (alpha < 1 || beta < 1) throw ConfigError("alpha and beta must be positive integers");
  const Sides s = bipartite_sides(h);
  std::vector<double> radii;
  for (const auto& e : s.edges) radii.push_back(e.weight);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  if (radii.empty() || b_matching(s, radii.back(), alpha, beta).empty()) {
    throw InfeasibleError("no matching gives every Blue node " + std::to_string(alpha) +
                          " Purple neighbor(s)");
  }
  std::size_t lo = 0;
  std::size_t hi = radii.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (!b_matching(s, radii[mid], alpha, beta).empty()) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  PairStructure ps;
  ps.kind = alpha == 1 && beta == 1 ? PairKind::kMatching : PairKind::kBMatching;
  ps.pairs = b_matching(s, radii[lo], alpha, beta);
  for (auto [u, v] : ps.pairs) ps.realized_radius = std::max(ps.realized_radius, h.d(u, v));
  return ps;
}

Fragments fragments_from_pairs(const GraphInstance& h, const Clustering& in,
                               PairStructure ps) {
  std::vector<NodeId> hubs;
  for (auto [b, p] : ps.pairs) hubs.push_back(b);
  auto groups = detail::merge_groups(h.size(), detail::atoms_or_singletons(in), ps.pairs);
  return detail::make_fragments(h, in, std::move(groups), std::move(ps), hubs);
}

}  // namespace

Fragments makeshift_fairness(const GraphInstance& h, const Clustering& in) {
  return fragments_from_pairs(h, in, min_radius_matching(h, 1, 1));
}

Fragments makeshift_fairness(const GraphInstance& h) {
  return makeshift_fairness(h, Clustering::Singletons(h.size()));
}

Fragments makeshift_fairness_ab(const GraphInstance& h, const Clustering& in, int alpha,
                                int beta) {
  return fragments_from_pairs(h, in, min_radius_matching(h, alpha, beta));
}

Fragments makeshift_fairness_ab(const GraphInstance& h, int alpha, int beta) {
  return makeshift_fairness_ab(h, Clustering::Singletons(h.size()), alpha, beta);
}

Fragments makeshift_fairness_kmedian(const GraphInstance& h, const Clustering& in) {
  const Sides s = bipartite_sides(h);
  const int nb = static_cast<int>(s.blues.size());
  const int np = static_cast<int>(s.purples.size());
  const int source = nb + np;
  const int sink = source + 1;
  MinCostFlow flow(nb + np + 2);
  for (int i = 0; i < nb; ++i) flow.add_arc(source, i, 1, 0.0);
  std::vector<int> arcs;
  for (const auto& e : s.edges) arcs.push_back(flow.add_arc(e.blue, nb + e.purple, 1, e.weight));
  for (int j = 0; j < np; ++j) flow.add_arc(nb + j, sink, 1, 0.0);
  if (flow.solve(source, sink, nb).first != nb) {
    throw InfeasibleError("no matching saturates the Blue nodes");
  }
  PairStructure ps;
  ps.kind = PairKind::kMatching;
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    if (flow.flow(arcs[e]) > 0) {
      ps.pairs.emplace_back(s.blues[s.edges[e].blue], s.purples[s.edges[e].purple]);
      ps.realized_radius = std::max(ps.realized_radius, s.edges[e].weight);
    }
  }
  std::sort(ps.pairs.begin(), ps.pairs.end());
  return fragments_from_pairs(h, in, std::move(ps));
}

}  // namespace rlmoc
