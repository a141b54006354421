#include <algorithm>
#include <map>
#include <tuple>

#include "makeshift_internal.hpp"
#include "rlmoc/errors.hpp"
#include "rlmoc/makeshifts.hpp"

namespace rlmoc {

namespace {

// Edge between two atoms, realized by the lightest E edge joining them.
struct AtomEdge {
  int a;
  int b;
  double weight;
  NodeId u;
  NodeId v;
};

std::vector<NodeId> star_hubs(int n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<int> degree(n, 0);
  for (auto [u, v] : pairs) ++degree[u], ++degree[v];
  std::vector<NodeId> hubs;
  for (int u = 0; u < n; ++u) {
    if (degree[u] >= 2) hubs.push_back(u);
  }
  for (auto [u, v] : pairs) {
    if (degree[u] == 1 && degree[v] == 1) hubs.push_back(std::min(u, v));
  }
  return hubs;
}

}  // namespace

Fragments makeshift_rs(const GraphInstance& h, const Clustering& in) {
  const int n = h.size();
  const auto atoms = detail::atoms_or_singletons(in);
  const int m = static_cast<int>(atoms.size());
  std::vector<int> atom_of(n);
  for (int a = 0; a < m; ++a) {
    for (NodeId u : atoms[a]) atom_of[u] = a;
  }

  // An atom needs covering unless every member already has an E-neighbor
  // inside it.
  std::vector<char> required(m, 0);
  for (int a = 0; a < m; ++a) {
    for (NodeId u : atoms[a]) {
      const auto& adj = h.neighbors(u);
      const bool inside = std::any_of(adj.begin(), adj.end(),
                                      [&](NodeId v) { return atom_of[v] == a; });
      if (!inside) required[a] = 1;
    }
  }

  std::map<std::pair<int, int>, AtomEdge> lightest;
  for (const auto& e : h.edges()) {
    const int a = atom_of[e.u];
    const int b = atom_of[e.v];
    if (a == b) continue;
    const auto key = std::minmax(a, b);
    AtomEdge cand{key.first, key.second, e.weight, e.u, e.v};
    auto [it, inserted] = lightest.emplace(key, cand);
    if (!inserted && std::tie(cand.weight, cand.u, cand.v) <
                         std::tie(it->second.weight, it->second.u, it->second.v)) {
      it->second = cand;
    }
  }
  std::vector<AtomEdge> edge_list;
  std::vector<std::vector<int>> incident(m);
  for (const auto& [key, e] : lightest) {
    incident[e.a].push_back(static_cast<int>(edge_list.size()));
    incident[e.b].push_back(static_cast<int>(edge_list.size()));
    edge_list.push_back(e);
  }

  // Minimum-weight incident edge per required atom, ties to the lower
  // neighbor index.
  std::vector<int> picked;
  for (int a = 0; a < m; ++a) {
    if (!required[a]) continue;
    int best = -1;
    for (int id : incident[a]) {
      if (best < 0) {
        best = id;
        continue;
      }
      const auto& e = edge_list[id];
      const auto& cur = edge_list[best];
      const int other = e.a == a ? e.b : e.a;
      const int cur_other = cur.a == a ? cur.b : cur.a;
      if (std::tie(e.weight, other) < std::tie(cur.weight, cur_other)) best = id;
    }
    if (best < 0) {
      throw InfeasibleError("node '" + h.attrs(atoms[a].front()).label +
                            "' has no neighbor to share with; no edge cover exists");
    }
    picked.push_back(best);
  }
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());

  // Heaviest first; equal weights in lexicographic pair order.
  std::sort(picked.begin(), picked.end(), [&](int x, int y) {
    const auto& p = edge_list[x];
    const auto& q = edge_list[y];
    if (p.weight != q.weight) return p.weight > q.weight;
    return std::tie(p.a, p.b) < std::tie(q.a, q.b);
  });
  std::vector<int> cover(m, 0);
  for (int id : picked) ++cover[edge_list[id].a], ++cover[edge_list[id].b];
  std::vector<int> kept;
  for (int id : picked) {
    const auto& e = edge_list[id];
    const bool a_ok = !required[e.a] || cover[e.a] > 1;
    const bool b_ok = !required[e.b] || cover[e.b] > 1;
    if (a_ok && b_ok) {
      --cover[e.a];
      --cover[e.b];
    } else {
      kept.push_back(id);
    }
  }

  PairStructure ps;
  ps.kind = PairKind::kEdgeCover;
  for (int id : kept) {
    const auto& e = edge_list[id];
    ps.pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    ps.realized_radius = std::max(ps.realized_radius, e.weight);
  }
  std::sort(ps.pairs.begin(), ps.pairs.end());

  auto groups = detail::merge_groups(n, atoms, ps.pairs);
  const auto hubs = star_hubs(n, ps.pairs);
  return detail::make_fragments(h, in, std::move(groups), std::move(ps), hubs);
}

Fragments makeshift_rs(const GraphInstance& h) {
  return makeshift_rs(h, Clustering::Singletons(h.size()));
}

namespace {

Fragments gamma_cover(const GraphInstance& h, const Clustering& in, int gamma) {
  const int n = h.size();
  if (gamma < 1) throw ConfigError("gamma must be a positive integer");
  // Incident weights per node, ascending, ties to the lower neighbor.
  std::vector<std::vector<std::pair<double, NodeId>>> incident(n);
  for (int u = 0; u < n; ++u) {
    for (NodeId v : h.neighbors(u)) incident[u].emplace_back(h.d(u, v), v);
    std::sort(incident[u].begin(), incident[u].end());
    if (static_cast<int>(incident[u].size()) < gamma) {
      throw InfeasibleError("node '" + h.attrs(u).label + "' has fewer than " +
                            std::to_string(gamma) + " neighbors");
    }
  }
  std::vector<double> weights;
  for (const auto& e : h.edges()) weights.push_back(e.weight);
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());

  auto feasible = [&](double r) {
    for (int u = 0; u < n; ++u) {
      if (incident[u][gamma - 1].first > r) return false;
    }
    return true;
  };
  PairStructure ps;
  ps.kind = PairKind::kGammaCover;
  if (n > 0 && !weights.empty()) {
    std::size_t lo = 0;
    std::size_t hi = weights.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (feasible(weights[mid])) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    const double radius = weights[lo];
    for (int u = 0; u < n; ++u) {
      for (int i = 0; i < gamma; ++i) {
        const auto [w, v] = incident[u][i];
        if (w > radius) break;
        ps.pairs.emplace_back(std::min<NodeId>(u, v), std::max<NodeId>(u, v));
        ps.realized_radius = std::max(ps.realized_radius, w);
      }
    }
    std::sort(ps.pairs.begin(), ps.pairs.end());
    ps.pairs.erase(std::unique(ps.pairs.begin(), ps.pairs.end()), ps.pairs.end());
  }
  auto groups = detail::merge_groups(n, detail::atoms_or_singletons(in), ps.pairs);
  return detail::make_fragments(h, in, std::move(groups), std::move(ps), {});
}

}  // namespace

Fragments makeshift_rs_gamma(const GraphInstance& h, int gamma) {
  return gamma_cover(h, Clustering::Singletons(h.size()), gamma);
}

Fragments makeshift_rs_gamma(const GraphInstance& h, const Clustering& in, int gamma) {
  return gamma_cover(h, in, gamma);
}

}  // namespace rlmoc
