#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

#include "makeshift_internal.hpp"
#include "rlmoc/objectives.hpp"

namespace rlmoc::detail {

std::vector<std::vector<NodeId>> merge_groups(
    int n, const std::vector<std::vector<NodeId>>& atoms,
    const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  DisjointSets sets(n);
  for (const auto& atom : atoms) {
    for (NodeId u : atom) sets.unite(atom.front(), u);
  }
  for (auto [u, v] : pairs) sets.unite(u, v);
  std::vector<int> group_of(n, -1);
  std::vector<std::vector<NodeId>> groups;
  for (int u = 0; u < n; ++u) {
    const int root = sets.find(u);
    if (group_of[root] == -1) {
      group_of[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(u);
  }
  return groups;
}

std::vector<std::vector<NodeId>> atoms_or_singletons(const Clustering& in) {
  if (!in.atoms.empty()) return in.atoms;
  std::vector<std::vector<NodeId>> out;
  for (int u = 0; u < in.size(); ++u) out.push_back({u});
  return out;
}

double center_cost(const GraphInstance& h, const std::vector<NodeId>& members, NodeId center,
                   CenterScore score) {
  double acc = 0.0;
  for (NodeId u : members) {
    const double x = h.d(u, center);
    acc = score == CenterScore::kMaxDistance ? std::max(acc, x) : acc + x;
  }
  return acc;
}

NodeId best_center(const GraphInstance& h, const std::vector<NodeId>& members,
                   CenterScore score, NodeId incumbent) {
  NodeId best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (NodeId c : members) {
    const double cost = center_cost(h, members, c, score);
    if (cost < best_cost && !values_equal(cost, best_cost)) {
      best = c;
      best_cost = cost;
    }
  }
  if (incumbent >= 0 && std::find(members.begin(), members.end(), incumbent) != members.end() &&
      values_equal(center_cost(h, members, incumbent, score), best_cost)) {
    return incumbent;
  }
  return best;
}

namespace {

double diameter(const GraphInstance& h, const std::vector<NodeId>& members) {
  double out = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      out = std::max(out, h.d(members[i], members[j]));
    }
  }
  return out;
}

}  // namespace

void repair_cohesion(const GraphInstance& h, Clustering& c, CenterScore score) {
  const int n = c.size();
  const int k = c.k;
  const std::vector<int> nearest = c.assignment;
  std::vector<char> is_center(n, 0);
  for (NodeId x : c.centers) is_center[x] = 1;

  // Anchor: the member closest to its own center; centers win ties so a
  // center stays in its block whenever possible.
  for (const auto& atom : c.atoms) {
    if (atom.size() < 2) continue;
    NodeId anchor = atom.front();
    auto key = [&](NodeId u) {
      return std::make_tuple(h.d(u, c.centers[nearest[u]]), !is_center[u], u);
    };
    for (NodeId u : atom) {
      if (key(u) < key(anchor)) anchor = u;
    }
    for (NodeId u : atom) c.assignment[u] = nearest[anchor];
  }

  std::vector<char> touched(k, 0);
  for (int u = 0; u < n; ++u) {
    if (c.assignment[u] != nearest[u]) {
      touched[c.assignment[u]] = 1;
      touched[nearest[u]] = 1;
    }
  }

  auto members = c.blocks();
  for (int b = 0; b < k; ++b) {
    if (c.assignment[c.centers[b]] != b) {
      c.centers[b] = members[b].empty() ? -1 : best_center(h, members[b], score);
    }
  }

  const auto atom_of = c.atom_index();
  for (int b = 0; b < k; ++b) {
    if (!members[b].empty()) continue;
    // Donor: the widest block that still has two or more atoms.
    int donor = -1;
    double donor_diameter = -1.0;
    for (int x = 0; x < k; ++x) {
      std::set<int> distinct;
      for (NodeId u : members[x]) distinct.insert(atom_of[u]);
      if (distinct.size() < 2) continue;
      const double dia = diameter(h, members[x]);
      if (dia > donor_diameter) {
        donor = x;
        donor_diameter = dia;
      }
    }
    if (donor < 0) break;  // fewer atoms than blocks; caller checks this upfront
    const NodeId donor_center = c.centers[donor];
    const int keep = atom_of[donor_center];
    int chosen = -1;
    double chosen_far = -1.0;
    for (NodeId u : members[donor]) {  // ascending, so ties keep the lowest atom
      const int a = atom_of[u];
      if (a == keep || a == chosen) continue;
      double far = 0.0;
      for (NodeId v : c.atoms[a]) far = std::max(far, h.d(v, donor_center));
      if (far > chosen_far) {
        chosen = a;
        chosen_far = far;
      }
    }
    for (NodeId v : c.atoms[chosen]) c.assignment[v] = b;
    members = c.blocks();
    c.centers[b] = best_center(h, members[b], score);
    touched[b] = touched[donor] = 1;
  }

  for (int b = 0; b < k; ++b) {
    if (touched[b] && !members[b].empty()) {
      c.centers[b] = best_center(h, members[b], score, c.centers[b]);
    }
  }
}

Fragments make_fragments(const GraphInstance& h, const Clustering& in,
                         std::vector<std::vector<NodeId>> groups, PairStructure pairs,
                         const std::vector<NodeId>& preferred_hubs) {
  const int n = h.size();
  std::vector<char> hub_flag(n, 0);
  for (NodeId u : preferred_hubs) hub_flag[u] = 1;
  auto hub_of = [&](const std::vector<NodeId>& group) {
    for (NodeId u : group) {
      if (hub_flag[u]) return u;
    }
    return group.front();
  };

  Fragments out;
  out.pairs = std::move(pairs);
  Clustering candidate = Clustering::FromBlocks(groups, n);
  if (in.size() == n && in.k > 0 && same_partition(candidate, in)) {
    out.clustering = in;
    out.clustering.atoms = in.blocks();
    std::erase_if(out.clustering.atoms, [](const auto& a) { return a.empty(); });
    for (const auto& block : in.blocks()) {
      out.hubs.push_back(block.empty() ? -1 : hub_of(block));
    }
    return out;
  }
  candidate.atoms = groups;
  for (const auto& g : groups) out.hubs.push_back(hub_of(g));
  out.clustering = std::move(candidate);
  return out;
}

}  // namespace rlmoc::detail
