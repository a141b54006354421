#include "rlmoc/clustering.hpp"

#include <algorithm>
#include <numeric>

#include "rlmoc/errors.hpp"

namespace rlmoc {

Clustering Clustering::Singletons(int n) {
  Clustering c;
  c.k = n;
  c.assignment.resize(n);
  std::iota(c.assignment.begin(), c.assignment.end(), 0);
  c.atoms.reserve(n);
  for (int i = 0; i < n; ++i) c.atoms.push_back({i});
  return c;
}

Clustering Clustering::FromAssignment(std::vector<int> assignment, int k) {
  Clustering c;
  c.k = k;
  c.assignment = std::move(assignment);
  for (int i = 0; i < c.size(); ++i) c.atoms.push_back({i});
  return c;
}

Clustering Clustering::FromBlocks(const std::vector<std::vector<NodeId>>& blocks, int n) {
  Clustering c;
  c.k = static_cast<int>(blocks.size());
  c.assignment.assign(n, -1);
  for (int b = 0; b < c.k; ++b) {
    for (NodeId u : blocks[b]) {
      if (u < 0 || u >= n || c.assignment[u] != -1) {
        throw ConfigError("blocks do not partition the node set");
      }
      c.assignment[u] = b;
    }
  }
  if (std::find(c.assignment.begin(), c.assignment.end(), -1) != c.assignment.end()) {
    throw ConfigError("blocks do not cover every node");
  }
  for (int i = 0; i < n; ++i) c.atoms.push_back({i});
  return c;
}

std::vector<std::vector<NodeId>> Clustering::blocks() const {
  std::vector<std::vector<NodeId>> out(k);
  for (int u = 0; u < size(); ++u) out[assignment[u]].push_back(u);
  return out;
}

std::vector<int> Clustering::block_sizes() const {
  std::vector<int> out(k, 0);
  for (int b : assignment) ++out[b];
  return out;
}

std::vector<int> Clustering::atom_index() const {
  std::vector<int> out(size(), -1);
  for (int a = 0; a < static_cast<int>(atoms.size()); ++a) {
    for (NodeId u : atoms[a]) out[u] = a;
  }
  return out;
}

bool Clustering::is_finalized(int target_k) const {
  if (k != target_k) return false;
  const auto sizes = block_sizes();
  return std::all_of(sizes.begin(), sizes.end(), [](int s) { return s > 0; });
}

void Clustering::validate() const {
  const int n = size();
  if (k < 1 && n > 0) throw ConfigError("clustering must have at least one block");
  for (int b : assignment) {
    if (b < 0 || b >= k) throw ConfigError("block index out of range");
  }
  if (!centers.empty()) {
    if (static_cast<int>(centers.size()) != k) {
      throw ConfigError("centers must list one node per block");
    }
    for (int b = 0; b < k; ++b) {
      const NodeId c = centers[b];
      if (c < 0 || c >= n || assignment[c] != b) {
        throw ConfigError("center of block " + std::to_string(b) + " lies outside it");
      }
    }
  }
  std::vector<int> seen(n, 0);
  for (const auto& atom : atoms) {
    if (atom.empty()) throw ConfigError("empty atom");
    for (NodeId u : atom) {
      if (u < 0 || u >= n || seen[u]++) throw ConfigError("atoms do not partition V");
      if (assignment[u] != assignment[atom.front()]) {
        throw ConfigError("atom split across blocks");
      }
    }
  }
  if (!atoms.empty() && std::count(seen.begin(), seen.end(), 1) != n) {
    throw ConfigError("atoms do not cover V");
  }
}

void Clustering::canonicalize() {
  std::vector<int> relabel(k, -1);
  int next = 0;
  for (int b : assignment) {
    if (relabel[b] == -1) relabel[b] = next++;
  }
  // Empty blocks keep trailing labels.
  for (int b = 0; b < k; ++b) {
    if (relabel[b] == -1) relabel[b] = next++;
  }
  for (int& b : assignment) b = relabel[b];
  if (!centers.empty()) {
    std::vector<NodeId> moved(k);
    for (int b = 0; b < k; ++b) moved[relabel[b]] = centers[b];
    centers = std::move(moved);
  }
  for (auto& atom : atoms) std::sort(atom.begin(), atom.end());
  std::sort(atoms.begin(), atoms.end());
}

bool same_partition(const Clustering& a, const Clustering& b) {
  if (a.size() != b.size()) return false;
  Clustering x = a;
  Clustering y = b;
  x.centers.clear();
  y.centers.clear();
  x.canonicalize();
  y.canonicalize();
  return x.assignment == y.assignment;
}

nlohmann::json clustering_to_json(const GraphInstance& h, const Clustering& c) {
  Clustering canon = c;
  canon.canonicalize();
  nlohmann::json j;
  j["k"] = canon.k;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& block : canon.blocks()) {
    nlohmann::json members = nlohmann::json::array();
    for (NodeId u : block) members.push_back(h.attrs(u).label);
    blocks.push_back(std::move(members));
  }
  j["blocks"] = std::move(blocks);
  if (canon.has_centers()) {
    nlohmann::json centers = nlohmann::json::array();
    for (NodeId u : canon.centers) centers.push_back(h.attrs(u).label);
    j["centers"] = std::move(centers);
  }
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& atom : canon.atoms) {
    if (atom.size() < 2) continue;
    nlohmann::json members = nlohmann::json::array();
    for (NodeId u : atom) members.push_back(h.attrs(u).label);
    atoms.push_back(std::move(members));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

Clustering clustering_from_json(const GraphInstance& h, const nlohmann::json& j) {
  auto id_of = [&](const nlohmann::json& label) {
    auto u = h.find(label.get<std::string>());
    if (!u) throw ParseError("unknown node '" + label.get<std::string>() + "'");
    return *u;
  };
  std::vector<std::vector<NodeId>> blocks;
  for (const auto& jb : j.at("blocks")) {
    auto& block = blocks.emplace_back();
    for (const auto& label : jb) block.push_back(id_of(label));
  }
  Clustering c = Clustering::FromBlocks(blocks, h.size());
  if (j.contains("centers")) {
    for (const auto& label : j["centers"]) c.centers.push_back(id_of(label));
  }
  std::vector<int> in_atom(h.size(), 0);
  std::vector<std::vector<NodeId>> atoms;
  if (j.contains("atoms")) {
    for (const auto& ja : j["atoms"]) {
      auto& atom = atoms.emplace_back();
      for (const auto& label : ja) {
        atom.push_back(id_of(label));
        in_atom[atom.back()] = 1;
      }
    }
  }
  for (int u = 0; u < h.size(); ++u) {
    if (!in_atom[u]) atoms.push_back({u});
  }
  c.atoms = std::move(atoms);
  c.canonicalize();
  c.validate();
  return c;
}

}  // namespace rlmoc
