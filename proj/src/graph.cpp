#include "rlmoc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_map>

#include "rlmoc/errors.hpp"

namespace rlmoc {

namespace {

void check_node(int n, NodeId u) {
  if (u < 0 || u >= n) {
    throw ConfigError("node id " + std::to_string(u) + " out of range [0, " +
                      std::to_string(n) + ")");
  }
}

}  // namespace

GraphInstance GraphInstance::FromMatrix(
    std::vector<NodeAttrs> nodes, std::vector<double> matrix,
    std::vector<std::pair<NodeId, NodeId>> edges) {
  const std::size_t n = nodes.size();
  if (matrix.size() != n * n) {
    throw ParseError("explicit distance matrix must be n x n");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = matrix[i * n + j];
      if (!std::isfinite(x)) throw ParseError("non-finite distance");
      if (x < 0) throw ParseError("negative distance");
      if (i == j && x != 0) throw ParseError("d(u,u) must be 0");
      if (matrix[j * n + i] != x) throw ParseError("asymmetric distance matrix");
    }
  }
  GraphInstance h;
  h.metric_ = MetricKind::kExplicit;
  h.nodes_ = std::move(nodes);
  h.explicit_ = std::move(matrix);
  h.finish(std::move(edges));
  return h;
}

GraphInstance GraphInstance::FromEmbeddings(
    std::vector<NodeAttrs> nodes, std::vector<std::pair<NodeId, NodeId>> edges) {
  if (!nodes.empty()) {
    const std::size_t dim = nodes.front().embedding.size();
    for (const auto& a : nodes) {
      if (a.embedding.size() != dim) {
        throw ParseError("embeddings must share one dimension");
      }
      for (double x : a.embedding) {
        if (!std::isfinite(x)) throw ParseError("non-finite embedding coordinate");
      }
    }
  }
  GraphInstance h;
  h.metric_ = MetricKind::kEuclidean;
  h.nodes_ = std::move(nodes);
  h.finish(std::move(edges));
  return h;
}

GraphInstance GraphInstance::FromAttributeSets(
    std::vector<NodeAttrs> nodes, std::vector<std::pair<NodeId, NodeId>> edges) {
  GraphInstance h;
  h.metric_ = MetricKind::kJaccard;
  std::unordered_map<std::string, int> token_ids;
  h.token_sets_.reserve(nodes.size());
  for (const auto& a : nodes) {
    std::vector<int> ids;
    ids.reserve(a.attrs.size());
    for (const auto& t : a.attrs) {
      auto [it, inserted] =
          token_ids.emplace(t, static_cast<int>(token_ids.size()));
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    h.token_sets_.push_back(std::move(ids));
  }
  h.nodes_ = std::move(nodes);
  h.finish(std::move(edges));
  return h;
}

void GraphInstance::finish(std::vector<std::pair<NodeId, NodeId>> edges) {
  const int n = size();
  {
    std::unordered_map<std::string, int> seen;
    for (int i = 0; i < n; ++i) {
      // Programmatic instances may leave labels empty; they get their index.
      if (nodes_[i].label.empty()) nodes_[i].label = std::to_string(i);
      if (!seen.emplace(nodes_[i].label, i).second) {
        throw ParseError("duplicate node id '" + nodes_[i].label + "'");
      }
    }
  }
  adjacency_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError("edge endpoint out of range");
    if (u == v) throw ParseError("self-loop edges are not allowed");
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  if (n <= kDenseCacheLimit) {
    dense_.resize(static_cast<std::size_t>(n) * n);
    for (int u = 0; u < n; ++u) {
      for (int v = u; v < n; ++v) {
        const double x = u == v ? 0.0 : compute(u, v);
        dense_[static_cast<std::size_t>(u) * n + v] = x;
        dense_[static_cast<std::size_t>(v) * n + u] = x;
      }
    }
  }
  edge_list_.clear();
  for (int u = 0; u < n; ++u) {
    for (int v : adjacency_[u]) {
      if (u < v) edge_list_.push_back({u, v, d(u, v)});
    }
  }
}

double GraphInstance::compute(NodeId u, NodeId v) const {
  switch (metric_) {
    case MetricKind::kExplicit:
      return explicit_[static_cast<std::size_t>(u) * nodes_.size() + v];
    case MetricKind::kEuclidean: {
      const auto& a = nodes_[u].embedding;
      const auto& b = nodes_[v].embedding;
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        s += t * t;
      }
      return std::sqrt(s);
    }
    case MetricKind::kJaccard: {
      const auto& a = token_sets_[u];
      const auto& b = token_sets_[v];
      if (a.empty() && b.empty()) return 0.0;
      std::size_t common = 0;
      for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
        if (a[i] == b[j]) {
          ++common, ++i, ++j;
        } else if (a[i] < b[j]) {
          ++i;
        } else {
          ++j;
        }
      }
      const std::size_t uni = a.size() + b.size() - common;
      return 1.0 - static_cast<double>(common) / static_cast<double>(uni);
    }
  }
  return 0.0;
}

double GraphInstance::distance(NodeId u, NodeId v) const {
  check_node(size(), u);
  check_node(size(), v);
  if (u == v) return 0.0;
  return d(u, v);
}

const std::vector<NodeId>& GraphInstance::neighbors(NodeId u) const {
  check_node(size(), u);
  return adjacency_[u];
}

bool GraphInstance::has_edge(NodeId u, NodeId v) const {
  const auto& adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::optional<NodeId> GraphInstance::find(const std::string& label) const {
  for (int i = 0; i < size(); ++i) {
    if (nodes_[i].label == label) return i;
  }
  return std::nullopt;
}

std::vector<NodeId> GraphInstance::blue_nodes() const {
  std::vector<NodeId> out;
  for (int i = 0; i < size(); ++i) {
    if (nodes_[i].color == Color::kBlue) out.push_back(i);
  }
  return out;
}

std::vector<NodeId> GraphInstance::purple_nodes() const {
  std::vector<NodeId> out;
  for (int i = 0; i < size(); ++i) {
    if (nodes_[i].color == Color::kPurple) out.push_back(i);
  }
  return out;
}

std::vector<NodeId> GraphInstance::experts() const {
  std::vector<NodeId> out;
  for (int i = 0; i < size(); ++i) {
    if (nodes_[i].expert) out.push_back(i);
  }
  return out;
}

MetricReport validate_metric(const GraphInstance& h,
                             const MetricCheckOptions& opts) {
  MetricReport report;
  const int n = h.size();
  auto check = [&](int u, int v, int w) {
    ++report.triples_checked;
    const double direct = h.d(u, w);
    const double detour = h.d(u, v) + h.d(v, w);
    // Relative slack absorbs rounding in sqrt/division based metrics.
    if (direct > detour + 1e-12 * std::max(1.0, detour)) {
      report.violations.emplace_back(u, v, w);
      const double ratio = detour > 0 ? direct / detour
                                      : std::numeric_limits<double>::infinity();
      report.max_violation_ratio = std::max(report.max_violation_ratio, ratio);
    }
  };
  if (n <= opts.exhaustive_cap) {
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) check(u, v, w);
      }
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    for (std::int64_t i = 0; i < opts.sampled_triples; ++i) {
      const int u = static_cast<int>(rng() % n);
      const int v = static_cast<int>(rng() % n);
      const int w = static_cast<int>(rng() % n);
      check(u, v, w);
    }
  }
  report.is_metric = report.violations.empty();
  return report;
}

bool operator==(const GraphInstance& a, const GraphInstance& b) {
  if (a.size() != b.size() || a.metric() != b.metric()) return false;
  for (int i = 0; i < a.size(); ++i) {
    const auto& x = a.attrs(i);
    const auto& y = b.attrs(i);
    if (x.label != y.label || x.color != y.color || x.expert != y.expert ||
        x.embedding != y.embedding || x.attrs != y.attrs) {
      return false;
    }
    if (a.neighbors(i) != b.neighbors(i)) return false;
    for (int j = 0; j < a.size(); ++j) {
      if (a.d(i, j) != b.d(i, j)) return false;
    }
  }
  return true;
}

}  // namespace rlmoc
