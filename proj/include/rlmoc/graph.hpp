#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace rlmoc {

using NodeId = int;

enum class Color : std::uint8_t { kNone, kBlue, kPurple };

struct NodeAttrs {
  std::string label;
  Color color = Color::kNone;
  bool expert = false;
  std::vector<double> embedding;
  std::vector<std::string> attrs;
};

enum class MetricKind : std::uint8_t { kExplicit, kEuclidean, kJaccard };

// Undirected weighted edge of the relation E; weight is d(u, v).
struct Edge {
  NodeId u;
  NodeId v;
  double weight;
};

// Immutable graph instance H = (V, E, d, attributes).
//
// Node ids are dense 0..n-1 in the order the nodes were supplied. All
// downstream tie-breaking relies on this order. Distances are cached in a
// dense matrix up to kDenseCacheLimit nodes; larger Euclidean/Jaccard
// instances compute them on demand.
class GraphInstance {
 public:
  static constexpr int kDenseCacheLimit = 4096;

  // Explicit metric from a full row-major n*n matrix.
  static GraphInstance FromMatrix(std::vector<NodeAttrs> nodes,
                                  std::vector<double> matrix,
                                  std::vector<std::pair<NodeId, NodeId>> edges);
  // Euclidean metric over node_attrs[i].embedding.
  static GraphInstance FromEmbeddings(
      std::vector<NodeAttrs> nodes,
      std::vector<std::pair<NodeId, NodeId>> edges);
  // Jaccard metric over node_attrs[i].attrs.
  static GraphInstance FromAttributeSets(
      std::vector<NodeAttrs> nodes,
      std::vector<std::pair<NodeId, NodeId>> edges);

  int size() const { return static_cast<int>(nodes_.size()); }
  MetricKind metric() const { return metric_; }

  double distance(NodeId u, NodeId v) const;
  // Unchecked variant for hot loops; ids must be valid.
  double d(NodeId u, NodeId v) const {
    if (!dense_.empty()) return dense_[static_cast<std::size_t>(u) * nodes_.size() + v];
    return compute(u, v);
  }

  // Sorted neighbor ids of u in E. Never contains u.
  const std::vector<NodeId>& neighbors(NodeId u) const;
  bool has_edge(NodeId u, NodeId v) const;
  // Every edge once, with u < v, sorted lexicographically.
  const std::vector<Edge>& edges() const { return edge_list_; }

  const NodeAttrs& attrs(NodeId u) const { return nodes_.at(u); }
  const std::vector<NodeAttrs>& nodes() const { return nodes_; }
  std::optional<NodeId> find(const std::string& label) const;

  std::vector<NodeId> blue_nodes() const;
  std::vector<NodeId> purple_nodes() const;
  std::vector<NodeId> experts() const;

  // Raw explicit matrix (empty unless metric() == kExplicit).
  const std::vector<double>& explicit_matrix() const { return explicit_; }

 private:
  GraphInstance() = default;
  void finish(std::vector<std::pair<NodeId, NodeId>> edges);
  double compute(NodeId u, NodeId v) const;

  MetricKind metric_ = MetricKind::kExplicit;
  std::vector<NodeAttrs> nodes_;
  std::vector<double> explicit_;
  std::vector<std::vector<int>> token_sets_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<Edge> edge_list_;
  std::vector<double> dense_;
};

struct MetricReport {
  bool is_metric = true;
  // (u, v, w) with d(u, w) > d(u, v) + d(v, w).
  std::vector<std::tuple<NodeId, NodeId, NodeId>> violations;
  double max_violation_ratio = 0.0;
  std::int64_t triples_checked = 0;
};

struct MetricCheckOptions {
  int exhaustive_cap = 500;
  std::int64_t sampled_triples = 1'000'000;
  std::uint64_t seed = 0;
};

MetricReport validate_metric(const GraphInstance& h,
                             const MetricCheckOptions& opts = {});

enum class InstanceFormat : std::uint8_t { kJson, kCsvEdges };

struct LoadOptions {
  InstanceFormat format = InstanceFormat::kJson;
  // Distance for unlisted pairs in CSV edge lists (mandatory there).
  std::optional<double> fill;
};

GraphInstance load_instance(const std::filesystem::path& path,
                            const LoadOptions& opts = {});
GraphInstance parse_json_instance(const std::string& text);
GraphInstance parse_csv_instance(const std::string& text, double fill);

// JSON text that load_instance reads back into an identical instance.
std::string serialize_instance(const GraphInstance& h);
void save_instance(const GraphInstance& h, const std::filesystem::path& path);

bool operator==(const GraphInstance& a, const GraphInstance& b);

}  // namespace rlmoc
