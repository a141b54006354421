#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "rlmoc/errors.hpp"
#include "rlmoc/graph.hpp"

namespace rlmoc {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open instance file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string id_string(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError("node ids must be strings or integers");
}

double weight_value(const json& j) {
  if (!j.is_number()) throw ParseError("weights must be numbers");
  const double w = j.get<double>();
  if (!std::isfinite(w)) throw ParseError("non-finite distance");
  if (w < 0) throw ParseError("negative distance");
  return w;
}

// Sets matrix[u][v] = matrix[v][u] = w, rejecting conflicting restatements.
void put_distance(std::vector<double>& matrix, int n, int u, int v, double w) {
  if (u == v) {
    if (w != 0) throw ParseError("d(u,u) must be 0");
    return;
  }
  double& a = matrix[static_cast<std::size_t>(u) * n + v];
  double& b = matrix[static_cast<std::size_t>(v) * n + u];
  if (!std::isnan(a) && a != w) {
    throw ParseError("asymmetric or conflicting distance for pair (" +
                     std::to_string(u) + "," + std::to_string(v) + ")");
  }
  a = w;
  b = w;
}

}  // namespace

GraphInstance parse_json_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  if (!doc.contains("metric") || !doc["metric"].is_string()) {
    throw ParseError("missing metric declaration");
  }
  const std::string metric = doc["metric"].get<std::string>();
  if (metric != "explicit" && metric != "euclidean" && metric != "jaccard") {
    throw ParseError("unknown metric '" + metric + "'");
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw ParseError("missing nodes array");
  }

  std::vector<NodeAttrs> nodes;
  std::unordered_map<std::string, int> index;
  for (const auto& jn : doc["nodes"]) {
    if (!jn.is_object() || !jn.contains("id")) throw ParseError("node without id");
    NodeAttrs a;
    a.label = id_string(jn["id"]);
    if (!index.emplace(a.label, static_cast<int>(nodes.size())).second) {
      throw ParseError("duplicate node id '" + a.label + "'");
    }
    if (jn.contains("color") && !jn["color"].is_null()) {
      const auto c = jn["color"].get<std::string>();
      if (c == "B") {
        a.color = Color::kBlue;
      } else if (c == "P") {
        a.color = Color::kPurple;
      } else {
        throw ParseError("color must be \"B\", \"P\" or null");
      }
    }
    if (jn.contains("expert")) a.expert = jn["expert"].get<bool>();
    if (jn.contains("embedding")) {
      a.embedding = jn["embedding"].get<std::vector<double>>();
    } else if (metric == "euclidean") {
      throw ParseError("node '" + a.label + "' has no embedding");
    }
    if (jn.contains("attrs")) {
      a.attrs = jn["attrs"].get<std::vector<std::string>>();
    } else if (metric == "jaccard") {
      throw ParseError("node '" + a.label + "' has no attrs");
    }
    nodes.push_back(std::move(a));
  }
  const int n = static_cast<int>(nodes.size());

  auto lookup = [&](const json& j) {
    auto it = index.find(id_string(j));
    if (it == index.end()) throw ParseError("unknown node id '" + id_string(j) + "'");
    return it->second;
  };

  std::vector<double> matrix;
  if (metric == "explicit") {
    matrix.assign(static_cast<std::size_t>(n) * n,
                  std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < n; ++i) matrix[static_cast<std::size_t>(i) * n + i] = 0.0;
  } else if (doc.contains("distances")) {
    throw ParseError("distances list given for non-explicit metric");
  }

  std::optional<std::vector<std::pair<NodeId, NodeId>>> edges;
  if (doc.contains("edges")) {
    edges.emplace();
    for (const auto& je : doc["edges"]) {
      if (!je.is_array() || je.size() < 2 || je.size() > 3) {
        throw ParseError("edge entries must be [id, id] or [id, id, weight]");
      }
      const int u = lookup(je[0]);
      const int v = lookup(je[1]);
      if (u == v) throw ParseError("self-loop edges are not allowed");
      edges->emplace_back(u, v);
      if (je.size() == 3 && metric == "explicit") {
        put_distance(matrix, n, u, v, weight_value(je[2]));
      }
    }
  }
  if (doc.contains("distances")) {
    for (const auto& jd : doc["distances"]) {
      if (!jd.is_array() || jd.size() != 3) {
        throw ParseError("distance entries must be [id, id, weight]");
      }
      put_distance(matrix, n, lookup(jd[0]), lookup(jd[1]), weight_value(jd[2]));
    }
  }

  std::optional<double> fill;
  if (doc.contains("fill") && !doc["fill"].is_null()) fill = weight_value(doc["fill"]);
  for (double& x : matrix) {
    if (std::isnan(x)) {
      if (!fill) throw ParseError("pair without distance and no fill value declared");
      x = *fill;
    }
  }

  auto build = [&](std::vector<std::pair<NodeId, NodeId>> e) {
    if (metric == "explicit") {
      return GraphInstance::FromMatrix(nodes, matrix, std::move(e));
    }
    if (metric == "euclidean") return GraphInstance::FromEmbeddings(nodes, std::move(e));
    return GraphInstance::FromAttributeSets(nodes, std::move(e));
  };

  if (edges) return build(std::move(*edges));

  // No edge relation given: E is every pair within the threshold, or all
  // pairs when no threshold is declared.
  GraphInstance no_edges = build({});
  std::optional<double> threshold;
  if (doc.contains("edge_threshold")) threshold = weight_value(doc["edge_threshold"]);
  std::vector<std::pair<NodeId, NodeId>> all;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!threshold || no_edges.d(u, v) <= *threshold) all.emplace_back(u, v);
    }
  }
  return build(std::move(all));
}

GraphInstance parse_csv_instance(const std::string& text, double fill) {
  if (!std::isfinite(fill) || fill < 0) throw ParseError("fill must be a non-negative real");
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "u,v,weight") throw ParseError("CSV header must be 'u,v,weight'");

  struct Row {
    int u, v;
    std::optional<double> w;
  };
  std::vector<NodeAttrs> nodes;
  std::unordered_map<std::string, int> index;
  auto intern = [&](const std::string& label) {
    if (label.empty()) throw ParseError("empty node id in CSV");
    auto [it, inserted] = index.emplace(label, static_cast<int>(nodes.size()));
    if (inserted) {
      NodeAttrs a;
      a.label = label;
      nodes.push_back(std::move(a));
    }
    return it->second;
  };
  std::vector<Row> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() < 2 || cells.size() > 3) {
      throw ParseError("CSV line " + std::to_string(line_no) + ": expected u,v,weight");
    }
    Row r{intern(cells[0]), intern(cells[1]), std::nullopt};
    if (cells.size() == 3 && !cells[2].empty()) {
      std::size_t used = 0;
      double w = 0;
      try {
        w = std::stod(cells[2], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cells[2].size()) {
        throw ParseError("CSV line " + std::to_string(line_no) + ": bad weight");
      }
      if (!std::isfinite(w) || w < 0) {
        throw ParseError("CSV line " + std::to_string(line_no) + ": negative or non-finite weight");
      }
      r.w = w;
    }
    if (r.u == r.v) throw ParseError("CSV line " + std::to_string(line_no) + ": self-loop");
    rows.push_back(r);
  }
  const int n = static_cast<int>(nodes.size());
  std::vector<double> matrix(static_cast<std::size_t>(n) * n,
                             std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < n; ++i) matrix[static_cast<std::size_t>(i) * n + i] = 0.0;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& r : rows) {
    if (r.w) put_distance(matrix, n, r.u, r.v, *r.w);
    edges.emplace_back(r.u, r.v);
  }
  for (double& x : matrix) {
    if (std::isnan(x)) x = fill;
  }
  return GraphInstance::FromMatrix(std::move(nodes), std::move(matrix), std::move(edges));
}

GraphInstance load_instance(const std::filesystem::path& path, const LoadOptions& opts) {
  const std::string text = read_file(path);
  if (opts.format == InstanceFormat::kCsvEdges) {
    if (!opts.fill) throw ParseError("CSV edge lists require a fill distance");
    return parse_csv_instance(text, *opts.fill);
  }
  return parse_json_instance(text);
}

std::string serialize_instance(const GraphInstance& h) {
  json doc;
  switch (h.metric()) {
    case MetricKind::kExplicit: doc["metric"] = "explicit"; break;
    case MetricKind::kEuclidean: doc["metric"] = "euclidean"; break;
    case MetricKind::kJaccard: doc["metric"] = "jaccard"; break;
  }
  json nodes = json::array();
  for (const auto& a : h.nodes()) {
    json jn;
    jn["id"] = a.label;
    switch (a.color) {
      case Color::kNone: jn["color"] = nullptr; break;
      case Color::kBlue: jn["color"] = "B"; break;
      case Color::kPurple: jn["color"] = "P"; break;
    }
    jn["expert"] = a.expert;
    if (h.metric() == MetricKind::kEuclidean || !a.embedding.empty()) {
      jn["embedding"] = a.embedding;
    }
    if (h.metric() == MetricKind::kJaccard || !a.attrs.empty()) jn["attrs"] = a.attrs;
    nodes.push_back(std::move(jn));
  }
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& e : h.edges()) {
    edges.push_back({h.attrs(e.u).label, h.attrs(e.v).label});
  }
  doc["edges"] = std::move(edges);
  if (h.metric() == MetricKind::kExplicit) {
    json dist = json::array();
    for (int u = 0; u < h.size(); ++u) {
      for (int v = u + 1; v < h.size(); ++v) {
        dist.push_back({h.attrs(u).label, h.attrs(v).label, h.d(u, v)});
      }
    }
    doc["distances"] = std::move(dist);
  }
  return doc.dump(1) + "\n";
}

void save_instance(const GraphInstance& h, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << serialize_instance(h);
}

}  // namespace rlmoc
