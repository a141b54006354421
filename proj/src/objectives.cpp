#include "rlmoc/objectives.hpp"

#include <algorithm>
#include <cmath>

#include "rlmoc/errors.hpp"

namespace rlmoc {

Direction ObjectiveSpec::direction() const {
  switch (kind) {
    case ObjectiveKind::kResourceSharing:
    case ObjectiveKind::kFairness:
      return Direction::kMaximize;
    default:
      return Direction::kMinimize;
  }
}

std::string ObjectiveSpec::name() const {
  switch (kind) {
    case ObjectiveKind::kKCenter: return "kc";
    case ObjectiveKind::kKMedian: return "km";
    case ObjectiveKind::kResourceSharing: return "rs";
    case ObjectiveKind::kFairness: return "f";
    case ObjectiveKind::kTeamFormation: return "tf";
  }
  return "?";
}

ObjectiveSpec parse_objective(std::string_view name) {
  ObjectiveSpec o;
  if (name == "kc") {
    o.kind = ObjectiveKind::kKCenter;
  } else if (name == "km") {
    o.kind = ObjectiveKind::kKMedian;
  } else if (name == "rs") {
    o.kind = ObjectiveKind::kResourceSharing;
  } else if (name == "f") {
    o.kind = ObjectiveKind::kFairness;
  } else if (name == "tf") {
    o.kind = ObjectiveKind::kTeamFormation;
  } else {
    throw ConfigError("unknown objective '" + std::string(name) + "'");
  }
  return o;
}

std::vector<ObjectiveSpec> parse_objectives(std::string_view list) {
  std::vector<ObjectiveSpec> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    out.push_back(parse_objective(list.substr(start, end - start)));
    start = end + 1;
  }
  if (out.empty()) throw ConfigError("empty objective list");
  return out;
}

std::vector<NodeId> resolve_experts(const GraphInstance& h, const ObjectiveSpec& o) {
  std::vector<NodeId> x = o.experts.empty() ? h.experts() : o.experts;
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  for (NodeId u : x) {
    if (u < 0 || u >= h.size()) throw ConfigError("expert id out of range");
  }
  return x;
}

bool values_equal(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= kValueTolerance * scale;
}

bool is_better(double a, double b, Direction dir) {
  if (values_equal(a, b)) return false;
  return dir == Direction::kMaximize ? a > b : a < b;
}

ObjectiveValue eval_kcenter(const GraphInstance& h, const Clustering& c) {
  if (!c.has_centers()) throw ConfigError("k-center evaluation needs cluster centers");
  double worst = 0.0;
  for (int u = 0; u < c.size(); ++u) {
    worst = std::max(worst, h.d(u, c.centers[c.assignment[u]]));
  }
  return {worst, Direction::kMinimize};
}

ObjectiveValue eval_kmedian(const GraphInstance& h, const Clustering& c) {
  if (!c.has_centers()) throw ConfigError("k-median evaluation needs cluster centers");
  double total = 0.0;
  for (int u = 0; u < c.size(); ++u) total += h.d(u, c.centers[c.assignment[u]]);
  return {total, Direction::kMinimize};
}

ObjectiveValue eval_resource_sharing(const GraphInstance& h, const Clustering& c,
                                     int gamma) {
  const int n = c.size();
  if (n == 0) return {0.0, Direction::kMaximize};
  int covered = 0;
  for (int u = 0; u < n; ++u) {
    int together = 0;
    for (NodeId v : h.neighbors(u)) {
      if (c.assignment[v] == c.assignment[u] && ++together >= gamma) break;
    }
    if (together >= gamma) ++covered;
  }
  return {static_cast<double>(covered) / n, Direction::kMaximize};
}

ObjectiveValue eval_fairness(const GraphInstance& h, const Clustering& c,
                             const PairStructure& matched) {
  const auto blue = h.blue_nodes();
  if (blue.empty()) throw DegenerateError("fairness is undefined without Blue nodes");
  // A Blue node counts when it has at least one matched Purple partner and
  // every partner shares its block.
  std::vector<int> partners(h.size(), 0);
  std::vector<char> split(h.size(), 0);
  for (auto [a, b] : matched.pairs) {
    NodeId blue_end = h.attrs(a).color == Color::kBlue ? a : b;
    NodeId other = blue_end == a ? b : a;
    if (h.attrs(blue_end).color != Color::kBlue || h.attrs(other).color != Color::kPurple) {
      continue;
    }
    ++partners[blue_end];
    if (c.assignment[blue_end] != c.assignment[other]) split[blue_end] = 1;
  }
  int good = 0;
  for (NodeId u : blue) {
    if (partners[u] > 0 && !split[u]) ++good;
  }
  return {static_cast<double>(good) / static_cast<double>(blue.size()),
          Direction::kMaximize};
}

ObjectiveValue eval_team_formation(const GraphInstance& h, const Clustering& c,
                                   const std::vector<NodeId>& experts) {
  (void)h;
  if (experts.empty()) throw DegenerateError("team formation needs a non-empty expert set");
  std::vector<int> count(c.k, 0);
  for (NodeId u : experts) ++count[c.assignment[u]];
  const auto [lo, hi] = std::minmax_element(count.begin(), count.end());
  if (*lo == 0) return {ObjectiveValue::kInfinity, Direction::kMinimize};
  return {static_cast<double>(*hi) / static_cast<double>(*lo), Direction::kMinimize};
}

ObjectiveValue evaluate(const GraphInstance& h, const Clustering& c, const ObjectiveSpec& o,
                        const EvalContext& ctx) {
  switch (o.kind) {
    case ObjectiveKind::kKCenter:
      return eval_kcenter(h, c);
    case ObjectiveKind::kKMedian:
      return eval_kmedian(h, c);
    case ObjectiveKind::kResourceSharing:
      return eval_resource_sharing(h, c, o.gamma);
    case ObjectiveKind::kFairness:
      if (ctx.fairness_pairs == nullptr) {
        throw ConfigError("fairness evaluation needs the matched pair set");
      }
      return eval_fairness(h, c, *ctx.fairness_pairs);
    case ObjectiveKind::kTeamFormation:
      return eval_team_formation(h, c, resolve_experts(h, o));
  }
  throw ConfigError("unknown objective kind");
}

std::vector<ObjectiveValue> evaluate_all(const GraphInstance& h, const Clustering& c,
                                         const std::vector<ObjectiveSpec>& objectives,
                                         const EvalContext& ctx) {
  std::vector<ObjectiveValue> out;
  out.reserve(objectives.size());
  for (const auto& o : objectives) out.push_back(evaluate(h, c, o, ctx));
  return out;
}

LexOrder lex_compare_values(const std::vector<ObjectiveValue>& a,
                            const std::vector<ObjectiveValue>& b) {
  if (a.size() != b.size()) throw ConfigError("value tuples differ in length");
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (values_equal(a[t].value, b[t].value)) continue;
    return is_better(a[t].value, b[t].value, a[t].direction) ? LexOrder::kFirstSuperior
                                                             : LexOrder::kSecondSuperior;
  }
  return LexOrder::kEqual;
}

LexOrder lex_compare(const GraphInstance& h, const Clustering& c1, const Clustering& c2,
                     const std::vector<ObjectiveSpec>& objectives, const EvalContext& ctx) {
  return lex_compare_values(evaluate_all(h, c1, objectives, ctx),
                            evaluate_all(h, c2, objectives, ctx));
}

bool slack_violated(const ObjectiveValue& value, double delta, const OptimalEstimate& est) {
  const double bound = delta * est.value;
  if (value.direction == Direction::kMaximize) {
    if (est.kind == EstimateKind::kLowerBound) {
      throw ConfigError("maximized objectives need an exact value or upper bound");
    }
    return value.value < bound && !values_equal(value.value, bound);
  }
  if (est.kind == EstimateKind::kUpperBound) {
    throw ConfigError("minimized objectives need an exact value or lower bound");
  }
  return value.value > bound && !values_equal(value.value, bound);
}

bool slack_violated(const GraphInstance& h, const Clustering& c, const ObjectiveSpec& o,
                    double delta, const OptimalEstimate& est, const EvalContext& ctx) {
  return slack_violated(evaluate(h, c, o, ctx), delta, est);
}

void check_slack(const std::vector<ObjectiveSpec>& objectives,
                 const std::vector<double>& deltas, bool allow_infeasible) {
  if (objectives.empty()) throw ConfigError("objective list is empty");
  if (deltas.size() != objectives.size()) {
    throw ConfigError("slack vector length " + std::to_string(deltas.size()) +
                      " does not match " + std::to_string(objectives.size()) +
                      " objectives");
  }
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double delta = deltas[i];
    const auto& o = objectives[i];
    if (!std::isfinite(delta) || delta < 0) {
      throw ConfigError("slack values must be finite and non-negative");
    }
    if (allow_infeasible) continue;
    if (o.direction() == Direction::kMaximize && delta > 1) {
      throw ConfigError("slack " + std::to_string(delta) + " > 1 is infeasible for " +
                        o.name() + " (use --allow-infeasible-slack to override)");
    }
    if (o.kind == ObjectiveKind::kKCenter && delta < 2) {
      throw ConfigError("slack " + std::to_string(delta) +
                        " < 2 is infeasible for kc (use --allow-infeasible-slack to override)");
    }
    if (o.direction() == Direction::kMinimize && o.kind != ObjectiveKind::kKCenter &&
        delta < 1) {
      throw ConfigError("slack " + std::to_string(delta) + " < 1 is infeasible for " +
                        o.name() + " (use --allow-infeasible-slack to override)");
    }
  }
}

}  // namespace rlmoc
