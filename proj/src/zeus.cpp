#include "rlmoc/zeus.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "makeshift_internal.hpp"
#include "rlmoc/errors.hpp"
#include "rlmoc/estimate.hpp"

namespace rlmoc {

namespace {

template <typename Fn>
auto with_stage(std::size_t stage, const ObjectiveSpec& o, Fn&& fn) {
  const std::string where = "stage " + std::to_string(stage + 1) + " (" + o.name() + "): ";
  try {
    return fn();
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(where + e.what());
  } catch (const DegenerateError& e) {
    throw DegenerateError(where + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(where + e.what());
  }
}

std::vector<std::vector<NodeId>> nonempty_blocks(const Clustering& c) {
  auto blocks = c.blocks();
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return blocks;
}

int count_nonempty(const Clustering& c) { return static_cast<int>(nonempty_blocks(c).size()); }

// Gives every block a center after a fragment stage merged blocks that
// already had them.
void recenter(const GraphInstance& h, Clustering& c, detail::CenterScore score) {
  const auto blocks = c.blocks();
  std::vector<NodeId> old = c.centers;
  c.centers.assign(c.k, -1);
  for (int b = 0; b < c.k; ++b) {
    if (blocks[b].empty()) continue;
    NodeId incumbent = -1;
    for (NodeId x : old) {
      if (x >= 0 && x < c.size() && c.assignment[x] == b) {
        incumbent = x;
        break;
      }
    }
    c.centers[b] = detail::best_center(h, blocks[b], score, incumbent);
  }
}

bool has_multi_atoms(const Clustering& c) {
  return std::any_of(c.atoms.begin(), c.atoms.end(), [](const auto& a) { return a.size() > 1; });
}

void append_warning(StageTrace& t, const std::string& w) {
  t.warning = t.warning.empty() ? w : t.warning + "; " + w;
}

}  // namespace

void ProblemSpec::validate() const {
  if (k < 1) throw ConfigError("k must be a positive integer");
  if (local_search_cap < 0) throw ConfigError("local search cap must be non-negative");
  check_slack(objectives, slacks, allow_infeasible_slack);
}

EvalContext PipelineState::context(std::size_t i) const {
  EvalContext ctx;
  if (i < processed.size() && processed[i].pairs) ctx.fairness_pairs = &*processed[i].pairs;
  return ctx;
}

std::vector<ObjectiveValue> PipelineState::current_values(const GraphInstance& h) const {
  std::vector<ObjectiveValue> out;
  for (std::size_t i = 0; i < processed.size(); ++i) {
    out.push_back(evaluate(h, clustering, processed[i].spec, context(i)));
  }
  return out;
}

ZeusResult zeus_run(const GraphInstance& h, const ProblemSpec& spec) {
  spec.validate();
  const int n = h.size();
  const int k = spec.k;
  const auto& objectives = spec.objectives;
  if (n == 0) throw DegenerateError("instance has no nodes");

  const bool has_kc = std::any_of(objectives.begin(), objectives.end(), [](const auto& o) {
    return o.kind == ObjectiveKind::kKCenter;
  });
  const bool has_km = std::any_of(objectives.begin(), objectives.end(), [](const auto& o) {
    return o.kind == ObjectiveKind::kKMedian;
  });
  // Without k-center in O, fairness and team formation use their
  // k-median forms.
  const bool median_flavour = has_km && !has_kc;
  int last_consolidating = -1;
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    const auto kind = objectives[i].kind;
    if (objectives[i].is_classical() || kind == ObjectiveKind::kTeamFormation) {
      last_consolidating = static_cast<int>(i);
    }
  }
  const int cap = spec.local_search_cap > 0 ? spec.local_search_cap : 50 * n;

  PipelineState st;
  st.clustering = Clustering::Singletons(n);
  std::optional<detail::CenterScore> center_score;

  for (std::size_t i = 0; i < objectives.size(); ++i) {
    const auto& o = objectives[i];
    const auto t0 = std::chrono::steady_clock::now();
    StageTrace tr;
    tr.objective = o.name();
    tr.slack = spec.slacks[i];

    Clustering in = st.clustering;
    if (i > 0) in.atoms = nonempty_blocks(in);

    ProcessedObjective p;
    p.spec = o;
    p.delta = spec.slacks[i];
    Clustering c = with_stage(i, o, [&]() -> Clustering {
      switch (o.kind) {
        case ObjectiveKind::kResourceSharing: {
          Fragments f = o.gamma == 1 ? makeshift_rs(h, in) : makeshift_rs_gamma(h, in, o.gamma);
          p.pairs = std::move(f.pairs);
          return std::move(f.clustering);
        }
        case ObjectiveKind::kFairness: {
          Fragments f;
          if (o.alpha != 1 || o.beta != 1) {
            f = makeshift_fairness_ab(h, in, o.alpha, o.beta);
          } else if (median_flavour) {
            f = makeshift_fairness_kmedian(h, in);
          } else {
            f = makeshift_fairness(h, in);
          }
          p.pairs = std::move(f.pairs);
          return std::move(f.clustering);
        }
        case ObjectiveKind::kKCenter:
          return makeshift_kcenter(h, in, k, spec.options);
        case ObjectiveKind::kKMedian:
          return makeshift_kmedian(h, in, k, spec.options);
        case ObjectiveKind::kTeamFormation: {
          const auto experts = resolve_experts(h, o);
          Clustering out = median_flavour ? makeshift_tf_kmedian(h, experts, k, spec.options)
                                          : makeshift_tf(h, experts, k, spec.options);
          if (has_multi_atoms(in)) {
            if (k > static_cast<int>(in.atoms.size())) {
              throw InfeasibleError("k = " + std::to_string(k) + " exceeds the " +
                                    std::to_string(in.atoms.size()) + " co-clustered groups");
            }
            out.atoms = in.atoms;
            detail::repair_cohesion(h, out,
                                    median_flavour ? detail::CenterScore::kSumDistance
                                                   : detail::CenterScore::kMaxDistance);
          }
          return out;
        }
      }
      throw ConfigError("unknown objective kind");
    });

    if (o.is_classical() && !center_score) {
      center_score = o.kind == ObjectiveKind::kKCenter ? detail::CenterScore::kMaxDistance
                                                       : detail::CenterScore::kSumDistance;
    }
    if (o.kind == ObjectiveKind::kTeamFormation && !center_score) {
      center_score = median_flavour ? detail::CenterScore::kSumDistance
                                    : detail::CenterScore::kMaxDistance;
    }
    if (center_score && static_cast<int>(c.centers.size()) != c.k) {
      recenter(h, c, *center_score);
    }
    st.clustering = std::move(c);

    st.processed.push_back(p);
    auto& cur = st.processed.back();
    cur.value = with_stage(i, o, [&] { return evaluate(h, st.clustering, o, st.context(i)); });
    cur.estimate = with_stage(
        i, o, [&] { return estimate_optimal(h, o, k, spec.options, cur.value.value); });
    tr.makeshift_value = cur.value;
    tr.estimate = cur.estimate;
    tr.violated = slack_violated(cur.value, cur.delta, cur.estimate);

    if (tr.violated) {
      auto ls = with_stage(i, o, [&] { return local_search(h, st, i, cap); });
      st.clustering = std::move(ls.clustering);
      tr.local_search_moves = ls.moves;
      tr.local_search_values = std::move(ls.values);
      if (ls.cap_reached) append_warning(tr, "local search stopped at the move cap");
    }
    const auto values = st.current_values(h);
    for (std::size_t j = 0; j < values.size(); ++j) st.processed[j].value = values[j];
    tr.value = cur.value;
    tr.violated_after = slack_violated(cur.value, cur.delta, cur.estimate);
    if (tr.violated_after) append_warning(tr, "slack still violated after local search");

    if (o.kind == ObjectiveKind::kTeamFormation) {
      const auto experts = resolve_experts(h, o);
      std::vector<int> count(st.clustering.k, 0);
      for (NodeId x : experts) ++count[st.clustering.assignment[x]];
      const auto [lo, hi] = std::minmax_element(count.begin(), count.end());
      if (*hi - *lo > 1) append_warning(tr, "keeping earlier groups together unbalanced the experts");
    }
    if (static_cast<int>(i) > last_consolidating && last_consolidating >= 0 &&
        count_nonempty(st.clustering) != k) {
      append_warning(tr, "clustering has " + std::to_string(count_nonempty(st.clustering)) +
                             " blocks instead of k = " + std::to_string(k));
    }
    if (last_consolidating < 0 && i + 1 == objectives.size()) {
      append_warning(tr, "no objective consolidates the fragments into k blocks; returning " +
                             std::to_string(count_nonempty(st.clustering)) + " fragments");
    }
    tr.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    st.trace.push_back(std::move(tr));
  }

  ZeusResult out;
  out.clustering = st.clustering;
  out.state = std::move(st);
  return out;
}

nlohmann::json value_to_json(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

nlohmann::json trace_to_json(const PipelineState& state) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& t : state.trace) {
    nlohmann::json j;
    j["objective"] = t.objective;
    j["makeshift_value"] = value_to_json(t.makeshift_value.value);
    j["value"] = value_to_json(t.value.value);
    j["estimate"] = value_to_json(t.estimate.value);
    j["estimate_kind"] = t.estimate.kind == EstimateKind::kExact        ? "exact"
                         : t.estimate.kind == EstimateKind::kLowerBound ? "lower_bound"
                                                                        : "upper_bound";
    j["slack"] = t.slack;
    j["violated"] = t.violated;
    j["violated_after_local_search"] = t.violated_after;
    j["local_search_moves"] = t.local_search_moves;
    nlohmann::json vals = nlohmann::json::array();
    for (double v : t.local_search_values) vals.push_back(value_to_json(v));
    j["local_search_values"] = vals;
    j["elapsed_ms"] = t.elapsed_ms;
    j["warning"] = t.warning.empty() ? nlohmann::json(nullptr) : nlohmann::json(t.warning);
    stages.push_back(j);
  }
  return stages;
}

}  // namespace rlmoc
