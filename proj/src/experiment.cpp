#include <algorithm>
#include <chrono>
#include <limits>
#include <fstream>
#include <sstream>

#include "rlmoc/bench.hpp"
#include "rlmoc/errors.hpp"
#include "rlmoc/oracle.hpp"

namespace rlmoc {

namespace {

const std::vector<std::string> kAlgorithms = {"zeus", "b1", "b2", "moc", "oracle"};

std::vector<int> parse_ks(const nlohmann::json& j) {
  std::vector<int> ks;
  if (j.is_number_integer()) {
    ks.push_back(j.get<int>());
  } else if (j.is_array()) {
    for (const auto& x : j) ks.push_back(x.get<int>());
  } else if (j.is_object()) {
    const int from = j.at("from").get<int>();
    const int to = j.at("to").get<int>();
    const int step = j.value("step", 1);
    if (step < 1) throw ConfigError("k step must be positive");
    for (int k = from; k <= to; k += step) ks.push_back(k);
  } else {
    throw ConfigError("k must be an integer, a list, or {from, to, step}");
  }
  return ks;
}

std::vector<double> parse_slack(const nlohmann::json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(x.get<double>());
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (instance.has_value() == generator.has_value()) {
    throw ConfigError("experiment needs exactly one of 'instance' or 'generator'");
  }
  if (objectives.empty()) throw ConfigError("experiment needs objectives");
  if (slacks.empty()) throw ConfigError("experiment needs at least one slack vector");
  for (const auto& s : slacks) check_slack(objectives, s, allow_infeasible_slack);
  if (ks.empty()) throw ConfigError("k range is empty");
  for (int k : ks) {
    if (k < 1) throw ConfigError("k values must be positive");
  }
  if (seeds.empty()) throw ConfigError("experiment needs at least one seed");
  if (algorithms.empty()) throw ConfigError("experiment needs at least one algorithm");
  for (const auto& a : algorithms) {
    if (std::find(kAlgorithms.begin(), kAlgorithms.end(), a) == kAlgorithms.end()) {
      throw ConfigError("unknown algorithm '" + a + "'");
    }
  }
  for (const auto& f : formats) {
    if (f != "csv" && f != "json" && f != "svg") throw ConfigError("unknown format '" + f + "'");
  }
}

ExperimentConfig parse_experiment_config(const nlohmann::json& j,
                                         const std::filesystem::path& base) {
  ExperimentConfig cfg;
  try {
    if (j.contains("instance")) {
      std::filesystem::path p = j.at("instance").get<std::string>();
      cfg.instance = p.is_relative() && !base.empty() ? base / p : p;
    }
    if (j.contains("fill")) cfg.fill = j.at("fill").get<double>();
    if (j.contains("generator")) {
      const auto& g = j.at("generator");
      GeneratorOptions opts;
      opts.kind = parse_generator_kind(g.at("kind").get<std::string>());
      opts.n = g.at("n").get<int>();
      opts.edge_radius = g.value("edge_radius", opts.edge_radius);
      opts.edge_keep = g.value("edge_keep", opts.edge_keep);
      opts.blue_fraction = g.value("blue_fraction", opts.blue_fraction);
      opts.expert_fraction = g.value("expert_fraction", opts.expert_fraction);
      cfg.generator = opts;
    }
    const auto& objs = j.at("objectives");
    if (objs.is_string()) {
      cfg.objectives = parse_objectives(objs.get<std::string>());
    } else {
      for (const auto& o : objs) cfg.objectives.push_back(parse_objective(o.get<std::string>()));
    }
    for (auto& o : cfg.objectives) {
      o.gamma = j.value("gamma", o.gamma);
      o.alpha = j.value("alpha", o.alpha);
      o.beta = j.value("beta", o.beta);
    }
    if (j.contains("slacks")) {
      for (const auto& s : j.at("slacks")) cfg.slacks.push_back(parse_slack(s));
    } else if (j.contains("slack")) {
      cfg.slacks.push_back(parse_slack(j.at("slack")));
    }
    cfg.ks = parse_ks(j.at("k"));
    if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    if (j.contains("output_dir")) {
      std::filesystem::path p = j.at("output_dir").get<std::string>();
      cfg.output_dir = p.is_relative() && !base.empty() ? base / p : p;
    }
    if (j.contains("formats")) cfg.formats = j.at("formats").get<std::vector<std::string>>();
    const std::string first = j.value("first_center", std::string("lowest"));
    if (first != "lowest" && first != "random") throw ConfigError("first_center must be lowest or random");
    cfg.options.first_center =
        first == "random" ? FirstCenterRule::kSeededRandom : FirstCenterRule::kLowestIndex;
    const std::string rule = j.value("nonexpert_rule", std::string("center"));
    if (rule != "expert" && rule != "center") throw ConfigError("nonexpert_rule must be expert or center");
    cfg.options.nonexpert =
        rule == "expert" ? NonExpertRule::kClosestExpert : NonExpertRule::kClosestCenter;
    cfg.options.balance_radius_multiplier =
        j.value("balance_multiplier", cfg.options.balance_radius_multiplier);
    cfg.allow_infeasible_slack = j.value("allow_infeasible_slack", false);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_experiment_config(j, path.parent_path());
}

PairStructure fairness_reference(const GraphInstance& h,
                                 const std::vector<ObjectiveSpec>& objectives) {
  bool has_kc = false;
  bool has_km = false;
  for (const auto& o : objectives) {
    has_kc = has_kc || o.kind == ObjectiveKind::kKCenter;
    has_km = has_km || o.kind == ObjectiveKind::kKMedian;
  }
  for (const auto& o : objectives) {
    if (o.kind != ObjectiveKind::kFairness) continue;
    if (o.alpha != 1 || o.beta != 1) return makeshift_fairness_ab(h, o.alpha, o.beta).pairs;
    if (has_km && !has_kc) {
      return makeshift_fairness_kmedian(h, Clustering::Singletons(h.size())).pairs;
    }
    return makeshift_fairness(h).pairs;
  }
  return {};
}

RunRecord run_cell(const GraphInstance& h, const ExperimentConfig& cfg,
                   const std::string& algorithm, int k, const std::vector<double>& slack,
                   std::uint64_t seed) {
  RunRecord rec;
  rec.algorithm = algorithm;
  rec.k = k;
  rec.slack = slack;
  rec.seed = seed;
  for (const auto& o : cfg.objectives) rec.objective_names.push_back(o.name());

  ProblemSpec spec;
  spec.objectives = cfg.objectives;
  spec.slacks = slack;
  spec.k = k;
  spec.options = cfg.options;
  spec.options.seed = seed;
  spec.allow_infeasible_slack = cfg.allow_infeasible_slack;

  try {
    const auto t0 = std::chrono::steady_clock::now();
    if (algorithm == "zeus") {
      auto r = zeus_run(h, spec);
      rec.clustering = std::move(r.clustering);
      rec.trace = trace_to_json(r.state);
    } else if (algorithm == "b1") {
      rec.clustering = baseline_b1(h, spec);
    } else if (algorithm == "b2") {
      rec.clustering = baseline_b2(h, k, spec.options);
    } else if (algorithm == "moc") {
      rec.clustering = baseline_moc(h, spec);
    } else if (algorithm == "oracle") {
      const auto ref = fairness_reference(h, spec.objectives);
      EvalContext ctx{&ref};
      rec.clustering = oracle_lmoc(h, k, spec.objectives, ctx).best_clustering;
    } else {
      throw ConfigError("unknown algorithm '" + algorithm + "'");
    }
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    const auto ref = fairness_reference(h, spec.objectives);
    EvalContext ctx{&ref};
    for (const auto& o : spec.objectives) rec.values.push_back(evaluate(h, rec.clustering, o, ctx).value);
  } catch (const Error& e) {
    rec.error = e.what();
    rec.values.assign(spec.objectives.size(), std::numeric_limits<double>::quiet_NaN());
  }
  return rec;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<RunRecord> records;
  std::optional<GraphInstance> fixed;
  if (cfg.instance) {
    LoadOptions lo;
    if (cfg.instance->extension() == ".csv") lo.format = InstanceFormat::kCsvEdges;
    lo.fill = cfg.fill;
    fixed = load_instance(*cfg.instance, lo);
  }
  for (std::uint64_t seed : cfg.seeds) {
    std::optional<GraphInstance> generated;
    if (cfg.generator) {
      GeneratorOptions g = *cfg.generator;
      g.seed = seed;
      generated = generate_instance(g);
    }
    const GraphInstance& h = fixed ? *fixed : *generated;
    for (const auto& slack : cfg.slacks) {
      for (int k : cfg.ks) {
        for (const auto& a : cfg.algorithms) records.push_back(run_cell(h, cfg, a, k, slack, seed));
      }
    }
  }
  return records;
}

}  // namespace rlmoc
