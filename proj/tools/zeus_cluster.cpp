#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rlmoc/bench.hpp"
#include "rlmoc/errors.hpp"
#include "rlmoc/oracle.hpp"
#include "rlmoc/zeus.hpp"

namespace {

using namespace rlmoc;

struct InputArgs {
  std::string path;
  std::string format = "json";
  std::optional<double> fill;
};

struct Args {
  InputArgs input;
  std::string objectives;
  std::string slack;
  int k = 0;
  std::uint64_t seed = 0;
  std::string first_center = "lowest";
  std::string nonexpert_rule = "center";
  double balance_multiplier = 1.0;
  bool allow_infeasible = false;
  int gamma = 1;
  int alpha = 1;
  int beta = 1;
  int local_search_cap = 0;
  std::string output;
  std::string trace;
  std::string config;
  std::string kind;
  int n = 0;
  double edge_radius = 0.15;
  double edge_keep = 0.5;
  double blue_fraction = 0.3;
  double expert_fraction = 0.3;
};

void add_input(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("--input", in.path, "instance file")->required();
  cmd->add_option("--format", in.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--fill", in.fill, "distance for unlisted pairs (explicit metric)");
}

void add_objectives(CLI::App* cmd, Args& a) {
  cmd->add_option("--objectives", a.objectives, "ordered list, e.g. rs,kc")->required();
  cmd->add_option("--k", a.k, "number of clusters")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--gamma", a.gamma, "neighbors each node needs (rs)")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", a.alpha, "partners per Blue node (f)")->check(CLI::PositiveNumber);
  cmd->add_option("--beta", a.beta, "Blue nodes per Purple node (f)")->check(CLI::PositiveNumber);
}

GraphInstance load(const InputArgs& in) {
  LoadOptions lo;
  lo.format = in.format == "csv" ? InstanceFormat::kCsvEdges : InstanceFormat::kJson;
  lo.fill = in.fill;
  return load_instance(in.path, lo);
}

std::vector<ObjectiveSpec> objectives_of(const Args& a) {
  auto objs = parse_objectives(a.objectives);
  for (auto& o : objs) {
    o.gamma = a.gamma;
    o.alpha = a.alpha;
    o.beta = a.beta;
  }
  return objs;
}

std::vector<double> parse_slack(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ConfigError("bad slack value '" + part + "'");
    }
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

nlohmann::json values_json(const std::vector<ObjectiveSpec>& objs,
                           const std::vector<ObjectiveValue>& values) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < objs.size(); ++i) {
    arr.push_back({{"objective", objs[i].name()}, {"value", value_to_json(values[i].value)}});
  }
  return arr;
}

int run_cluster(const Args& a) {
  const auto h = load(a.input);
  ProblemSpec spec;
  spec.objectives = objectives_of(a);
  spec.slacks = parse_slack(a.slack);
  spec.k = a.k;
  spec.options.seed = a.seed;
  spec.options.first_center =
      a.first_center == "random" ? FirstCenterRule::kSeededRandom : FirstCenterRule::kLowestIndex;
  spec.options.nonexpert =
      a.nonexpert_rule == "expert" ? NonExpertRule::kClosestExpert : NonExpertRule::kClosestCenter;
  spec.options.balance_radius_multiplier = a.balance_multiplier;
  spec.allow_infeasible_slack = a.allow_infeasible;
  spec.local_search_cap = a.local_search_cap;

  const auto result = zeus_run(h, spec);
  for (const auto& t : result.state.trace) {
    if (!t.warning.empty()) std::cerr << "warning: " << t.objective << ": " << t.warning << "\n";
  }
  nlohmann::json out;
  out["clustering"] = clustering_to_json(h, result.clustering);
  out["values"] = values_json(spec.objectives, result.state.current_values(h));
  write_text(a.output, out.dump(2) + "\n");
  if (!a.trace.empty()) write_text(a.trace, trace_to_json(result.state).dump(2) + "\n");
  return 0;
}

int run_oracle(const Args& a) {
  const auto h = load(a.input);
  const auto objs = objectives_of(a);
  const auto ref = fairness_reference(h, objs);
  const auto r = oracle_lmoc(h, a.k, objs, EvalContext{&ref});
  nlohmann::json out;
  out["clustering"] = clustering_to_json(h, r.best_clustering);
  out["values"] = values_json(objs, r.best_values);
  out["enumerated"] = r.enumerated;
  write_text(a.output, out.dump(2) + "\n");
  return 0;
}

int run_bench(const Args& a) {
  auto cfg = load_experiment_config(a.config);
  if (!a.output.empty()) cfg.output_dir = a.output;
  const auto records = run_experiment(cfg);
  int failed = 0;
  for (const auto& r : records) {
    if (!r.error.empty()) {
      ++failed;
      std::cerr << "cell " << r.algorithm << " k=" << r.k << " slack=" << slack_label(r.slack)
                << " seed=" << r.seed << ": " << r.error << "\n";
    }
  }
  for (const auto& p : emit_report(records, cfg.formats, cfg.output_dir)) {
    std::cout << p.string() << "\n";
  }
  std::cerr << records.size() << " runs, " << failed << " with errors\n";
  return 0;
}

int run_gen(const Args& a) {
  GeneratorOptions g;
  g.kind = parse_generator_kind(a.kind);
  g.n = a.n;
  g.seed = a.seed;
  g.edge_radius = a.edge_radius;
  g.edge_keep = a.edge_keep;
  g.blue_fraction = a.blue_fraction;
  g.expert_fraction = a.expert_fraction;
  write_text(a.output, serialize_instance(generate_instance(g)) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicographic multi-objective graph clustering"};
  app.require_subcommand(1);
  Args a;

  auto* cluster = app.add_subcommand("cluster", "run the Zeus pipeline");
  add_input(cluster, a.input);
  add_objectives(cluster, a);
  cluster->add_option("--slack", a.slack, "comma separated slack per objective")->required();
  cluster->add_option("--seed", a.seed, "seed for randomized choices");
  cluster->add_option("--first-center", a.first_center, "lowest or random")
      ->check(CLI::IsMember({"lowest", "random"}));
  cluster->add_option("--nonexpert-rule", a.nonexpert_rule, "expert or center")
      ->check(CLI::IsMember({"expert", "center"}));
  cluster->add_option("--balance-multiplier", a.balance_multiplier,
                      "radius multiplier for the balanced assignment (>= 1)");
  cluster->add_flag("--allow-infeasible-slack", a.allow_infeasible,
                    "accept slack values that cannot be met");
  cluster->add_option("--local-search-cap", a.local_search_cap, "max moves per stage (0: 50n)");
  cluster->add_option("--output", a.output, "clustering JSON (default stdout)");
  cluster->add_option("--trace", a.trace, "write the per-stage trace JSON here");

  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum on a tiny instance");
  add_input(oracle, a.input);
  add_objectives(oracle, a);
  oracle->add_option("--output", a.output, "result JSON (default stdout)");

  auto* bench = app.add_subcommand("bench", "run an experiment grid and write reports");
  bench->add_option("--config", a.config, "experiment config JSON")->required();
  bench->add_option("--output", a.output, "output directory (overrides the config)");

  auto* gen = app.add_subcommand("gen", "write a synthetic instance");
  gen->add_option("--kind", a.kind, "rs, f or tf")->required()->check(CLI::IsMember({"rs", "f", "tf"}));
  gen->add_option("--n", a.n, "number of nodes")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", a.seed, "random seed");
  gen->add_option("--edge-radius", a.edge_radius, "threshold radius for E");
  gen->add_option("--edge-keep", a.edge_keep, "probability of keeping a pair within the radius");
  gen->add_option("--blue-fraction", a.blue_fraction, "share of Blue nodes (f)");
  gen->add_option("--expert-fraction", a.expert_fraction, "share of experts (tf)");
  gen->add_option("--output", a.output, "instance JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*cluster) return run_cluster(a);
    if (*oracle) return run_oracle(a);
    if (*bench) return run_bench(a);
    if (*gen) return run_gen(a);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
