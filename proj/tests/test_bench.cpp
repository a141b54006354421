#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rlmoc/bench.hpp"
#include "rlmoc/errors.hpp"
#include "support/instances.hpp"

using namespace rlmoc;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("rlmoc_bench_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_config() {
  return parse_experiment_config(nlohmann::json::parse(R"({
    "generator": {"kind": "rs", "n": 30},
    "objectives": "rs,kc",
    "slacks": [[1, 3], [0.5, 2]],
    "k": {"from": 2, "to": 4},
    "seeds": [1, 2],
    "algorithms": ["zeus", "b1", "b2", "moc"]
  })"));
}

}  // namespace

TEST(Generators, DeterministicAndValid) {
  for (auto kind : {GeneratorKind::kResourceSharing, GeneratorKind::kFairness,
                    GeneratorKind::kTeamFormation}) {
    GeneratorOptions g;
    g.kind = kind;
    g.n = 80;
    g.seed = 17;
    const auto a = generate_instance(g);
    const auto b = generate_instance(g);
    EXPECT_TRUE(a == b);
    EXPECT_EQ(a.size(), 80);
    EXPECT_TRUE(validate_metric(a).is_metric);
    g.seed = 18;
    EXPECT_FALSE(generate_instance(g) == a);
  }
}

TEST(Generators, KindGuarantees) {
  const auto rs = generate_instance({GeneratorKind::kResourceSharing, 50, 2});
  for (int u = 0; u < rs.size(); ++u) EXPECT_FALSE(rs.neighbors(u).empty());
  const auto f = generate_instance({GeneratorKind::kFairness, 50, 2});
  EXPECT_EQ(f.blue_nodes().size(), 15u);
  EXPECT_EQ(f.purple_nodes().size(), 35u);
  EXPECT_NO_THROW(makeshift_fairness(f));
  const auto tf = generate_instance({GeneratorKind::kTeamFormation, 50, 2});
  EXPECT_GE(tf.experts().size(), 1u);
  EXPECT_THROW(generate_instance({GeneratorKind::kResourceSharing, 1, 2}), ConfigError);
  EXPECT_THROW(parse_generator_kind("zz"), ConfigError);
}

TEST(Baselines, ProduceKBlocks) {
  const auto h = generate_instance({GeneratorKind::kFairness, 40, 6});
  ProblemSpec spec;
  spec.objectives = parse_objectives("f,kc");
  spec.slacks = {1, 3};
  spec.k = 4;
  for (const auto& c : {baseline_b1(h, spec), baseline_b2(h, 4, spec.options), baseline_moc(h, spec)}) {
    c.validate();
    EXPECT_TRUE(c.is_finalized(4));
    EXPECT_TRUE(c.has_centers());
  }
  // B1 keeps the matched pairs, so fairness is optimal.
  const auto ref = fairness_reference(h, spec.objectives);
  EXPECT_EQ(eval_fairness(h, baseline_b1(h, spec), ref).value, 1.0);
}

TEST(Baselines, MocNeedsTwoObjectives) {
  const auto h = generate_instance({GeneratorKind::kResourceSharing, 20, 6});
  ProblemSpec spec;
  spec.objectives = parse_objectives("kc");
  spec.slacks = {2};
  spec.k = 2;
  EXPECT_THROW(baseline_moc(h, spec), ConfigError);
}

TEST(Baselines, B1NeedsEnoughFragments) {
  const auto h = fixtures::line_instance({0, 1, 10, 11}, {{0, 1}, {2, 3}});
  ProblemSpec spec;
  spec.objectives = parse_objectives("rs,kc");
  spec.slacks = {1, 3};
  spec.k = 3;
  EXPECT_THROW(baseline_b1(h, spec), InfeasibleError);
}

TEST(Config, ParsesRangesAndRejectsBadInput) {
  const auto cfg = small_config();
  EXPECT_EQ(cfg.ks, (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(cfg.slacks.size(), 2u);
  auto bad = [](const char* text) {
    return [text] { parse_experiment_config(nlohmann::json::parse(text)); };
  };
  EXPECT_THROW(bad(R"({"objectives":"rs,kc","slack":[1,3],"k":2,"algorithms":["zeus"]})")(),
               ConfigError);
  EXPECT_THROW(bad(R"({"generator":{"kind":"rs","n":10},"objectives":"rs,kc","slack":[1,3],
                 "k":2,"algorithms":["nope"]})")(),
               ConfigError);
  EXPECT_THROW(bad(R"({"generator":{"kind":"rs","n":10},"objectives":"rs,kc","slack":[2,3],
                 "k":2,"algorithms":["zeus"]})")(),
               ConfigError);
  EXPECT_THROW(bad(R"({"generator":{"kind":"rs","n":10},"objectives":"rs,kc","slack":[1,3],
                 "k":"x","algorithms":["zeus"]})")(),
               ConfigError);
}

TEST(Experiment, RunsGridAndRecordsErrors) {
  const auto records = run_experiment(small_config());
  EXPECT_EQ(records.size(), 2u * 2u * 3u * 4u);
  for (const auto& r : records) {
    if (r.error.empty()) {
      ASSERT_EQ(r.values.size(), 2u);
      EXPECT_TRUE(r.clustering.is_finalized(r.k));
      EXPECT_GE(r.wall_ms, 0);
    } else {
      EXPECT_TRUE(std::isnan(r.values[0]));
    }
  }
  // Zeus rows carry a trace; others do not.
  EXPECT_FALSE(records[0].trace.is_null());
}

TEST(Report, CsvAndJsonRoundTrip) {
  auto records = run_experiment(small_config());
  records[1].error = "synthetic, with \"quotes\"";
  records[1].values = {std::nan(""), ObjectiveValue::kInfinity};
  const auto csv = records_to_csv(records);
  const auto back = records_from_csv(csv);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(back[i].algorithm, records[i].algorithm);
    EXPECT_EQ(back[i].k, records[i].k);
    EXPECT_EQ(back[i].slack, records[i].slack);
    EXPECT_EQ(back[i].seed, records[i].seed);
    EXPECT_EQ(back[i].error, records[i].error);
    for (std::size_t j = 0; j < records[i].values.size(); ++j) {
      if (std::isnan(records[i].values[j])) {
        EXPECT_TRUE(std::isnan(back[i].values[j]));
      } else {
        EXPECT_EQ(back[i].values[j], records[i].values[j]);
      }
    }
  }
  EXPECT_EQ(records_to_csv(back), csv);
  const auto json_back = records_from_json(records_to_json(records));
  EXPECT_EQ(records_to_csv(json_back), csv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "algorithm,k,slack,seed,rs,kc,wall_ms,error");
}

TEST(Report, SvgIsDeterministic) {
  auto records = run_experiment(small_config());
  for (auto& r : records) r.wall_ms = 0;
  const auto a = render_svg(records, 1, {1, 3});
  EXPECT_EQ(a, render_svg(records, 1, {1, 3}));
  EXPECT_EQ(a.rfind("<svg", 0), 0u);
  EXPECT_NE(a.find("zeus"), std::string::npos);
  EXPECT_NE(a.find("moc"), std::string::npos);
}

TEST(Report, EmitWritesFiles) {
  const auto dir = scratch_dir("emit");
  const auto records = run_experiment(small_config());
  const auto paths = emit_report(records, {"csv", "json", "svg"}, dir);
  EXPECT_EQ(paths.size(), 2u + 2u * 2u);
  for (const auto& p : paths) EXPECT_TRUE(fs::exists(p)) << p;
  EXPECT_EQ(slurp(dir / "results.csv"), records_to_csv(records));
}
