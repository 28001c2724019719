// netprune command line: run experiments, plan queries, evaluate queries
// exactly over CSV tables.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "netprune/core/csv.hpp"
#include "netprune/core/errors.hpp"
#include "netprune/planner/packing.hpp"
#include "netprune/planner/plan.hpp"
#include "netprune/runner/experiment.hpp"
#include "netprune/runner/result.hpp"
#include "netprune/switchsim/pipeline.hpp"

namespace fs = std::filesystem;
using namespace netprune;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int cmd_run(const fs::path& config, const fs::path& out_dir, bool serial) {
  const ExperimentConfig c = load_experiment(config);
  const ExperimentReport r = run_experiment(c, serial ? Execution::Serial : Execution::Parallel);
  fs::create_directories(out_dir);
  std::ostringstream csv;
  write_report_csv(csv, r);
  const fs::path csv_path = out_dir / (c.name + ".csv");
  const fs::path json_path = out_dir / (c.name + ".json");
  write_file(csv_path, csv.str());
  write_file(json_path, report_json(r) + "\n");
  std::cout << c.name << ": " << r.trials.size() << " seeds, mean pruning fraction " << r.mean_pruning_fraction()
            << ", mean unpruned " << r.mean_unpruned() << ", " << r.failures() << " failures\n"
            << "wrote " << csv_path.string() << " and " << json_path.string() << "\n";
  for (const auto& t : r.trials) {
    if (!t.error.empty()) std::cerr << "seed " << t.seed << ": " << t.error << "\n";
  }
  if (!r.passed()) {
    std::cerr << "FAILED: output differs from the oracle or a trial did not complete\n";
    return 1;
  }
  return 0;
}

int cmd_plan(const std::vector<std::string>& queries, const std::string& profile_path, const std::string& guarantee,
             double delta, double distinct_keys, double stream_length, const std::string& layout_path) {
  const SwitchProfile profile = profile_path.empty() ? SwitchProfile{} : load_profile(profile_path);
  PlanHints hints;
  if (distinct_keys > 0) hints.distinct_keys = distinct_keys;
  if (stream_length > 0) hints.stream_length = stream_length;
  std::vector<QueryPlan> plans;
  std::vector<AlgorithmFootprint> footprints;
  for (const auto& text : queries) {
    QuerySpec q = parse_query(text);
    if (guarantee == "probabilistic") q.guarantee = Guarantee::with_probability(delta);
    plans.push_back(plan_query(q, profile, hints));
    footprints.push_back(plans.back().footprint);
  }
  const Placement placement = pack_queries(footprints, profile);
  std::cout << plans_to_json(plans, placement, profile) << "\n";
  if (!layout_path.empty()) {
    if (!placement.feasible) {
      std::cerr << "no stage layout: " << placement.diagnosis << "\n";
      return 1;
    }
    const std::string text = build_pipeline(plans, profile).layout_text();
    if (layout_path == "-") {
      std::cout << text;
    } else {
      write_file(layout_path, text);
    }
  }
  return placement.feasible ? 0 : 1;
}

int cmd_oracle(const std::string& query, const std::vector<fs::path>& files) {
  const QuerySpec q = parse_query(query);
  Tables tables;
  for (const auto& f : files) tables.emplace(f.stem().string(), load_csv(f, infer_csv_schema(f)));
  write_result(std::cout, oracle_execute(q, tables));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Switch-side query pruning: experiments, planning and an exact oracle"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment; writes <name>.csv (one row per seed) and <name>.json");
  fs::path config;
  fs::path out_dir = ".";
  bool serial = false;
  run->add_option("config", config, "Experiment INI file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--out-dir", out_dir, "Directory for the reports");
  run->add_flag("--serial", serial, "Run seeds one after another instead of on OpenMP threads");

  auto* plan = app.add_subcommand("plan", "Plan queries: parameters, footprint and packing as JSON");
  std::vector<std::string> queries;
  std::string profile;
  std::string guarantee = "deterministic";
  double delta = 0.0;
  double distinct_keys = 0;
  double stream_length = 0;
  std::string layout;
  plan->add_option("query", queries, "Query text; several queries are packed together")->required();
  plan->add_option("--profile", profile, "Switch profile (key=value)")->check(CLI::ExistingFile);
  plan->add_option("--guarantee", guarantee, "deterministic or probabilistic")
      ->check(CLI::IsMember({"deterministic", "probabilistic"}));
  plan->add_option("--delta", delta, "Failure probability of a probabilistic guarantee");
  plan->add_option("--distinct-keys", distinct_keys, "Expected number of distinct keys");
  plan->add_option("--stream-length", stream_length, "Expected number of entries");
  plan->add_option("--layout", layout, "Write the stage layout dump to this file ('-' for stdout)");

  auto* oracle = app.add_subcommand("oracle", "Exact query answer over CSV tables named by file stem");
  std::string oracle_query;
  std::vector<fs::path> files;
  oracle->add_option("query", oracle_query, "Query text")->required();
  oracle->add_option("csv", files, "CSV tables")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(config, out_dir, serial);
    if (*plan) return cmd_plan(queries, profile, guarantee, delta, distinct_keys, stream_length, layout);
    if (*oracle) return cmd_oracle(oracle_query, files);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
