#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netprune/core/generate.hpp"
#include "netprune/planner/plan.hpp"
#include "netprune/planner/profile.hpp"
#include "netprune/runner/end_to_end.hpp"
#include "netprune/transport/channel.hpp"

namespace netprune {

enum class Generator : std::uint8_t { Stream, Points, Join, Csv };

const char* to_string(Generator g) noexcept;

/// Dataset recipe. Stream tables have columns (key, value), point tables
/// (id, d1..dD) and join tables (key, payload). Generated data uses the
/// trial seed; CSV tables are reshuffled with it when `shuffle` is set.
struct DatasetSpec {
  Generator generator = Generator::Stream;
  std::size_t n = 1000;
  std::size_t distinct = 100;
  KeyDistribution key_dist = KeyDistribution::Uniform;
  double zipf_s = 1.1;
  std::uint64_t value_min = 0;
  std::uint64_t value_max = 1'000'000;
  std::size_t dims = 2;
  std::uint64_t max_coord = 1'000'000;
  std::size_t left_rows = 1000;
  std::size_t right_rows = 1000;
  double overlap = 0.5;
  std::filesystem::path path;
  std::filesystem::path right_path;  // joined table of a CSV join
  bool shuffle = false;

  /// One-line description, e.g. "stream n=1000 distinct=100 uniform".
  std::string describe() const;
};

/// Explicit algorithm parameters; unset fields keep the default
/// configuration of the query.
struct ManualParams {
  std::optional<std::size_t> d;
  std::optional<std::size_t> w;
  std::optional<ReplacementPolicy> policy;
  std::optional<unsigned> fingerprint_bits;
  std::optional<bool> randomized_topn;
  std::optional<std::uint64_t> bloom_bits;
  std::optional<unsigned> bloom_hashes;
  std::optional<bool> asymmetric_join;
  std::optional<JoinSide> build_side;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::string query_text;
  QuerySpec query;
  bool auto_params = true;  // planner chooses the parameters
  ManualParams manual;
  SwitchProfile profile;
  DatasetSpec dataset;
  std::vector<std::uint64_t> seeds;
  ChannelConfig channel;
};

/// Parses an INI experiment. Sections and keys:
///   [experiment] name
///   [query]      text, guarantee = deterministic | probabilistic, delta,
///                heuristic = sum | aph
///   [algorithm]  params = auto | manual, d, w, policy = lru | fifo,
///                fingerprint_bits, randomized_topn, bloom_bits, bloom_hashes,
///                asymmetric_join, build_side = a | b
///   [switch]     stages, alus_per_stage, sram_bits_per_stage, tcam_entries
///   [dataset]    generator = stream | points | join | csv, n, distinct,
///                key_dist = uniform | zipf, zipf_s, value_min, value_max,
///                dims, max_coord, left_rows, right_rows, overlap, path,
///                right_path, shuffle
///   [run]        seeds (e.g. "1, 2, 5..8"), loss_rate, latency, jitter,
///                timeout, window, max_steps
/// Comments start with ';'. Relative CSV paths resolve against `base`.
/// Throws ConfigError listing every invalid, unknown or missing field.
ExperimentConfig parse_experiment(std::string_view text, const std::filesystem::path& base = {});

/// Throws std::runtime_error if the file cannot be read.
ExperimentConfig load_experiment(const std::filesystem::path& path);

/// Tables of one trial, named after the query's tables.
Tables make_tables(const ExperimentConfig& config, std::uint64_t seed);

/// Plan shared by every trial: the planner's (auto) or the manual
/// parameters with bounds from the dataset size and key count.
QueryPlan experiment_plan(const ExperimentConfig& config);

struct TrialReport {
  std::uint64_t seed = 0;
  RunStats stats;
  std::size_t result_rows = 0;
  bool oracle_equal = false;
  std::string error;  // non-empty when the trial threw

  bool ok() const noexcept { return error.empty() && oracle_equal; }
};

struct ExperimentReport {
  std::string name;
  std::string query;
  QueryKind kind = QueryKind::Filter;
  Guarantee guarantee;
  QueryPlan plan;
  SwitchProfile profile;
  std::string dataset;
  double loss_rate = 0.0;
  std::vector<TrialReport> trials;

  double mean_pruning_fraction() const;
  double mean_unpruned() const;
  double mean_survivors() const;
  std::size_t failures() const;  // trials that threw or differ from the oracle
  double failure_fraction() const;
  /// Deterministic guarantees pass when every trial matches the oracle;
  /// probabilistic ones when no trial threw.
  bool passed() const;
};

enum class Execution : std::uint8_t { Serial, Parallel };

/// One end-to-end trial per seed: dataset seed = seed, pruner seed =
/// derive_seed(seed, 1), channel seed = derive_seed(seed, 2). Parallel
/// execution runs trials on OpenMP threads, each with its own pipeline and
/// channel; reports are identical to serial execution.
ExperimentReport run_experiment(const ExperimentConfig& config, Execution execution = Execution::Parallel);

ExperimentReport run_experiment(const std::filesystem::path& config, Execution execution = Execution::Parallel);

/// One header line and one row per trial.
void write_report_csv(std::ostream& out, const ExperimentReport& report);

/// Summary document: configuration, bounds, aggregates and per-seed stats.
std::string report_json(const ExperimentReport& report);

}  // namespace netprune
