#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "netprune/algorithms/pruner.hpp"
#include "netprune/core/query.hpp"

namespace netprune {

enum class Algorithm : std::uint8_t {
  Filter,
  DistinctLru,
  DistinctFifo,
  SkylineSum,
  SkylineAph,
  TopNDet,
  TopNRand,
  GroupBy,
  JoinBloom,
  JoinRbf,
  HavingSketch,  // SUM/COUNT, Count-Min sketch
  HavingCache,   // MIN/MAX, matrix cache of passing keys
};

const char* to_string(Algorithm a) noexcept;

/// Inverse of to_string. Throws ConfigError for an unknown name.
Algorithm parse_algorithm(std::string_view name);

/// Parameters that determine an algorithm's switch footprint. Fields an
/// algorithm does not use are ignored.
struct AlgorithmParams {
  Algorithm algorithm = Algorithm::Filter;
  std::uint64_t d = 0;
  std::uint64_t w = 0;
  std::size_t dims = 0;         // SKYLINE
  std::size_t atoms = 0;        // filter atoms on the switch
  std::uint64_t bloom_bits = 0;  // JOIN: M, both filters together
  unsigned hashes = 0;          // JOIN: H
  ReplacementPolicy policy = ReplacementPolicy::Lru;  // HAVING MIN/MAX cache
  std::size_t alus_per_stage = 4;

  friend bool operator==(const AlgorithmParams&, const AlgorithmParams&) = default;
};

struct ResourceFootprint {
  std::size_t stages = 0;
  std::size_t alus = 0;
  std::uint64_t sram_bits = 0;
  std::size_t tcam_entries = 0;

  friend bool operator==(const ResourceFootprint&, const ResourceFootprint&) = default;
};

/// Demand of one pipeline stage of an algorithm.
struct StageDemand {
  std::size_t alus = 0;
  std::uint64_t sram_bits = 0;
  std::size_t tcam_entries = 0;
  std::string role;

  friend bool operator==(const StageDemand&, const StageDemand&) = default;
};

struct AlgorithmFootprint {
  AlgorithmParams params;
  ResourceFootprint total;
  /// Ordered stage demands; empty when the algorithm has no stage program
  /// (RBF is estimated only).
  std::vector<StageDemand> layout;
};

/// Footprint of the algorithm excluding the shared decision stage. Throws
/// ConfigError for missing or out-of-range parameters.
AlgorithmFootprint estimate_resources(const AlgorithmParams& params);

/// Algorithm and parameters that serve q under config.
AlgorithmParams algorithm_params(const QuerySpec& q, const PrunerConfig& config);

/// One named row of the default resource table.
struct DefaultRow {
  std::string name;
  AlgorithmParams params;
};

std::vector<DefaultRow> default_rows(std::size_t alus_per_stage = 4);

}  // namespace netprune
