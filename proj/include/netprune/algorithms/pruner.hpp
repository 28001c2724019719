#pragma once

#include <cstdint>
#include <memory>

#include "netprune/algorithms/common.hpp"
#include "netprune/algorithms/distinct.hpp"
#include "netprune/core/query.hpp"

namespace netprune {

/// Algorithm parameters for one query. The meaning of d and w follows the
/// algorithm: cache rows/columns (DISTINCT, randomized TOP N, HAVING MIN/MAX),
/// hash rows/cells per row (GROUP BY), thresholds (deterministic TOP N),
/// stored points (SKYLINE), sketch rows/counters (HAVING SUM/COUNT, with
/// d rows and w counters).
struct PrunerConfig {
  std::size_t d = 4096;
  std::size_t w = 2;
  ReplacementPolicy policy = ReplacementPolicy::Lru;
  unsigned fingerprint_bits = 0;  // 0: exact keys
  bool randomized_topn = false;
  std::uint64_t bloom_bits = std::uint64_t{1} << 20;  // both filters together
  unsigned bloom_hashes = 3;
  bool asymmetric_join = false;
  JoinSide join_build_side = JoinSide::A;
  std::size_t alus_per_stage = 4;
  std::uint64_t seed = 1;

  friend bool operator==(const PrunerConfig&, const PrunerConfig&) = default;
};

/// Default parameters of the resource table for the algorithm serving q.
PrunerConfig default_config(const QuerySpec& q);

/// Reference pruning algorithm behind a uniform packet interface. Packet
/// value layout per query kind:
///   Filter: one value per switch atom, in atom order
///   Distinct, Join: key
///   TopN: ordering value
///   Skyline: the D coordinates
///   GroupByMaxMin, Having: key, value
class Pruner {
 public:
  virtual ~Pruner() = default;
  virtual Decision process(const EntryView& entry, FlowRole role) = 0;
  /// Control-plane barrier after every flow of `pass` has finished.
  virtual void finish_pass(int /*pass*/) {}
};

/// Throws ConfigError or UnsupportedError for invalid combinations.
std::unique_ptr<Pruner> make_pruner(const QuerySpec& q, const PrunerConfig& config);

/// Number of passes the switch sees for q under config.
int pass_count(const QuerySpec& q, const PrunerConfig& config);

}  // namespace netprune
