#pragma once

#include <cstdint>
#include <vector>

#include "netprune/algorithms/common.hpp"
#include "netprune/core/hash.hpp"

namespace netprune {

enum class ReplacementPolicy : std::uint8_t { Lru, Fifo };

const char* to_string(ReplacementPolicy p) noexcept;

struct DistinctConfig {
  std::size_t d = 4096;  // rows
  std::size_t w = 2;     // columns, one per stage (LRU)
  ReplacementPolicy policy = ReplacementPolicy::Lru;
  /// 0 stores key+1 (exact, key 2^64-1 is rejected); 1..64 stores an f-bit
  /// fingerprint with 0 remapped to 1.
  unsigned fingerprint_bits = 0;
  /// FIFO only: columns sharing one stage's memory.
  std::size_t group_width = 4;
  std::uint64_t seed = 1;
};

/// d x w cache of fingerprints. Each key maps to one row; a hit prunes.
///
/// LRU: a miss inserts at column 0 and shifts the row right (the last
/// column is evicted); a hit at column j moves it to column 0.
/// FIFO: column (seq-1) mod w is overwritten on a miss, unless a hit was
/// already observed in a column of the same or an earlier stage group.
class MatrixCache {
 public:
  explicit MatrixCache(const DistinctConfig& config);

  const DistinctConfig& config() const noexcept { return config_; }
  std::size_t row_of(std::uint64_t key) const noexcept { return row_hash_.range(key, config_.d); }
  std::uint64_t fingerprint(std::uint64_t key) const;

  Decision process(std::uint64_t key, std::uint32_t seq);

  std::uint64_t cell(std::size_t row, std::size_t col) const { return cells_.at(row * config_.w + col); }

 private:
  DistinctConfig config_;
  SeededHash row_hash_;
  SeededHash fp_hash_;
  std::vector<std::uint64_t> cells_;
};

/// Checks a DistinctConfig; throws ConfigError.
void validate(const DistinctConfig& config);

}  // namespace netprune
