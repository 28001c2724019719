#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "netprune/algorithms/common.hpp"
#include "netprune/core/hash.hpp"

namespace netprune {

enum class Extremum : std::uint8_t { Max, Min };

struct GroupByConfig {
  std::size_t d = 4096;  // cells per hash row
  std::size_t w = 8;     // hash functions, one per stage
  Extremum direction = Extremum::Max;
  std::uint64_t seed = 1;
};

/// w x d sketch of (key+1, value) cells. An entry (k, v) is pruned when one of
/// its w cells holds k with a strictly better value. Every cell visited is
/// overwritten with k and the best value of k seen so far along the walk.
class GroupBySketch {
 public:
  /// Cell index of key in hash row i; replaceable for hand-worked examples.
  using IndexFn = std::function<std::size_t(std::size_t i, std::uint64_t key)>;

  explicit GroupBySketch(const GroupByConfig& config, IndexFn index = {});

  const GroupByConfig& config() const noexcept { return config_; }
  std::size_t index(std::size_t i, std::uint64_t key) const;

  /// Throws std::domain_error for key 2^64-1 (reserved).
  Decision process(std::uint64_t key, std::uint64_t value);

  struct Cell {
    std::uint64_t key = 0;  // key + 1, 0 when empty
    std::uint64_t value = 0;
  };
  const Cell& cell(std::size_t i, std::size_t j) const { return cells_.at(i * config_.d + j); }

 private:
  bool better(std::uint64_t a, std::uint64_t b) const noexcept {
    return config_.direction == Extremum::Max ? a > b : a < b;
  }

  GroupByConfig config_;
  IndexFn index_;
  std::vector<SeededHash> hashes_;
  std::vector<Cell> cells_;
};

}  // namespace netprune
