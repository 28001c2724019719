#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "netprune/algorithms/common.hpp"
#include "netprune/algorithms/distinct.hpp"
#include "netprune/core/hash.hpp"
#include "netprune/core/predicate.hpp"
#include "netprune/core/query.hpp"

namespace netprune {

/// d rows of w saturating counters; estimate is the row minimum and never
/// underestimates.
class CountMin {
 public:
  CountMin(std::size_t rows, std::size_t width, std::uint64_t seed);

  void add(std::uint64_t key, std::uint64_t amount);
  std::uint64_t estimate(std::uint64_t key) const;
  std::size_t column(std::size_t row, std::uint64_t key) const noexcept { return hashes_[row].range(key, width_); }
  std::uint64_t counter(std::size_t row, std::size_t col) const { return counters_.at(row * width_ + col); }

  std::size_t rows() const noexcept { return hashes_.size(); }
  std::size_t width() const noexcept { return width_; }

 private:
  std::size_t width_;
  std::vector<SeededHash> hashes_;
  std::vector<std::uint64_t> counters_;
};

struct HavingConfig {
  Aggregate fn = Aggregate::Sum;
  CompareOp op = CompareOp::Greater;
  std::uint64_t threshold = 0;
  DistinctConfig cache;        // MIN / MAX
  std::size_t cm_rows = 3;     // SUM / COUNT
  std::size_t cm_width = 1024;
  std::uint64_t seed = 1;
};

/// True when a single value satisfies the HAVING comparison.
bool having_holds(CompareOp op, std::uint64_t value, std::uint64_t threshold) noexcept;

/// HAVING pruning.
/// MIN < c / MAX > c: entries whose own value fails the comparison are
/// pruned; passing entries go through a distinct cache on the key.
/// SUM / COUNT > c: pass 1 adds to a Count-Min sketch and forwards the key
/// while the updated estimate passes; pass 2 prunes keys whose final estimate
/// fails.
class HavingPruner {
 public:
  /// Throws UnsupportedError for directions without a one-sided estimator.
  explicit HavingPruner(const HavingConfig& config);

  const HavingConfig& config() const noexcept { return config_; }
  bool two_pass() const noexcept { return config_.fn == Aggregate::Sum || config_.fn == Aggregate::Count; }

  /// Throws ProtocolError for a pass that does not fit the current phase.
  Decision process(std::uint64_t key, std::uint64_t value, std::uint32_t seq, int pass);

  void finish_pass1();

  const CountMin* sketch() const noexcept { return sketch_ ? &*sketch_ : nullptr; }
  const MatrixCache* cache() const noexcept { return cache_ ? &*cache_ : nullptr; }

 private:
  HavingConfig config_;
  std::optional<MatrixCache> cache_;
  std::optional<CountMin> sketch_;
  bool pass1_done_ = false;
};

}  // namespace netprune
