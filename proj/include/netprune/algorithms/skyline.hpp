#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netprune/algorithms/common.hpp"
#include "netprune/core/query.hpp"
#include "netprune/switchsim/aph.hpp"

namespace netprune {

struct SkylineConfig {
  std::size_t dims = 2;
  std::size_t w = 10;
  ScoreHeuristic heuristic = ScoreHeuristic::Aph;
  const LogTable* table = nullptr;  // null uses LogTable::standard()
};

/// True when x <= y in every coordinate and x != y.
bool strictly_dominated(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y);

/// Monotone score: saturating coordinate sum, or the APH sum of logs.
std::uint64_t skyline_score(std::span<const std::uint64_t> x, ScoreHeuristic h, const LogTable& table);

/// w stored points kept by rolling minimum on score. An entry is pruned iff
/// some stored point (as it was before this entry) strictly dominates it.
class SkylineStore {
 public:
  explicit SkylineStore(const SkylineConfig& config);

  const SkylineConfig& config() const noexcept { return config_; }
  /// Throws std::invalid_argument if x.size() != dims.
  Decision process(std::span<const std::uint64_t> x);

  /// Stored score + 1 (0 when the slot is empty).
  std::uint64_t stored_score(std::size_t i) const { return scores_.at(i); }
  std::span<const std::uint64_t> stored_point(std::size_t i) const {
    return std::span<const std::uint64_t>(points_).subspan(i * config_.dims, config_.dims);
  }

 private:
  SkylineConfig config_;
  const LogTable* table_;
  std::vector<std::uint64_t> scores_;
  std::vector<std::uint64_t> points_;
};

}  // namespace netprune
