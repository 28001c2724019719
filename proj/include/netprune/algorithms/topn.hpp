#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "netprune/algorithms/common.hpp"

namespace netprune {

struct TopNDetConfig {
  std::uint64_t n = 250;
  std::size_t w = 4;  // thresholds t_1..t_w beyond t_0
};

/// Deterministic TOP N. The first N entries are forwarded while t_0 tracks
/// their minimum. Afterwards t_i = 2^i * max(t_0, 1) (saturating) and counter
/// i counts later entries >= t_i. An entry is pruned when it is below t_0, or
/// below some t_i whose counter has reached N. Ties are kept.
class TopNDet {
 public:
  explicit TopNDet(const TopNDetConfig& config);

  const TopNDetConfig& config() const noexcept { return config_; }
  Decision process(std::uint64_t v);

  bool warming_up() const noexcept { return seen_ < config_.n; }
  std::uint64_t t0() const noexcept { return t0_; }
  /// t_i for i in 0..w.
  std::uint64_t threshold(std::size_t i) const;
  /// Counter of t_i for i in 1..w.
  std::uint64_t counter(std::size_t i) const { return counters_.at(i - 1); }
  /// Largest i whose threshold is known safe (0 once warm), or -1 in warmup.
  int active_index() const noexcept;

 private:
  TopNDetConfig config_;
  std::uint64_t seen_ = 0;
  std::uint64_t t0_ = UINT64_MAX;
  std::vector<std::uint64_t> counters_;
};

/// Ladder threshold shared with the pipeline program.
std::uint64_t topn_threshold(std::uint64_t t0, std::size_t i) noexcept;

struct TopNRandConfig {
  std::size_t d = 4096;
  std::size_t w = 4;
  std::uint64_t seed = 1;
  /// When both are set the constructor enforces d >= N*e/ln(1/delta).
  std::uint64_t n = 0;
  double delta = 0.0;
};

/// Randomized TOP N: each entry picks a uniform row; the row keeps its w
/// largest values by rolling minimum and an entry smaller than all w cells
/// is pruned. Cells hold value+1 (saturating), 0 meaning empty.
class TopNRand {
 public:
  /// Row chosen for the entry with sequence number seq.
  using RowSource = std::function<std::size_t(std::uint32_t seq)>;

  explicit TopNRand(const TopNRandConfig& config, RowSource rows = {});

  const TopNRandConfig& config() const noexcept { return config_; }
  std::size_t row_for(std::uint32_t seq) const;
  Decision process(std::uint64_t v, std::uint32_t seq);

  std::uint64_t cell(std::size_t row, std::size_t col) const { return cells_.at(row * config_.w + col); }

 private:
  TopNRandConfig config_;
  RowSource rows_;
  std::vector<std::uint64_t> cells_;
};

/// Default row draw: uniform in [0, d) from a seeded hash of seq.
std::size_t topn_random_row(std::uint64_t seed, std::uint32_t seq, std::size_t d) noexcept;

}  // namespace netprune
