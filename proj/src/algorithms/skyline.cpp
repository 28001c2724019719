#include "netprune/algorithms/skyline.hpp"

#include <stdexcept>

#include "netprune/core/errors.hpp"

namespace netprune {

bool strictly_dominated(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y) {
  bool differs = false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] > y[k]) return false;
    if (x[k] != y[k]) differs = true;
  }
  return differs;
}

std::uint64_t skyline_score(std::span<const std::uint64_t> x, ScoreHeuristic h, const LogTable& table) {
  if (h == ScoreHeuristic::Aph) return aph_score(x, table);
  std::uint64_t s = 0;
  for (auto v : x) s = saturating_add(s, v);
  return s;
}

SkylineStore::SkylineStore(const SkylineConfig& config)
    : config_(config),
      table_(config.table ? config.table : &LogTable::standard()),
      scores_(config.w, 0),
      points_(config.w * config.dims, 0) {
  if (config.dims < 2) throw ConfigError("skyline needs at least 2 dimensions");
  if (config.w == 0) throw ConfigError("skyline needs w >= 1");
}

Decision SkylineStore::process(std::span<const std::uint64_t> x) {
  const std::size_t D = config_.dims;
  if (x.size() != D) {
    throw std::invalid_argument("skyline entry has " + std::to_string(x.size()) + " dimensions, expected " +
                                std::to_string(D));
  }
  std::uint64_t carry_score = plus_one(skyline_score(x, config_.heuristic, *table_));
  std::vector<std::uint64_t> carry(x.begin(), x.end());
  bool dominated = false;
  for (std::size_t i = 0; i < config_.w; ++i) {
    auto stored = std::span<std::uint64_t>(points_).subspan(i * D, D);
    if (scores_[i] != 0 && strictly_dominated(x, stored)) dominated = true;
    if (carry_score > scores_[i]) {
      std::swap(carry_score, scores_[i]);
      for (std::size_t k = 0; k < D; ++k) std::swap(carry[k], stored[k]);
    }
  }
  return dominated ? Decision::Prune : Decision::Forward;
}

}  // namespace netprune
