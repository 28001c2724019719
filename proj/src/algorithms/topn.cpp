#include "netprune/algorithms/topn.hpp"

#include <cmath>
#include <numbers>

#include "netprune/core/errors.hpp"
#include "netprune/core/hash.hpp"

namespace netprune {

std::uint64_t topn_threshold(std::uint64_t t0, std::size_t i) noexcept {
  const std::uint64_t base = t0 == 0 ? 1 : t0;
  if (i >= 64 || base > (UINT64_MAX >> i)) return UINT64_MAX;
  return base << i;
}

TopNDet::TopNDet(const TopNDetConfig& config) : config_(config), counters_(config.w, 0) {
  if (config.n == 0) throw ConfigError("TOP N needs N >= 1");
}

std::uint64_t TopNDet::threshold(std::size_t i) const {
  if (i > config_.w) throw std::out_of_range("threshold index beyond w");
  return i == 0 ? t0_ : topn_threshold(t0_, i);
}

int TopNDet::active_index() const noexcept {
  if (warming_up()) return -1;
  int active = 0;
  for (std::size_t i = 0; i < counters_.size(); ++i) {
    if (counters_[i] >= config_.n) active = static_cast<int>(i + 1);
  }
  return active;
}

Decision TopNDet::process(std::uint64_t v) {
  if (warming_up()) {
    ++seen_;
    if (v < t0_) t0_ = v;
    return Decision::Forward;
  }
  bool prune = v < t0_;
  for (std::size_t i = 0; i < counters_.size(); ++i) {
    const std::uint64_t t = topn_threshold(t0_, i + 1);
    if (counters_[i] >= config_.n && v < t) prune = true;
    if (v >= t) ++counters_[i];
  }
  return prune ? Decision::Prune : Decision::Forward;
}

std::size_t topn_random_row(std::uint64_t seed, std::uint32_t seq, std::size_t d) noexcept {
  return static_cast<std::size_t>(SeededHash(seed).range(seq, d));
}

TopNRand::TopNRand(const TopNRandConfig& config, RowSource rows)
    : config_(config), rows_(std::move(rows)), cells_(config.d * config.w, 0) {
  if (config.d == 0 || config.w == 0) throw ConfigError("randomized TOP N needs d >= 1 and w >= 1");
  if (config.n > 0 && config.delta > 0.0) {
    const double need = static_cast<double>(config.n) * std::numbers::e / std::log(1.0 / config.delta);
    if (static_cast<double>(config.d) < need) {
      throw ConfigError("d >= N*e/ln(1/delta) violated: d = " + std::to_string(config.d) + " < " +
                        std::to_string(need));
    }
  }
}

std::size_t TopNRand::row_for(std::uint32_t seq) const {
  const std::size_t r = rows_ ? rows_(seq) : topn_random_row(config_.seed, seq, config_.d);
  if (r >= config_.d) throw std::out_of_range("row source returned a row beyond d");
  return r;
}

Decision TopNRand::process(std::uint64_t v, std::uint32_t seq) {
  const std::uint64_t e = plus_one(v);
  auto* row = &cells_[row_for(seq) * config_.w];
  bool below_all = true;
  std::uint64_t carry = e;
  for (std::size_t j = 0; j < config_.w; ++j) {
    if (!(e < row[j])) below_all = false;
    if (carry > row[j]) std::swap(carry, row[j]);
  }
  return below_all ? Decision::Prune : Decision::Forward;
}

}  // namespace netprune
