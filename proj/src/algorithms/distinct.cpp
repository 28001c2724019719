#include "netprune/algorithms/distinct.hpp"

#include <algorithm>
#include <stdexcept>

#include "netprune/core/errors.hpp"

namespace netprune {

const char* to_string(ReplacementPolicy p) noexcept { return p == ReplacementPolicy::Lru ? "lru" : "fifo"; }

void validate(const DistinctConfig& c) {
  if (c.d == 0 || c.w == 0) throw ConfigError("distinct cache needs d >= 1 and w >= 1");
  if (c.fingerprint_bits > 64) throw ConfigError("fingerprints are at most 64 bits");
  if (c.policy == ReplacementPolicy::Fifo && c.group_width == 0) throw ConfigError("FIFO group width must be >= 1");
}

MatrixCache::MatrixCache(const DistinctConfig& config)
    : config_(config),
      row_hash_(derive_seed(config.seed, 0)),
      fp_hash_(derive_seed(config.seed, 1)),
      cells_((validate(config), config.d * config.w), 0) {}

std::uint64_t MatrixCache::fingerprint(std::uint64_t key) const {
  const unsigned f = config_.fingerprint_bits;
  if (f == 0) {
    if (key == UINT64_MAX) throw std::domain_error("key 2^64-1 is reserved in exact mode");
    return key + 1;
  }
  const std::uint64_t h = fp_hash_(key);
  const std::uint64_t fp = f == 64 ? h : h >> (64 - f);
  return fp == 0 ? 1 : fp;
}

Decision MatrixCache::process(std::uint64_t key, std::uint32_t seq) {
  const std::uint64_t fp = fingerprint(key);
  const auto row = cells_.begin() + static_cast<std::ptrdiff_t>(row_of(key) * config_.w);
  const auto end = row + static_cast<std::ptrdiff_t>(config_.w);
  const auto hit = std::find(row, end, fp);

  if (config_.policy == ReplacementPolicy::Lru) {
    if (hit != end) {
      std::rotate(row, hit, hit + 1);
      return Decision::Prune;
    }
    std::rotate(row, end - 1, end);
    *row = fp;
    return Decision::Forward;
  }

  const std::size_t col = (seq == 0 ? 0 : seq - 1) % config_.w;
  const std::size_t group_end = std::min(config_.w, (col / config_.group_width + 1) * config_.group_width);
  const auto first_hit = static_cast<std::size_t>(hit - row);
  if (first_hit >= group_end) row[static_cast<std::ptrdiff_t>(col)] = fp;
  return hit != end ? Decision::Prune : Decision::Forward;
}

}  // namespace netprune
