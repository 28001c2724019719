#pragma once

#include <cstdint>
#include <vector>

#include "netprune/algorithms/common.hpp"
#include "netprune/core/hash.hpp"

namespace netprune {

class BloomFilter {
 public:
  /// Throws ConfigError for zero bits or hashes.
  BloomFilter(std::uint64_t bits, unsigned hashes, std::uint64_t seed);

  void insert(std::uint64_t key);
  bool contains(std::uint64_t key) const;
  std::uint64_t position(unsigned i, std::uint64_t key) const noexcept { return hashes_[i].range(key, bits_); }

  std::uint64_t bits() const noexcept { return bits_; }
  unsigned hash_count() const noexcept { return static_cast<unsigned>(hashes_.size()); }
  bool bit(std::uint64_t i) const { return (words_.at(i / 64) >> (i % 64)) & 1U; }

  /// (1 - e^{-Hn/M})^H for n inserted keys.
  static double false_positive_bound(std::uint64_t bits, unsigned hashes, std::uint64_t n);

 private:
  std::uint64_t bits_;
  std::vector<SeededHash> hashes_;
  std::vector<std::uint64_t> words_;
};

struct JoinConfig {
  std::uint64_t bits = std::uint64_t{1} << 20;  // per filter
  unsigned hashes = 3;
  /// Stream the `build_side` table once, unpruned, building its filter; then
  /// one pruned pass of the other table.
  bool asymmetric = false;
  JoinSide build_side = JoinSide::A;
  std::uint64_t seed = 1;
};

/// Two-pass Bloom join. Pass 1 inserts each key into its side's filter and
/// absorbs the entry; pass 2 prunes an entry whose key the opposite filter
/// does not contain.
class JoinFilters {
 public:
  explicit JoinFilters(const JoinConfig& config);

  const JoinConfig& config() const noexcept { return config_; }

  /// Throws ProtocolError for an entry that does not fit the current phase.
  Decision process(std::uint64_t key, JoinSide side, int pass);

  void finish_pass1();
  bool pass1_complete() const noexcept { return pass1_done_; }

  const BloomFilter& filter(JoinSide side) const { return side == JoinSide::A ? a_ : b_; }

 private:
  JoinConfig config_;
  BloomFilter a_;
  BloomFilter b_;
  bool pass1_done_ = false;
};

}  // namespace netprune
