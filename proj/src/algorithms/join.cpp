#include "netprune/algorithms/join.hpp"

#include <cmath>

#include "netprune/core/errors.hpp"

namespace netprune {

BloomFilter::BloomFilter(std::uint64_t bits, unsigned hashes, std::uint64_t seed) : bits_(bits) {
  if (bits == 0 || hashes == 0) throw ConfigError("Bloom filter needs M >= 1 bits and H >= 1 hashes");
  for (unsigned i = 0; i < hashes; ++i) hashes_.emplace_back(derive_seed(seed, 200 + i));
  words_.assign((bits + 63) / 64, 0);
}

void BloomFilter::insert(std::uint64_t key) {
  for (unsigned i = 0; i < hashes_.size(); ++i) {
    const auto p = position(i, key);
    words_[p / 64] |= std::uint64_t{1} << (p % 64);
  }
}

bool BloomFilter::contains(std::uint64_t key) const {
  for (unsigned i = 0; i < hashes_.size(); ++i) {
    if (!bit(position(i, key))) return false;
  }
  return true;
}

double BloomFilter::false_positive_bound(std::uint64_t bits, unsigned hashes, std::uint64_t n) {
  const double h = hashes;
  return std::pow(1.0 - std::exp(-h * static_cast<double>(n) / static_cast<double>(bits)), h);
}

JoinFilters::JoinFilters(const JoinConfig& config)
    : config_(config),
      a_(config.bits, config.hashes, derive_seed(config.seed, 1)),
      b_(config.bits, config.hashes, derive_seed(config.seed, 2)) {}

void JoinFilters::finish_pass1() {
  if (pass1_done_) throw ProtocolError("join pass 1 finished twice");
  pass1_done_ = true;
}

Decision JoinFilters::process(std::uint64_t key, JoinSide side, int pass) {
  if (pass != 1 && pass != 2) throw ProtocolError("join pass must be 1 or 2");
  if (pass == 1 && pass1_done_) throw ProtocolError("join pass-1 entry after the pass-1 barrier");
  if (pass == 2 && !pass1_done_) throw ProtocolError("join pass-2 entry before the pass-1 barrier");
  BloomFilter& own = side == JoinSide::A ? a_ : b_;
  const BloomFilter& other = side == JoinSide::A ? b_ : a_;

  if (config_.asymmetric) {
    const bool build = side == config_.build_side;
    if (build != (pass == 1)) {
      throw ProtocolError("asymmetric join streams the build side in pass 1 and the probe side in pass 2");
    }
    if (build) {
      own.insert(key);
      return Decision::Forward;
    }
    return other.contains(key) ? Decision::Forward : Decision::Prune;
  }

  if (pass == 1) {
    own.insert(key);
    return Decision::Prune;
  }
  return other.contains(key) ? Decision::Forward : Decision::Prune;
}

}  // namespace netprune
