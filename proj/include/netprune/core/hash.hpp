#pragma once

#include <cstdint>
#include <string_view>

namespace netprune {

__extension__ using uint128_t = unsigned __int128;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent sub-seed `index` of a master seed.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// FNV-1a over bytes; used only to reduce strings to 64 bits before a seeded
/// hash is applied.
inline constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Multiply-add-shift hash h(x) = ((A*x + B) mod 2^128) >> 64 with 128-bit
/// A, B derived from a seed (strongly universal for 64-bit keys). `range`
/// maps onto [0, n) by the high half of h(x)*n.
class SeededHash {
 public:
  SeededHash() : SeededHash(0) {}
  explicit SeededHash(std::uint64_t seed) noexcept
      : a_(wide(splitmix64(seed), splitmix64(seed + 1))), b_(wide(splitmix64(seed + 2), splitmix64(seed + 3))) {}

  std::uint64_t operator()(std::uint64_t x) const noexcept { return static_cast<std::uint64_t>((a_ * x + b_) >> 64); }

  std::uint64_t range(std::uint64_t x, std::uint64_t n) const noexcept {
    return static_cast<std::uint64_t>((static_cast<uint128_t>((*this)(x)) * n) >> 64);
  }

  friend bool operator==(const SeededHash&, const SeededHash&) = default;

 private:
  static constexpr uint128_t wide(std::uint64_t hi, std::uint64_t lo) noexcept {
    return (static_cast<uint128_t>(hi) << 64) | lo;
  }

  uint128_t a_;
  uint128_t b_;
};

}  // namespace netprune
