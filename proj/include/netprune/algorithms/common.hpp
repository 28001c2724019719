#pragma once

#include <cstdint>
#include <span>

namespace netprune {

enum class Decision : std::uint8_t { Forward, Prune };

inline const char* to_string(Decision d) noexcept { return d == Decision::Prune ? "prune" : "forward"; }

/// The switch-visible part of one entry: its sequence number within the flow
/// and the 64-bit values the worker placed in the packet.
struct EntryView {
  std::uint32_t seq = 0;
  std::span<const std::uint64_t> values;
};

enum class JoinSide : std::uint8_t { A, B };

/// What a flow carries for a query: which table (joins) and which pass
/// (two-pass queries). Single-pass queries use pass 1.
struct FlowRole {
  JoinSide side = JoinSide::A;
  std::uint8_t pass = 1;

  friend bool operator==(const FlowRole&, const FlowRole&) = default;
};

/// Saturating x+1, the stored form of values whose cell sentinel is 0.
inline constexpr std::uint64_t plus_one(std::uint64_t x) noexcept { return x == UINT64_MAX ? x : x + 1; }

inline constexpr std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) noexcept {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

}  // namespace netprune
