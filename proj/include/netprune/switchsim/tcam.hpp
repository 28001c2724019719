#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace netprune {

/// Ternary match table over 64-bit keys. A rule matches when
/// (key & mask) == (value & mask); the first matching rule in insertion order
/// wins, so callers insert in priority order.
class Tcam {
 public:
  struct Rule {
    std::uint64_t value = 0;
    std::uint64_t mask = 0;
    std::uint64_t action = 0;
  };

  explicit Tcam(std::size_t capacity) : capacity_(capacity) {}

  /// Throws std::length_error when the table is full.
  void add(Rule rule);

  std::optional<std::uint64_t> lookup(std::uint64_t key) const noexcept;

  std::size_t size() const noexcept { return rules_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }

 private:
  std::size_t capacity_;
  std::vector<Rule> rules_;
};

}  // namespace netprune
