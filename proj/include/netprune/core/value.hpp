#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

namespace netprune {

enum class ValueKind : std::uint8_t { UInt, String };

/// Longest string accepted in a column, in bytes.
inline constexpr std::size_t kMaxStringBytes = 255;

const char* to_string(ValueKind kind) noexcept;

/// A column value: an unsigned 64-bit integer or a bounded UTF-8 string.
/// Integers order numerically, strings bytewise; any integer orders before
/// any string.
class Value {
 public:
  Value() = default;
  Value(std::uint64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Value(std::string s) : v_(std::move(s)) {}
  explicit Value(const char* s) : v_(std::string(s)) {}

  ValueKind kind() const noexcept { return v_.index() == 0 ? ValueKind::UInt : ValueKind::String; }
  bool is_uint() const noexcept { return v_.index() == 0; }
  bool is_string() const noexcept { return v_.index() == 1; }

  /// Throws std::invalid_argument on kind mismatch.
  std::uint64_t as_uint() const;
  const std::string& as_string() const;

  std::string to_string() const;

  friend bool operator==(const Value&, const Value&) = default;
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  std::variant<std::uint64_t, std::string> v_{std::uint64_t{0}};
};

}  // namespace netprune
