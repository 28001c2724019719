#include "netprune/core/value.hpp"

#include <stdexcept>

namespace netprune {

const char* to_string(ValueKind kind) noexcept {
  return kind == ValueKind::UInt ? "uint" : "string";
}

std::uint64_t Value::as_uint() const {
  if (const auto* v = std::get_if<std::uint64_t>(&v_)) return *v;
  throw std::invalid_argument("value is a string, not an integer: " + std::get<std::string>(v_));
}

const std::string& Value::as_string() const {
  if (const auto* s = std::get_if<std::string>(&v_)) return *s;
  throw std::invalid_argument("value is an integer, not a string");
}

std::string Value::to_string() const {
  if (is_uint()) return std::to_string(std::get<std::uint64_t>(v_));
  return std::get<std::string>(v_);
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.v_.index() != b.v_.index()) return a.v_.index() <=> b.v_.index();
  if (a.is_uint()) return std::get<std::uint64_t>(a.v_) <=> std::get<std::uint64_t>(b.v_);
  const int c = std::get<std::string>(a.v_).compare(std::get<std::string>(b.v_));
  return c <=> 0;
}

}  // namespace netprune
