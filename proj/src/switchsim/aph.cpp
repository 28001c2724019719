#include "netprune/switchsim/aph.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace netprune {

void Tcam::add(Rule rule) {
  if (rules_.size() >= capacity_) throw std::length_error("TCAM full");
  rules_.push_back(rule);
}

std::optional<std::uint64_t> Tcam::lookup(std::uint64_t key) const noexcept {
  for (const Rule& r : rules_) {
    if ((key & r.mask) == (r.value & r.mask)) return r.action;
  }
  return std::nullopt;
}

LogTable::LogTable(std::uint64_t beta) : beta_(beta), table_(kLogTableSize, 0) {
  if (beta == 0) throw std::invalid_argument("beta must be positive");
  for (std::size_t a = 1; a < kLogTableSize; ++a) {
    const long double v = std::nearbyint(static_cast<long double>(beta) * std::log2(static_cast<long double>(a)));
    if (v > static_cast<long double>(std::numeric_limits<std::uint32_t>::max())) {
      throw std::invalid_argument("beta too large for 32-bit log table entries");
    }
    table_[a] = static_cast<std::uint32_t>(v);
  }
}

const LogTable& LogTable::standard() {
  static const LogTable t;
  return t;
}

Tcam make_msb_tcam() {
  Tcam t(64);
  for (int l = 63; l >= 0; --l) {
    const std::uint64_t bit = std::uint64_t{1} << l;
    // Bits above l must be zero and bit l must be one; lower bits are wild.
    const std::uint64_t mask = ~(bit - 1);
    t.add({bit, mask, static_cast<std::uint64_t>(l)});
  }
  return t;
}

unsigned msb_index(std::uint64_t z) {
  static const Tcam tcam = make_msb_tcam();
  if (z == 0) throw std::domain_error("msb of zero");
  return static_cast<unsigned>(*tcam.lookup(z));
}

std::uint64_t approx_log(std::uint64_t z, const LogTable& table) {
  const unsigned l = msb_index(z);
  if (l <= 15) return table[z];
  const unsigned shift = l - 15;
  return table[z >> shift] + table.beta() * shift;
}

std::uint64_t aph_score(std::span<const std::uint64_t> dims, const LogTable& table) {
  std::uint64_t s = 0;
  for (auto x : dims) s += approx_log(x == 0 ? 1 : x, table);
  return s;
}

}  // namespace netprune
