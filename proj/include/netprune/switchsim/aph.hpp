#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netprune/switchsim/tcam.hpp"

namespace netprune {

inline constexpr std::uint64_t kDefaultBeta = std::uint64_t{1} << 28;
inline constexpr std::size_t kLogTableSize = std::size_t{1} << 16;

/// Fixed-point log table: entry a holds round(beta * log2(a)) as 32 bits;
/// entry 0 is unused and holds 0.
class LogTable {
 public:
  /// Throws std::invalid_argument if an entry would not fit in 32 bits.
  explicit LogTable(std::uint64_t beta = kDefaultBeta);

  std::uint64_t beta() const noexcept { return beta_; }
  std::uint32_t operator[](std::size_t a) const { return table_.at(a); }
  std::size_t size() const noexcept { return table_.size(); }

  /// Shared instance with the default scale.
  static const LogTable& standard();

 private:
  std::uint64_t beta_;
  std::vector<std::uint32_t> table_;
};

/// The 64 most-significant-bit rules; rule l matches keys whose highest set
/// bit is l and yields action l.
Tcam make_msb_tcam();

/// floor(log2 z) by one lookup in the MSB TCAM. Throws std::domain_error for 0.
unsigned msb_index(std::uint64_t z);

/// beta * log2(z) from the 16-bit window starting at the MSB of z.
/// Throws std::domain_error for 0.
std::uint64_t approx_log(std::uint64_t z, const LogTable& table);

/// Sum of approx_log over the coordinates, with 0 read as 1.
std::uint64_t aph_score(std::span<const std::uint64_t> dims, const LogTable& table);

}  // namespace netprune
