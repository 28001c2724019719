#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

namespace netprune {

/// Capacities of the target switch. Every register array may be
/// read-modify-written once per packet; the ALUs of one stage may share that
/// stage's memory.
struct SwitchProfile {
  std::size_t stages = 32;
  std::size_t alus_per_stage = 4;
  std::uint64_t sram_bits_per_stage = std::uint64_t{1} << 26;
  std::size_t tcam_entries = 2048;

  friend bool operator==(const SwitchProfile&, const SwitchProfile&) = default;
};

/// Parses key=value lines, optionally under a [switch] section. Keys:
/// stages, alus_per_stage, sram_bits_per_stage, tcam_entries; missing keys
/// keep their defaults. Throws ParseError for malformed text or unknown keys.
SwitchProfile parse_profile(std::string_view text);

/// Throws std::runtime_error if the file cannot be read.
SwitchProfile load_profile(const std::filesystem::path& path);

}  // namespace netprune
