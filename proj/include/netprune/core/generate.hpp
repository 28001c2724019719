#pragma once

#include <cstddef>
#include <cstdint>

#include "netprune/core/dataset.hpp"

namespace netprune {

enum class KeyDistribution : std::uint8_t { Uniform, Zipf };

struct StreamParams {
  std::size_t n = 0;
  std::size_t distinct = 0;
  KeyDistribution key_dist = KeyDistribution::Uniform;
  double zipf_s = 1.1;
  std::uint64_t value_min = 0;
  std::uint64_t value_max = 1'000'000;
  std::uint64_t seed = 1;
};

/// Random-order stream with schema (key:UInt, value:UInt). The key column
/// holds exactly `distinct` distinct values: each key appears once, the
/// remaining n - distinct rows draw keys from `key_dist`, and the whole
/// stream is then uniformly shuffled. Deterministic in `seed`.
/// Throws std::invalid_argument if distinct > n, distinct == 0 < n, or the
/// value range is empty.
Dataset gen_stream(const StreamParams& params);

/// n points with `dims` UInt columns named d1..dD, plus a leading `id` column
/// holding the entry id. Coordinates uniform in [0, max_coord].
Dataset gen_points(std::size_t n, std::size_t dims, std::uint64_t max_coord, std::uint64_t seed);

struct JoinTables {
  Dataset left;
  Dataset right;
};

/// Two tables keyed on column `key`: left has `left_rows` distinct keys,
/// right has `right_rows` distinct keys, of which round(overlap * right_rows)
/// also occur in left. Each table also carries a `payload` UInt column.
JoinTables gen_join_tables(std::size_t left_rows, std::size_t right_rows, double overlap,
                           std::uint64_t seed);

/// Uniform random permutation of rows; entry ids reassigned 1..n in the new
/// order. Deterministic in `seed`.
Dataset shuffle(const Dataset& data, std::uint64_t seed);

}  // namespace netprune
