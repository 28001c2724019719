#include "netprune/core/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace netprune {
namespace {

Dataset with_fresh_ids(Schema schema, std::vector<Entry> rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].id = static_cast<std::uint32_t>(i + 1);
  return Dataset(std::move(schema), std::move(rows));
}

}  // namespace

Dataset gen_stream(const StreamParams& p) {
  if (p.distinct > p.n) throw std::invalid_argument("distinct exceeds n");
  if (p.n > 0 && p.distinct == 0) throw std::invalid_argument("distinct must be positive for non-empty stream");
  if (p.value_min > p.value_max) throw std::invalid_argument("empty value range");

  std::mt19937_64 rng(p.seed);
  std::uniform_int_distribution<std::uint64_t> value_dist(p.value_min, p.value_max);

  // Key labels are a random injection into [0, 2^40) so that key order carries
  // no information about frequency rank.
  std::vector<std::uint64_t> labels;
  labels.reserve(p.distinct);
  {
    std::unordered_set<std::uint64_t> seen;
    std::uniform_int_distribution<std::uint64_t> label_dist(0, (std::uint64_t{1} << 40) - 1);
    while (labels.size() < p.distinct) {
      const auto k = label_dist(rng);
      if (seen.insert(k).second) labels.push_back(k);
    }
  }

  std::vector<std::size_t> keys(p.n);
  for (std::size_t i = 0; i < p.distinct; ++i) keys[i] = i;
  if (p.n > p.distinct) {
    if (p.key_dist == KeyDistribution::Uniform) {
      std::uniform_int_distribution<std::size_t> rank(0, p.distinct - 1);
      for (std::size_t i = p.distinct; i < p.n; ++i) keys[i] = rank(rng);
    } else {
      std::vector<double> weights(p.distinct);
      for (std::size_t r = 0; r < p.distinct; ++r) weights[r] = 1.0 / std::pow(static_cast<double>(r + 1), p.zipf_s);
      std::discrete_distribution<std::size_t> rank(weights.begin(), weights.end());
      for (std::size_t i = p.distinct; i < p.n; ++i) keys[i] = rank(rng);
    }
  }
  std::shuffle(keys.begin(), keys.end(), rng);

  Schema schema{{"key", ValueKind::UInt}, {"value", ValueKind::UInt}};
  std::vector<Entry> rows;
  rows.reserve(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    rows.push_back(Entry{0, {Value(labels[keys[i]]), Value(value_dist(rng))}});
  }
  return with_fresh_ids(std::move(schema), std::move(rows));
}

Dataset gen_points(std::size_t n, std::size_t dims, std::uint64_t max_coord, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> coord(0, max_coord);
  Schema schema{{"id", ValueKind::UInt}};
  for (std::size_t d = 0; d < dims; ++d) schema.push_back({"d" + std::to_string(d + 1), ValueKind::UInt});
  std::vector<Entry> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Entry e;
    e.columns.reserve(dims + 1);
    e.columns.emplace_back(static_cast<std::uint64_t>(i + 1));
    for (std::size_t d = 0; d < dims; ++d) e.columns.emplace_back(coord(rng));
    rows.push_back(std::move(e));
  }
  return with_fresh_ids(std::move(schema), std::move(rows));
}

JoinTables gen_join_tables(std::size_t left_rows, std::size_t right_rows, double overlap, std::uint64_t seed) {
  if (overlap < 0.0 || overlap > 1.0) throw std::invalid_argument("overlap must lie in [0,1]");
  const auto shared = static_cast<std::size_t>(std::llround(overlap * static_cast<double>(right_rows)));
  if (shared > left_rows) throw std::invalid_argument("overlap needs more left rows");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> key_dist(0, (std::uint64_t{1} << 40) - 1);
  std::uniform_int_distribution<std::uint64_t> payload(0, 1'000'000);
  std::unordered_set<std::uint64_t> used;
  auto fresh = [&] {
    for (;;) {
      const auto k = key_dist(rng);
      if (used.insert(k).second) return k;
    }
  };

  std::vector<std::uint64_t> left_keys(left_rows);
  for (auto& k : left_keys) k = fresh();
  std::vector<std::uint64_t> right_keys;
  right_keys.reserve(right_rows);
  std::vector<std::size_t> pick(left_rows);
  std::iota(pick.begin(), pick.end(), 0);
  std::shuffle(pick.begin(), pick.end(), rng);
  for (std::size_t i = 0; i < shared; ++i) right_keys.push_back(left_keys[pick[i]]);
  while (right_keys.size() < right_rows) right_keys.push_back(fresh());
  std::shuffle(right_keys.begin(), right_keys.end(), rng);

  Schema schema{{"key", ValueKind::UInt}, {"payload", ValueKind::UInt}};
  auto build = [&](const std::vector<std::uint64_t>& keys) {
    std::vector<Entry> rows;
    rows.reserve(keys.size());
    for (auto k : keys) rows.push_back(Entry{0, {Value(k), Value(payload(rng))}});
    return with_fresh_ids(schema, std::move(rows));
  };
  Dataset left = build(left_keys);
  Dataset right = build(right_keys);
  return JoinTables{std::move(left), std::move(right)};
}

Dataset shuffle(const Dataset& data, std::uint64_t seed) {
  std::vector<Entry> rows(data.rows().begin(), data.rows().end());
  std::mt19937_64 rng(seed);
  std::shuffle(rows.begin(), rows.end(), rng);
  return with_fresh_ids(data.schema(), std::move(rows));
}

}  // namespace netprune
