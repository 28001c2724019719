#include "netprune/algorithms/groupby.hpp"

#include <stdexcept>

#include "netprune/core/errors.hpp"

namespace netprune {

GroupBySketch::GroupBySketch(const GroupByConfig& config, IndexFn index)
    : config_(config), index_(std::move(index)), cells_(config.d * config.w) {
  if (config.d == 0 || config.w == 0) throw ConfigError("group-by sketch needs d >= 1 and w >= 1");
  for (std::size_t i = 0; i < config.w; ++i) hashes_.emplace_back(derive_seed(config.seed, 100 + i));
}

std::size_t GroupBySketch::index(std::size_t i, std::uint64_t key) const {
  const std::size_t j = index_ ? index_(i, key) : static_cast<std::size_t>(hashes_[i].range(key, config_.d));
  if (j >= config_.d) throw std::out_of_range("group-by index beyond d");
  return j;
}

Decision GroupBySketch::process(std::uint64_t key, std::uint64_t value) {
  if (key == UINT64_MAX) throw std::domain_error("key 2^64-1 is reserved");
  const std::uint64_t k = key + 1;
  std::uint64_t best = value;
  bool prune = false;
  for (std::size_t i = 0; i < config_.w; ++i) {
    Cell& c = cells_[i * config_.d + index(i, key)];
    if (c.key == k && better(c.value, value)) prune = true;
    if (c.key == k && better(c.value, best)) best = c.value;
    c = Cell{k, best};
  }
  return prune ? Decision::Prune : Decision::Forward;
}

}  // namespace netprune
