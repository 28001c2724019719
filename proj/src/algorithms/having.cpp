#include "netprune/algorithms/having.hpp"

#include <algorithm>

#include "netprune/core/errors.hpp"

namespace netprune {

CountMin::CountMin(std::size_t rows, std::size_t width, std::uint64_t seed) : width_(width) {
  if (rows == 0 || width == 0) throw ConfigError("Count-Min needs rows >= 1 and width >= 1");
  for (std::size_t i = 0; i < rows; ++i) hashes_.emplace_back(derive_seed(seed, 300 + i));
  counters_.assign(rows * width, 0);
}

void CountMin::add(std::uint64_t key, std::uint64_t amount) {
  for (std::size_t r = 0; r < hashes_.size(); ++r) {
    auto& c = counters_[r * width_ + column(r, key)];
    c = saturating_add(c, amount);
  }
}

std::uint64_t CountMin::estimate(std::uint64_t key) const {
  std::uint64_t est = UINT64_MAX;
  for (std::size_t r = 0; r < hashes_.size(); ++r) est = std::min(est, counters_[r * width_ + column(r, key)]);
  return est;
}

bool having_holds(CompareOp op, std::uint64_t value, std::uint64_t threshold) noexcept {
  switch (op) {
    case CompareOp::Less: return value < threshold;
    case CompareOp::LessEq: return value <= threshold;
    case CompareOp::Greater: return value > threshold;
    case CompareOp::GreaterEq: return value >= threshold;
    case CompareOp::Equal: return value == threshold;
  }
  return false;
}

HavingPruner::HavingPruner(const HavingConfig& config) : config_(config) {
  const bool lower = config.op == CompareOp::Less || config.op == CompareOp::LessEq;
  const bool upper = config.op == CompareOp::Greater || config.op == CompareOp::GreaterEq;
  const bool ok = config.fn == Aggregate::Min ? lower : upper;
  if (!ok) {
    throw UnsupportedError(std::string("HAVING ") + to_string(config.fn) + " " + to_string(config.op) +
                           " c has no safe pruning rule");
  }
  if (two_pass()) {
    sketch_.emplace(config.cm_rows, config.cm_width, config.seed);
  } else {
    cache_.emplace(config.cache);
  }
}

void HavingPruner::finish_pass1() {
  if (!two_pass()) throw ProtocolError("HAVING MIN/MAX is single-pass");
  if (pass1_done_) throw ProtocolError("HAVING pass 1 finished twice");
  pass1_done_ = true;
}

Decision HavingPruner::process(std::uint64_t key, std::uint64_t value, std::uint32_t seq, int pass) {
  if (!two_pass()) {
    if (pass != 1) throw ProtocolError("HAVING MIN/MAX is single-pass");
    if (!having_holds(config_.op, value, config_.threshold)) return Decision::Prune;
    return cache_->process(key, seq);
  }
  if (pass == 1) {
    if (pass1_done_) throw ProtocolError("HAVING pass-1 entry after the pass-1 barrier");
    sketch_->add(key, config_.fn == Aggregate::Count ? 1 : value);
    return having_holds(config_.op, sketch_->estimate(key), config_.threshold) ? Decision::Forward : Decision::Prune;
  }
  if (pass != 2) throw ProtocolError("HAVING pass must be 1 or 2");
  if (!pass1_done_) throw ProtocolError("HAVING pass-2 entry before the pass-1 barrier");
  return having_holds(config_.op, sketch_->estimate(key), config_.threshold) ? Decision::Forward : Decision::Prune;
}

}  // namespace netprune
