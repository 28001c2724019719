#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netprune/algorithms/common.hpp"
#include "netprune/core/predicate.hpp"

namespace netprune {

struct FilterSplit {
  PredicateFormula switch_part;  // only switch-supported atoms
  PredicateFormula residual;     // evaluated by the master on survivors
};

/// Replaces every unsupported atom with TRUE and simplifies
/// (x AND TRUE = x, x OR TRUE = TRUE). The residual is TRUE when nothing was
/// replaced and the original formula otherwise.
/// Throws std::invalid_argument for a non-monotone formula.
FilterSplit filter_decompose(const PredicateFormula& phi);

/// Compiled switch part: atom i compares packet value i against its
/// constant; the resulting bit vector indexes a truth table.
class FilterPruner {
 public:
  static constexpr std::size_t kMaxAtoms = 16;

  /// Throws ConfigError for unsupported atoms or more than kMaxAtoms atoms.
  explicit FilterPruner(const PredicateFormula& switch_part);

  std::size_t atom_count() const noexcept { return atoms_.size(); }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  /// Bit i of the result is atom i evaluated on values[i].
  std::uint32_t atom_bits(std::span<const std::uint64_t> values) const;
  bool truth(std::uint32_t bits) const { return table_.at(bits); }

  Decision process(std::span<const std::uint64_t> values) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<bool> table_;
};

bool evaluate_atom(const Atom& atom, std::uint64_t v);

}  // namespace netprune
