#include "netprune/algorithms/filter.hpp"

#include <stdexcept>
#include <unordered_map>

#include "netprune/core/errors.hpp"

namespace netprune {
namespace {

PredicateFormula strip_unsupported(const PredicateFormula& f) {
  switch (f.node()) {
    case PredicateFormula::Node::True: return f;
    case PredicateFormula::Node::Leaf: return f.atom().switch_supported() ? f : PredicateFormula::truth();
    case PredicateFormula::Node::And: {
      std::vector<PredicateFormula> kept;
      for (const auto& c : f.children()) {
        auto s = strip_unsupported(c);
        if (!s.is_true()) kept.push_back(std::move(s));
      }
      return PredicateFormula::all_of(std::move(kept));
    }
    case PredicateFormula::Node::Or: {
      std::vector<PredicateFormula> kept;
      for (const auto& c : f.children()) {
        auto s = strip_unsupported(c);
        if (s.is_true()) return PredicateFormula::truth();
        kept.push_back(std::move(s));
      }
      return PredicateFormula::any_of(std::move(kept));
    }
    case PredicateFormula::Node::Not: break;
  }
  throw std::invalid_argument("negation in a pruning formula");
}

}  // namespace

FilterSplit filter_decompose(const PredicateFormula& phi) {
  if (!phi.is_monotone()) throw std::invalid_argument("filter formula is not monotone: " + phi.render());
  if (phi.all_atoms_supported()) return {phi, PredicateFormula::truth()};
  return {strip_unsupported(phi), phi};
}

bool evaluate_atom(const Atom& atom, std::uint64_t v) {
  const std::uint64_t c = atom.constant.as_uint();
  switch (atom.op) {
    case CompareOp::Less: return v < c;
    case CompareOp::LessEq: return v <= c;
    case CompareOp::Greater: return v > c;
    case CompareOp::GreaterEq: return v >= c;
    case CompareOp::Equal: return v == c;
  }
  return false;
}

FilterPruner::FilterPruner(const PredicateFormula& switch_part) {
  if (!switch_part.is_monotone()) throw ConfigError("switch predicate is not monotone");
  const auto atoms = switch_part.atoms();
  if (atoms.size() > kMaxAtoms) {
    throw ConfigError("switch predicate has " + std::to_string(atoms.size()) + " atoms; at most " +
                      std::to_string(kMaxAtoms) + " fit the truth table");
  }
  std::unordered_map<const Atom*, std::size_t> index;
  for (const Atom* a : atoms) {
    if (!a->switch_supported()) throw ConfigError("atom not evaluable on the switch: " + a->render());
    index.emplace(a, atoms_.size());
    atoms_.push_back(*a);
  }
  table_.resize(std::size_t{1} << atoms_.size());
  for (std::uint32_t bits = 0; bits < table_.size(); ++bits) {
    table_[bits] = switch_part.evaluate([&](const Atom& a) { return ((bits >> index.at(&a)) & 1U) != 0; });
  }
}

std::uint32_t FilterPruner::atom_bits(std::span<const std::uint64_t> values) const {
  if (values.size() < atoms_.size()) throw std::invalid_argument("filter packet carries too few values");
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (evaluate_atom(atoms_[i], values[i])) bits |= 1U << i;
  }
  return bits;
}

Decision FilterPruner::process(std::span<const std::uint64_t> values) const {
  return truth(atom_bits(values)) ? Decision::Forward : Decision::Prune;
}

}  // namespace netprune
