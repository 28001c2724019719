#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netprune/core/value.hpp"

namespace netprune {

enum class CompareOp : std::uint8_t { Less, LessEq, Greater, GreaterEq, Equal };

const char* to_string(CompareOp op) noexcept;
bool compare(const Value& lhs, CompareOp op, const Value& rhs);

/// SQL LIKE with '%' (any run) and '_' (any single byte).
bool like_match(std::string_view text, std::string_view pattern);

/// Atomic predicate. Only integer comparisons can be evaluated by the switch;
/// string comparisons and LIKE are host-side only.
struct Atom {
  enum class Kind : std::uint8_t { Compare, Like };

  Kind kind = Kind::Compare;
  std::string column;
  CompareOp op = CompareOp::Equal;
  Value constant;
  std::string pattern;  // Like only

  bool switch_supported() const noexcept { return kind == Kind::Compare && constant.is_uint(); }
  bool evaluate(const Value& v) const;
  std::string render() const;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Boolean formula over atoms. The parser only produces monotone formulas
/// (AND/OR); Not exists so callers can express, and be refused, negation.
class PredicateFormula {
 public:
  enum class Node : std::uint8_t { True, Leaf, And, Or, Not };

  PredicateFormula() = default;  // TRUE

  static PredicateFormula truth() { return {}; }
  static PredicateFormula leaf(Atom atom);
  /// Zero children gives TRUE, one child gives that child.
  static PredicateFormula all_of(std::vector<PredicateFormula> children);
  static PredicateFormula any_of(std::vector<PredicateFormula> children);
  static PredicateFormula negate(PredicateFormula child);

  Node node() const noexcept { return node_; }
  bool is_true() const noexcept { return node_ == Node::True; }
  const Atom& atom() const { return atom_; }
  std::span<const PredicateFormula> children() const noexcept { return children_; }

  bool is_monotone() const noexcept;
  bool all_atoms_supported() const noexcept;

  /// Atoms in depth-first, left-to-right order.
  std::vector<const Atom*> atoms() const;

  /// Evaluates with `leaf_value(atom)` supplying each atom's truth value.
  bool evaluate(const std::function<bool(const Atom&)>& leaf_value) const;

  /// Canonical text; compound nodes are always parenthesised.
  std::string render() const;

  friend bool operator==(const PredicateFormula&, const PredicateFormula&) = default;

 private:
  Node node_ = Node::True;
  Atom atom_;
  std::vector<PredicateFormula> children_;
};

}  // namespace netprune
