#include "netprune/core/predicate.hpp"

#include <stdexcept>

namespace netprune {

const char* to_string(CompareOp op) noexcept {
  switch (op) {
    case CompareOp::Less: return "<";
    case CompareOp::LessEq: return "<=";
    case CompareOp::Greater: return ">";
    case CompareOp::GreaterEq: return ">=";
    case CompareOp::Equal: return "=";
  }
  return "?";
}

bool compare(const Value& lhs, CompareOp op, const Value& rhs) {
  if (lhs.kind() != rhs.kind()) {
    throw std::invalid_argument("cannot compare " + std::string(to_string(lhs.kind())) + " with " +
                                to_string(rhs.kind()));
  }
  switch (op) {
    case CompareOp::Less: return lhs < rhs;
    case CompareOp::LessEq: return lhs <= rhs;
    case CompareOp::Greater: return lhs > rhs;
    case CompareOp::GreaterEq: return lhs >= rhs;
    case CompareOp::Equal: return lhs == rhs;
  }
  return false;
}

bool like_match(std::string_view text, std::string_view pattern) {
  // Iterative wildcard match with single-star backtracking.
  std::size_t t = 0, p = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '_' || pattern[p] == text[t])) {
      ++t;
      ++p;
    } else if (p < pattern.size() && pattern[p] == '%') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '%') ++p;
  return p == pattern.size();
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

}  // namespace

bool Atom::evaluate(const Value& v) const {
  if (kind == Kind::Like) {
    if (!v.is_string()) throw std::invalid_argument("LIKE on non-string column " + column);
    return like_match(v.as_string(), pattern);
  }
  return compare(v, op, constant);
}

std::string Atom::render() const {
  if (kind == Kind::Like) return column + " LIKE " + quote(pattern);
  return column + " " + to_string(op) + " " + (constant.is_uint() ? constant.to_string() : quote(constant.as_string()));
}

PredicateFormula PredicateFormula::leaf(Atom atom) {
  PredicateFormula f;
  f.node_ = Node::Leaf;
  f.atom_ = std::move(atom);
  return f;
}

PredicateFormula PredicateFormula::all_of(std::vector<PredicateFormula> children) {
  if (children.empty()) return truth();
  if (children.size() == 1) return std::move(children.front());
  PredicateFormula f;
  f.node_ = Node::And;
  f.children_ = std::move(children);
  return f;
}

PredicateFormula PredicateFormula::any_of(std::vector<PredicateFormula> children) {
  if (children.empty()) return truth();
  if (children.size() == 1) return std::move(children.front());
  PredicateFormula f;
  f.node_ = Node::Or;
  f.children_ = std::move(children);
  return f;
}

PredicateFormula PredicateFormula::negate(PredicateFormula child) {
  PredicateFormula f;
  f.node_ = Node::Not;
  f.children_.push_back(std::move(child));
  return f;
}

bool PredicateFormula::is_monotone() const noexcept {
  if (node_ == Node::Not) return false;
  for (const auto& c : children_) {
    if (!c.is_monotone()) return false;
  }
  return true;
}

bool PredicateFormula::all_atoms_supported() const noexcept {
  if (node_ == Node::Leaf) return atom_.switch_supported();
  for (const auto& c : children_) {
    if (!c.all_atoms_supported()) return false;
  }
  return true;
}

std::vector<const Atom*> PredicateFormula::atoms() const {
  std::vector<const Atom*> out;
  auto walk = [&out](const PredicateFormula& f, auto& self) -> void {
    if (f.node_ == Node::Leaf) out.push_back(&f.atom_);
    for (const auto& c : f.children_) self(c, self);
  };
  walk(*this, walk);
  return out;
}

bool PredicateFormula::evaluate(const std::function<bool(const Atom&)>& leaf_value) const {
  switch (node_) {
    case Node::True: return true;
    case Node::Leaf: return leaf_value(atom_);
    case Node::Not: return !children_.front().evaluate(leaf_value);
    case Node::And:
      for (const auto& c : children_) {
        if (!c.evaluate(leaf_value)) return false;
      }
      return true;
    case Node::Or:
      for (const auto& c : children_) {
        if (c.evaluate(leaf_value)) return true;
      }
      return false;
  }
  return false;
}

std::string PredicateFormula::render() const {
  switch (node_) {
    case Node::True: return "TRUE";
    case Node::Leaf: return atom_.render();
    case Node::Not: return "(NOT " + children_.front().render() + ")";
    case Node::And:
    case Node::Or: {
      const char* sep = node_ == Node::And ? " AND " : " OR ";
      std::string out = "(";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) out += sep;
        out += children_[i].render();
      }
      return out + ")";
    }
  }
  return {};
}

}  // namespace netprune
