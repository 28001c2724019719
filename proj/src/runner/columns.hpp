#pragma once

// Column helpers shared by the master and the oracle.

#include <cstdint>
#include <string>
#include <vector>

#include "netprune/core/errors.hpp"
#include "netprune/core/query.hpp"
#include "netprune/runner/result.hpp"

namespace netprune::detail {

using Row = std::vector<Value>;

inline std::vector<std::size_t> indices(const Schema& schema, const std::string& table,
                                        const std::vector<std::string>& columns) {
  std::vector<std::size_t> out;
  out.reserve(columns.size());
  for (const auto& c : columns) out.push_back(resolve_column(schema, table, c));
  return out;
}

inline std::vector<std::size_t> all_columns(const Schema& schema) {
  std::vector<std::size_t> all(schema.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

/// Select-list indices; every column for '*'.
inline std::vector<std::size_t> projection(const QuerySpec& q, const Schema& schema, const std::string& table) {
  if (q.selects_all()) return all_columns(schema);
  return indices(schema, table, q.select);
}

inline Row pick(const Row& row, const std::vector<std::size_t>& idx) {
  Row out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(row[i]);
  return out;
}

inline std::uint64_t uint_at(const Row& row, std::size_t i, const std::string& column) {
  if (!row[i].is_uint()) throw SchemaError("column " + column + " must hold unsigned integers");
  return row[i].as_uint();
}

/// Where-clause truth for one row.
inline bool satisfies(const PredicateFormula& phi, const Schema& schema, const std::string& table, const Row& row) {
  return phi.evaluate([&](const Atom& a) { return a.evaluate(row[resolve_column(schema, table, a.column)]); });
}

/// Join output: select list over the concatenated left and right rows.
/// Qualified names pick their table; bare names try the left table first.
inline std::vector<std::size_t> join_projection(const QuerySpec& q, const Schema& left, const Schema& right) {
  std::vector<std::size_t> out;
  if (q.selects_all()) {
    for (std::size_t i = 0; i < left.size() + right.size(); ++i) out.push_back(i);
    return out;
  }
  for (const auto& c : q.select) {
    const auto dot = c.find('.');
    const bool qualified = dot != std::string::npos;
    const std::string prefix = qualified ? c.substr(0, dot) : std::string{};
    const bool right_only = qualified && prefix == q.join_table && prefix != q.table;
    if (!right_only) {
      try {
        out.push_back(resolve_column(left, q.table, c));
        continue;
      } catch (const SchemaError&) {
        if (qualified && prefix == q.table) throw;
      }
    }
    out.push_back(left.size() + resolve_column(right, q.join_table, c));
  }
  return out;
}

inline Row concat(const Row& a, const Row& b) {
  Row out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline std::string aggregate_name(const AggregateItem& a) {
  return std::string(to_string(a.fn)) + "(" + a.column + ")";
}

}  // namespace netprune::detail
