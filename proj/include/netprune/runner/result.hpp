#pragma once

#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netprune/core/dataset.hpp"
#include "netprune/core/query.hpp"

namespace netprune {

/// Named input tables of one query.
using Tables = std::map<std::string, Dataset>;

/// Table `name` of `tables`: exact match, then case-insensitive match, then
/// the only table when `name` is empty or there is a single table. Throws
/// SchemaError otherwise.
const Dataset& find_table(const Tables& tables, std::string_view name);

/// Index of `column` in `schema`, accepting a `table.` qualifier. Throws
/// SchemaError if absent.
std::size_t resolve_column(const Schema& schema, std::string_view table, std::string_view column);

/// Query output as a multiset of rows kept in canonical (sorted) order so
/// that equal multisets compare equal.
class QueryResult {
 public:
  QueryResult() = default;
  QueryResult(std::vector<std::string> columns, std::vector<std::vector<Value>> rows);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Value>>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  friend bool operator==(const QueryResult&, const QueryResult&) = default;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Value>> rows_;
};

/// Header line then one line per row, comma-separated.
void write_result(std::ostream& out, const QueryResult& r);

/// Rows that reached the master, with the schema of their table.
struct SurvivorRows {
  Schema schema;
  std::string table;
  std::vector<std::vector<Value>> rows;
};

/// Completes q exactly on survivors. `main` holds the rows of q.table (for
/// HAVING SUM/COUNT, the second-pass rows); `other` the rows of the joined
/// table. Any superset of the pruning survivors gives the same result.
/// Throws SchemaError when a required column is missing.
QueryResult master_complete(const QuerySpec& q, const SurvivorRows& main, const SurvivorRows* other = nullptr);

/// Brute-force answer of q over whole tables, sharing no evaluation code
/// with master_complete beyond predicate atoms and column lookup.
QueryResult oracle_execute(const QuerySpec& q, const Tables& tables);

/// Output column names of q over the given schemas.
std::vector<std::string> output_columns(const QuerySpec& q, const Schema& main, const Schema* other = nullptr);

}  // namespace netprune
