#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netprune/core/predicate.hpp"

namespace netprune {

enum class QueryKind : std::uint8_t { Filter, Distinct, TopN, Skyline, GroupByMaxMin, Join, Having };
enum class Aggregate : std::uint8_t { Min, Max, Sum, Count };
enum class ScoreHeuristic : std::uint8_t { Sum, Aph };

const char* to_string(QueryKind kind) noexcept;
const char* to_string(Aggregate fn) noexcept;
const char* to_string(ScoreHeuristic h) noexcept;

struct Guarantee {
  bool probabilistic = false;
  double delta = 0.0;

  static Guarantee deterministic() { return {}; }
  static Guarantee with_probability(double delta) { return {true, delta}; }

  friend bool operator==(const Guarantee&, const Guarantee&) = default;
};

struct AggregateItem {
  Aggregate fn = Aggregate::Max;
  std::string column;  // empty for COUNT()

  friend bool operator==(const AggregateItem&, const AggregateItem&) = default;
};

/// Parsed query. Fields not used by `kind` stay at their defaults so that
/// equality is structural.
struct QuerySpec {
  QueryKind kind = QueryKind::Filter;

  std::vector<std::string> select;  // {"*"} selects every column
  std::optional<AggregateItem> select_aggregate;
  std::string table;

  std::string join_table;
  std::string join_left;   // column of `table`
  std::string join_right;  // column of `join_table`

  PredicateFormula where;
  std::vector<std::string> group_by;

  std::uint64_t top_n = 0;
  std::string order_by;

  std::vector<std::string> skyline_dims;

  Aggregate having_fn = Aggregate::Sum;
  std::string having_column;
  CompareOp having_op = CompareOp::Greater;
  std::uint64_t having_threshold = 0;

  // Not part of the text grammar; set by configuration.
  ScoreHeuristic heuristic = ScoreHeuristic::Aph;
  Guarantee guarantee;

  bool selects_all() const { return select.size() == 1 && select.front() == "*"; }

  /// Columns the switch keys on: DISTINCT columns, GROUP BY columns, or the
  /// join column of `table`.
  std::vector<std::string> key_columns() const;

  /// Column whose value the switch compares or aggregates (ORDER BY column,
  /// aggregated column); empty for COUNT.
  std::string value_column() const;

  friend bool operator==(const QuerySpec&, const QuerySpec&) = default;
};

/// Checks the kind-specific invariants (TOP N >= 1, >= 2 skyline dimensions,
/// HAVING direction, probabilistic delta in (0,1)). Throws std::invalid_argument
/// or UnsupportedError.
void validate(const QuerySpec& q);

/// Grammar (keywords case-insensitive):
///   SELECT [DISTINCT | TOP n] items FROM t
///     [JOIN t2 ON [t.]a = [t2.]b] [WHERE formula]
///     [GROUP BY k,... [HAVING f(z) op c]] [ORDER BY col [DESC]]
///     [SKYLINE OF d1, d2, ...]
/// items: '*' or columns, optionally with one MIN/MAX/SUM/COUNT(col) item.
/// Throws ParseError (with position) on grammar violations and
/// UnsupportedError for recognised constructs no algorithm handles.
QuerySpec parse_query(std::string_view text);

/// Canonical text; parse_query(render_query(q)) == q for every valid q whose
/// heuristic and guarantee are at their defaults.
std::string render_query(const QuerySpec& q);

}  // namespace netprune
