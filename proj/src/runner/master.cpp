// Master-side completion over pruning survivors: hash tables, a bounded heap
// and a sort-filter skyline window.

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include "columns.hpp"
#include "netprune/core/errors.hpp"
#include "netprune/core/hash.hpp"
#include "netprune/runner/result.hpp"

namespace netprune {

namespace {

using detail::Row;

struct ValueHash {
  std::size_t operator()(const Value& v) const {
    return v.is_uint() ? splitmix64(v.as_uint()) : std::hash<std::string>{}(v.as_string());
  }
};

// Running aggregate of one group.
struct Accumulator {
  Aggregate fn;
  bool any = false;
  std::uint64_t value = 0;

  void add(std::uint64_t v) {
    switch (fn) {
      case Aggregate::Count: ++value; break;
      case Aggregate::Sum: value = saturating(value, v); break;
      case Aggregate::Min: value = any ? std::min(value, v) : v; break;
      case Aggregate::Max: value = any ? std::max(value, v) : v; break;
    }
    any = true;
  }
  static std::uint64_t saturating(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }
};

std::uint64_t value_of(const Row& r, std::optional<std::size_t> idx, const std::string& column) {
  return idx ? detail::uint_at(r, *idx, column) : 1;
}

std::optional<std::size_t> optional_column(const SurvivorRows& s, const std::string& column) {
  if (column.empty()) return std::nullopt;
  return resolve_column(s.schema, s.table, column);
}

QueryResult complete_filter(const QuerySpec& q, const SurvivorRows& s) {
  // The whole predicate is re-evaluated: a lost prune ACK can deliver a row
  // that fails the switch part.
  if (q.select_aggregate) {
    const auto idx = optional_column(s, q.select_aggregate->column);
    Accumulator acc{q.select_aggregate->fn};
    if (acc.fn == Aggregate::Count || acc.fn == Aggregate::Sum) acc.any = true;
    for (const auto& r : s.rows) {
      if (detail::satisfies(q.where, s.schema, s.table, r)) acc.add(value_of(r, idx, q.select_aggregate->column));
    }
    std::vector<Row> out;
    if (acc.any) out.push_back({Value(acc.value)});
    return {output_columns(q, s.schema), out};
  }
  const auto idx = detail::projection(q, s.schema, s.table);
  std::vector<Row> out;
  for (const auto& r : s.rows) {
    if (detail::satisfies(q.where, s.schema, s.table, r)) out.push_back(detail::pick(r, idx));
  }
  return {output_columns(q, s.schema), out};
}

QueryResult complete_distinct(const QuerySpec& q, const SurvivorRows& s) {
  const auto idx = detail::projection(q, s.schema, s.table);
  std::set<Row> seen;
  for (const auto& r : s.rows) seen.insert(detail::pick(r, idx));
  return {output_columns(q, s.schema), {seen.begin(), seen.end()}};
}

QueryResult complete_topn(const QuerySpec& q, const SurvivorRows& s) {
  const auto v = resolve_column(s.schema, s.table, q.order_by);
  using Item = std::pair<std::uint64_t, const Row*>;
  // Min-heap of the best N by (value, row); the root is evicted first.
  auto worse = [](const Item& a, const Item& b) {
    if (a.first != b.first) return a.first > b.first;
    return *a.second > *b.second;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(worse)> heap(worse);
  for (const auto& r : s.rows) {
    heap.emplace(detail::uint_at(r, v, q.order_by), &r);
    if (heap.size() > q.top_n) heap.pop();
  }
  const auto idx = detail::projection(q, s.schema, s.table);
  std::vector<Row> out;
  for (; !heap.empty(); heap.pop()) out.push_back(detail::pick(*heap.top().second, idx));
  return {output_columns(q, s.schema), out};
}

QueryResult complete_skyline(const QuerySpec& q, const SurvivorRows& s) {
  const auto dims = detail::indices(s.schema, s.table, q.skyline_dims);
  struct Point {
    std::vector<std::uint64_t> x;
    uint128_t sum = 0;
    const Row* row;
  };
  std::vector<Point> pts;
  for (const auto& r : s.rows) {
    Point p{{}, 0, &r};
    for (std::size_t k = 0; k < dims.size(); ++k) {
      p.x.push_back(detail::uint_at(r, dims[k], q.skyline_dims[k]));
      p.sum += p.x.back();
    }
    pts.push_back(std::move(p));
  }
  // A dominating point has a strictly larger coordinate sum, so after a sort
  // by decreasing sum every dominator of a point precedes it.
  std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.sum > b.sum; });
  std::vector<const Point*> window;
  for (const auto& p : pts) {
    const bool dominated = std::any_of(window.begin(), window.end(), [&](const Point* w) {
      return w->sum > p.sum && std::equal(p.x.begin(), p.x.end(), w->x.begin(), std::less_equal<>{});
    });
    if (!dominated) window.push_back(&p);
  }
  const auto idx = detail::projection(q, s.schema, s.table);
  std::vector<Row> out;
  for (const auto* p : window) out.push_back(detail::pick(*p->row, idx));
  return {output_columns(q, s.schema), out};
}

QueryResult complete_grouped(const QuerySpec& q, const SurvivorRows& s) {
  const bool having = q.kind == QueryKind::Having;
  const Aggregate fn = having ? q.having_fn : q.select_aggregate->fn;
  const std::string& column = having ? q.having_column : q.select_aggregate->column;
  const auto key = detail::indices(s.schema, s.table, q.group_by);
  const auto vidx = optional_column(s, column);
  std::map<Row, Accumulator> groups;
  for (const auto& r : s.rows) {
    groups.try_emplace(detail::pick(r, key), Accumulator{fn}).first->second.add(value_of(r, vidx, column));
  }
  std::vector<Row> out;
  for (auto& [k, acc] : groups) {
    if (having) {
      if (compare(Value(acc.value), q.having_op, Value(q.having_threshold))) out.push_back(k);
    } else {
      Row r = k;
      r.push_back(Value(acc.value));
      out.push_back(std::move(r));
    }
  }
  return {output_columns(q, s.schema), out};
}

QueryResult complete_join(const QuerySpec& q, const SurvivorRows& left, const SurvivorRows& right) {
  const auto lk = resolve_column(left.schema, left.table, q.join_left);
  const auto rk = resolve_column(right.schema, right.table, q.join_right);
  std::unordered_multimap<Value, const Row*, ValueHash> build;
  for (const auto& r : right.rows) build.emplace(r[rk], &r);
  const auto idx = detail::join_projection(q, left.schema, right.schema);
  std::vector<Row> out;
  for (const auto& l : left.rows) {
    auto [lo, hi] = build.equal_range(l[lk]);
    for (; lo != hi; ++lo) out.push_back(detail::pick(detail::concat(l, *lo->second), idx));
  }
  return {output_columns(q, left.schema, &right.schema), out};
}

}  // namespace

QueryResult master_complete(const QuerySpec& q, const SurvivorRows& main, const SurvivorRows* other) {
  switch (q.kind) {
    case QueryKind::Filter: return complete_filter(q, main);
    case QueryKind::Distinct: return complete_distinct(q, main);
    case QueryKind::TopN: return complete_topn(q, main);
    case QueryKind::Skyline: return complete_skyline(q, main);
    case QueryKind::GroupByMaxMin:
    case QueryKind::Having: return complete_grouped(q, main);
    case QueryKind::Join:
      if (!other) throw SchemaError("a join needs the survivors of both tables");
      return complete_join(q, main, *other);
  }
  return {};
}

}  // namespace netprune
