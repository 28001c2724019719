// Brute-force query evaluation over whole tables: full sorts, nested scans,
// sort-merge join. Deliberately shares no strategy with the master.

#include <algorithm>

#include "columns.hpp"
#include "netprune/core/errors.hpp"
#include "netprune/runner/result.hpp"

namespace netprune {

namespace {

using detail::Row;

std::vector<Row> rows_of(const Dataset& d) {
  std::vector<Row> out;
  out.reserve(d.size());
  for (const auto& e : d.rows()) out.push_back(e.columns);
  return out;
}

// Aggregate over the values of one group; nullopt for MIN/MAX of nothing.
std::optional<std::uint64_t> fold(Aggregate fn, const std::vector<std::uint64_t>& values) {
  switch (fn) {
    case Aggregate::Count: return values.size();
    case Aggregate::Sum: {
      std::uint64_t s = 0;
      for (auto v : values) s = v > UINT64_MAX - s ? UINT64_MAX : s + v;
      return s;
    }
    case Aggregate::Min:
      if (values.empty()) return std::nullopt;
      return *std::min_element(values.begin(), values.end());
    case Aggregate::Max:
      if (values.empty()) return std::nullopt;
      return *std::max_element(values.begin(), values.end());
  }
  return std::nullopt;
}

std::vector<std::uint64_t> column_values(const std::vector<Row>& rows, const Schema& schema, const std::string& table,
                                         const std::string& column) {
  std::vector<std::uint64_t> out;
  if (column.empty()) {
    out.assign(rows.size(), 1);
    return out;
  }
  const auto i = resolve_column(schema, table, column);
  for (const auto& r : rows) out.push_back(detail::uint_at(r, i, column));
  return out;
}

// Groups rows by the key columns after a full sort.
std::vector<std::pair<Row, std::vector<Row>>> groups(std::vector<Row> rows, const std::vector<std::size_t>& key) {
  std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) { return detail::pick(a, key) < detail::pick(b, key); });
  std::vector<std::pair<Row, std::vector<Row>>> out;
  for (auto& r : rows) {
    Row k = detail::pick(r, key);
    if (out.empty() || out.back().first != k) out.emplace_back(std::move(k), std::vector<Row>{});
    out.back().second.push_back(std::move(r));
  }
  return out;
}

bool dominates(const Row& y, const Row& x, const std::vector<std::size_t>& dims) {
  bool strict = false;
  for (auto d : dims) {
    const auto a = y[d].as_uint();
    const auto b = x[d].as_uint();
    if (a < b) return false;
    strict = strict || a > b;
  }
  return strict;
}

}  // namespace

QueryResult oracle_execute(const QuerySpec& q, const Tables& tables) {
  const Dataset& data = find_table(tables, q.table);
  const Schema& schema = data.schema();
  const std::vector<Row> rows = rows_of(data);

  switch (q.kind) {
    case QueryKind::Filter: {
      std::vector<Row> kept;
      for (const auto& r : rows) {
        if (detail::satisfies(q.where, schema, q.table, r)) kept.push_back(r);
      }
      if (q.select_aggregate) {
        const auto v = fold(q.select_aggregate->fn, column_values(kept, schema, q.table, q.select_aggregate->column));
        std::vector<Row> out;
        if (v) out.push_back({Value(*v)});
        return {output_columns(q, schema), out};
      }
      const auto idx = detail::projection(q, schema, q.table);
      std::vector<Row> out;
      for (const auto& r : kept) out.push_back(detail::pick(r, idx));
      return {output_columns(q, schema), out};
    }

    case QueryKind::Distinct: {
      const auto idx = detail::projection(q, schema, q.table);
      std::vector<Row> out;
      for (const auto& r : rows) out.push_back(detail::pick(r, idx));
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return {output_columns(q, schema), out};
    }

    case QueryKind::TopN: {
      const auto v = resolve_column(schema, q.table, q.order_by);
      for (const auto& r : rows) detail::uint_at(r, v, q.order_by);
      std::vector<Row> sorted = rows;
      // Largest values first; ties broken by the whole row, descending.
      std::sort(sorted.begin(), sorted.end(), [&](const Row& a, const Row& b) {
        if (a[v] != b[v]) return a[v] > b[v];
        return a > b;
      });
      sorted.resize(std::min<std::size_t>(sorted.size(), q.top_n));
      const auto idx = detail::projection(q, schema, q.table);
      std::vector<Row> out;
      for (const auto& r : sorted) out.push_back(detail::pick(r, idx));
      return {output_columns(q, schema), out};
    }

    case QueryKind::Skyline: {
      const auto dims = detail::indices(schema, q.table, q.skyline_dims);
      for (const auto& r : rows) {
        for (std::size_t k = 0; k < dims.size(); ++k) detail::uint_at(r, dims[k], q.skyline_dims[k]);
      }
      const auto idx = detail::projection(q, schema, q.table);
      std::vector<Row> out;
      for (const auto& x : rows) {
        const bool dominated = std::any_of(rows.begin(), rows.end(), [&](const Row& y) { return dominates(y, x, dims); });
        if (!dominated) out.push_back(detail::pick(x, idx));
      }
      return {output_columns(q, schema), out};
    }

    case QueryKind::GroupByMaxMin: {
      const auto key = detail::indices(schema, q.table, q.group_by);
      std::vector<Row> out;
      for (const auto& [k, members] : groups(rows, key)) {
        const auto v = fold(q.select_aggregate->fn, column_values(members, schema, q.table, q.select_aggregate->column));
        Row r = k;
        r.push_back(Value(*v));
        out.push_back(std::move(r));
      }
      return {output_columns(q, schema), out};
    }

    case QueryKind::Having: {
      const auto key = detail::indices(schema, q.table, q.group_by);
      std::vector<Row> out;
      for (const auto& [k, members] : groups(rows, key)) {
        const auto v = fold(q.having_fn, column_values(members, schema, q.table, q.having_column));
        if (v && compare(Value(*v), q.having_op, Value(q.having_threshold))) out.push_back(k);
      }
      return {output_columns(q, schema), out};
    }

    case QueryKind::Join: {
      const Dataset& right_data = find_table(tables, q.join_table);
      const Schema& rs = right_data.schema();
      const auto lk = resolve_column(schema, q.table, q.join_left);
      const auto rk = resolve_column(rs, q.join_table, q.join_right);
      std::vector<Row> right = rows_of(right_data);
      std::sort(right.begin(), right.end(), [&](const Row& a, const Row& b) { return a[rk] < b[rk]; });
      const auto idx = detail::join_projection(q, schema, rs);
      std::vector<Row> out;
      for (const auto& l : rows) {
        auto lo = std::partition_point(right.begin(), right.end(), [&](const Row& r) { return r[rk] < l[lk]; });
        for (; lo != right.end() && lo->at(rk) == l[lk]; ++lo) out.push_back(detail::pick(detail::concat(l, *lo), idx));
      }
      return {output_columns(q, schema, &rs), out};
    }
  }
  return {};
}

}  // namespace netprune
