#include "netprune/runner/result.hpp"

#include <algorithm>
#include <boost/algorithm/string/predicate.hpp>

#include "columns.hpp"
#include "netprune/core/errors.hpp"

namespace netprune {

const Dataset& find_table(const Tables& tables, std::string_view name) {
  if (auto it = tables.find(std::string(name)); it != tables.end()) return it->second;
  for (const auto& [key, data] : tables) {
    if (boost::algorithm::iequals(key, name)) return data;
  }
  if (tables.size() == 1) return tables.begin()->second;
  throw SchemaError("no table named '" + std::string(name) + "'");
}

std::size_t resolve_column(const Schema& schema, std::string_view table, std::string_view column) {
  auto find = [&](std::string_view c) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < schema.size(); ++i) {
      if (schema[i].name == c) return i;
    }
    return std::nullopt;
  };
  if (auto i = find(column)) return *i;
  const auto dot = column.find('.');
  if (dot != std::string_view::npos) {
    const auto prefix = column.substr(0, dot);
    if (table.empty() || boost::algorithm::iequals(prefix, table)) {
      if (auto i = find(column.substr(dot + 1))) return *i;
    }
  }
  throw SchemaError("no column '" + std::string(column) + "'" + (table.empty() ? "" : " in " + std::string(table)));
}

QueryResult::QueryResult(std::vector<std::string> columns, std::vector<std::vector<Value>> rows)
    : columns_(std::move(columns)), rows_(std::move(rows)) {
  std::sort(rows_.begin(), rows_.end());
}

void write_result(std::ostream& out, const QueryResult& r) {
  for (std::size_t i = 0; i < r.columns().size(); ++i) out << (i ? "," : "") << r.columns()[i];
  out << '\n';
  for (const auto& row : r.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i].to_string();
    out << '\n';
  }
}

std::vector<std::string> output_columns(const QuerySpec& q, const Schema& main, const Schema* other) {
  auto names = [](const Schema& s, const std::vector<std::size_t>& idx, const std::string& prefix) {
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(prefix + s[i].name);
    return out;
  };
  switch (q.kind) {
    case QueryKind::Filter:
      if (q.select_aggregate) return {detail::aggregate_name(*q.select_aggregate)};
      return names(main, detail::projection(q, main, q.table), "");
    case QueryKind::Distinct:
    case QueryKind::TopN:
    case QueryKind::Skyline: return names(main, detail::projection(q, main, q.table), "");
    case QueryKind::GroupByMaxMin: {
      auto out = names(main, detail::indices(main, q.table, q.group_by), "");
      out.push_back(detail::aggregate_name(*q.select_aggregate));
      return out;
    }
    case QueryKind::Having: return names(main, detail::indices(main, q.table, q.group_by), "");
    case QueryKind::Join: {
      if (!other) throw SchemaError("a join needs both tables");
      std::vector<std::string> all = names(main, detail::all_columns(main), q.table + ".");
      std::vector<std::string> right = names(*other, detail::all_columns(*other), q.join_table + ".");
      all.insert(all.end(), right.begin(), right.end());
      std::vector<std::string> out;
      for (auto i : detail::join_projection(q, main, *other)) out.push_back(all[i]);
      return out;
    }
  }
  return {};
}

}  // namespace netprune
