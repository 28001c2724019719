#include "netprune/core/dataset.hpp"

#include <algorithm>

#include "netprune/core/errors.hpp"

namespace netprune {

Dataset::Dataset(Schema schema, std::vector<Entry> rows) : schema_(std::move(schema)), rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Entry& e = rows_[i];
    if (e.id != i + 1) {
      throw SchemaError("entry ids must be 1..n in row order; row " + std::to_string(i + 1) + " has id " +
                        std::to_string(e.id));
    }
    if (e.columns.size() != schema_.size()) {
      throw SchemaError("row " + std::to_string(e.id) + " has " + std::to_string(e.columns.size()) +
                        " columns, schema has " + std::to_string(schema_.size()));
    }
    for (std::size_t c = 0; c < schema_.size(); ++c) {
      if (e.columns[c].kind() != schema_[c].kind) {
        throw SchemaError("row " + std::to_string(e.id) + " column '" + schema_[c].name + "' is " +
                          to_string(e.columns[c].kind()) + ", schema says " + to_string(schema_[c].kind));
      }
    }
  }
}

Dataset Dataset::from_rows(Schema schema, std::vector<std::vector<Value>> rows) {
  std::vector<Entry> entries;
  entries.reserve(rows.size());
  std::uint32_t id = 0;
  for (auto& r : rows) entries.push_back(Entry{++id, std::move(r)});
  return Dataset(std::move(schema), std::move(entries));
}

const Entry& Dataset::by_id(std::uint32_t id) const {
  if (id == 0 || id > rows_.size()) throw std::out_of_range("no entry with id " + std::to_string(id));
  return rows_[id - 1];
}

std::size_t Dataset::column_index(std::string_view name) const {
  auto it = std::find_if(schema_.begin(), schema_.end(), [&](const Column& c) { return c.name == name; });
  if (it == schema_.end()) throw SchemaError("no column named '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - schema_.begin());
}

bool Dataset::has_column(std::string_view name) const noexcept {
  return std::any_of(schema_.begin(), schema_.end(), [&](const Column& c) { return c.name == name; });
}

}  // namespace netprune
