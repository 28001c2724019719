#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netprune/core/value.hpp"

namespace netprune {

struct Column {
  std::string name;
  ValueKind kind = ValueKind::UInt;

  friend bool operator==(const Column&, const Column&) = default;
};

using Schema = std::vector<Column>;

/// One row. `id` doubles as the transport sequence number of the row within
/// its flow, so it is dense and starts at 1.
struct Entry {
  std::uint32_t id = 0;
  std::vector<Value> columns;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Immutable ordered multiset of rows conforming to a schema. Entry ids are
/// 1..size() in row order.
class Dataset {
 public:
  Dataset() = default;

  /// Validates that every row matches the schema and that ids are 1..n.
  Dataset(Schema schema, std::vector<Entry> rows);

  /// Builds a dataset from bare column tuples, assigning ids 1..n.
  static Dataset from_rows(Schema schema, std::vector<std::vector<Value>> rows);

  const Schema& schema() const noexcept { return schema_; }
  std::span<const Entry> rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  const Entry& row(std::size_t i) const { return rows_.at(i); }

  /// Entry with the given 1-based id.
  const Entry& by_id(std::uint32_t id) const;

  /// Index of a column; throws SchemaError if absent.
  std::size_t column_index(std::string_view name) const;
  bool has_column(std::string_view name) const noexcept;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  Schema schema_;
  std::vector<Entry> rows_;
};

}  // namespace netprune
