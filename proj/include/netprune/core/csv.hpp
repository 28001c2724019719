#pragma once

#include <filesystem>
#include <iosfwd>

#include "netprune/core/dataset.hpp"

namespace netprune {

// CSV dialect: first line is a header whose names must equal the schema
// names in order; fields are separated by ',' and never quoted. A field
// containing '"' is rejected. CRLF line endings are accepted. Strings must be
// valid UTF-8 and at most kMaxStringBytes long. A header-only file yields an
// empty dataset; a file without a header is malformed.

Dataset parse_csv(std::istream& in, const Schema& schema);
Dataset load_csv(const std::filesystem::path& path, const Schema& schema);

/// Reads the header and types every column as UInt if all its fields parse
/// as unsigned 64-bit integers, String otherwise.
Schema infer_csv_schema(const std::filesystem::path& path);

void write_csv(std::ostream& out, const Dataset& data);
void save_csv(const std::filesystem::path& path, const Dataset& data);

}  // namespace netprune
