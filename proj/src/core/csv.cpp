#include "netprune/core/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "netprune/core/errors.hpp"

namespace netprune {
namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    if (c < 0x80) len = 1;
    else if ((c >> 5) == 0x6) len = 2;
    else if ((c >> 4) == 0xE) len = 3;
    else if ((c >> 3) == 0x1E) len = 4;
    else return false;
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
    }
    i += len;
  }
  return true;
}

std::vector<std::string_view> split_fields(std::string_view line, std::size_t line_no) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    } else if (line[i] == '"') {
      throw ParseError("quoted fields are not supported", line_no, i + 1);
    }
  }
  return out;
}

bool parse_uint(std::string_view field, std::uint64_t& out) {
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

Value parse_field(std::string_view field, const Column& col, std::size_t line_no) {
  if (col.kind == ValueKind::UInt) {
    std::uint64_t v = 0;
    if (!parse_uint(field, v)) {
      throw TypeError("column '" + col.name + "' expects an unsigned integer, got '" + std::string(field) + "'",
                      line_no);
    }
    return Value(v);
  }
  if (field.size() > kMaxStringBytes) {
    throw TypeError("column '" + col.name + "' string longer than " + std::to_string(kMaxStringBytes) + " bytes",
                    line_no);
  }
  if (!valid_utf8(field)) throw TypeError("column '" + col.name + "' is not valid UTF-8", line_no);
  return Value(std::string(field));
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

Dataset parse_csv(std::istream& in, const Schema& schema) {
  std::string line;
  std::size_t line_no = 1;
  if (!next_line(in, line)) throw ParseError("missing header", 1);

  const auto header = split_fields(line, line_no);
  if (header.size() != schema.size()) {
    throw ParseError("header has " + std::to_string(header.size()) + " fields, schema has " +
                         std::to_string(schema.size()),
                     line_no);
  }
  for (std::size_t c = 0; c < schema.size(); ++c) {
    if (header[c] != schema[c].name) {
      throw ParseError("header field " + std::to_string(c + 1) + " is '" + std::string(header[c]) +
                           "', expected '" + schema[c].name + "'",
                       line_no);
    }
  }

  std::vector<Entry> rows;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line, line_no);
    if (fields.size() != schema.size()) {
      throw ParseError("expected " + std::to_string(schema.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    Entry e;
    e.id = static_cast<std::uint32_t>(rows.size() + 1);
    e.columns.reserve(schema.size());
    for (std::size_t c = 0; c < schema.size(); ++c) e.columns.push_back(parse_field(fields[c], schema[c], line_no));
    rows.push_back(std::move(e));
  }
  return Dataset(schema, std::move(rows));
}

Dataset load_csv(const std::filesystem::path& path, const Schema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_csv(in, schema);
}

Schema infer_csv_schema(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  if (!next_line(in, line)) throw ParseError("missing header", 1);
  Schema schema;
  for (auto name : split_fields(line, 1)) schema.push_back(Column{std::string(name), ValueKind::UInt});

  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line, line_no);
    if (fields.size() != schema.size()) {
      throw ParseError("expected " + std::to_string(schema.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      std::uint64_t v = 0;
      if (!parse_uint(fields[c], v)) schema[c].kind = ValueKind::String;
    }
  }
  return schema;
}

void write_csv(std::ostream& out, const Dataset& data) {
  const Schema& schema = data.schema();
  for (std::size_t c = 0; c < schema.size(); ++c) out << (c ? "," : "") << schema[c].name;
  out << '\n';
  for (const Entry& e : data.rows()) {
    for (std::size_t c = 0; c < e.columns.size(); ++c) {
      const Value& v = e.columns[c];
      if (v.is_string() && v.as_string().find_first_of(",\"\n\r") != std::string::npos) {
        throw std::invalid_argument("string value cannot be written without quoting: " + v.as_string());
      }
      out << (c ? "," : "") << v.to_string();
    }
    out << '\n';
  }
}

void save_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_csv(out, data);
}

}  // namespace netprune
