#include "netprune/planner/profile.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "netprune/core/errors.hpp"

namespace netprune {

namespace {

std::uint64_t to_count(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ParseError("profile key '" + key + "' needs an unsigned integer, got '" + text + "'", 0);
  }
  return v;
}

void apply(SwitchProfile& p, const std::string& key, const std::string& value) {
  const std::uint64_t v = to_count(key, value);
  if (key == "stages") p.stages = v;
  else if (key == "alus_per_stage") p.alus_per_stage = v;
  else if (key == "sram_bits_per_stage") p.sram_bits_per_stage = v;
  else if (key == "tcam_entries") p.tcam_entries = v;
  else throw ParseError("unknown profile key '" + key + "'", 0);
}

}  // namespace

SwitchProfile parse_profile(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(e.message(), e.line());
  }
  SwitchProfile p;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      apply(p, name, node.data());
    } else if (name == "switch") {
      for (const auto& [key, leaf] : node) apply(p, key, leaf.data());
    } else {
      throw ParseError("unknown profile section '" + name + "'", 0);
    }
  }
  return p;
}

SwitchProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read profile " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile(buf.str());
}

}  // namespace netprune
