#include "netprune/core/query.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include "netprune/core/errors.hpp"

namespace netprune {

const char* to_string(QueryKind kind) noexcept {
  switch (kind) {
    case QueryKind::Filter: return "filter";
    case QueryKind::Distinct: return "distinct";
    case QueryKind::TopN: return "topn";
    case QueryKind::Skyline: return "skyline";
    case QueryKind::GroupByMaxMin: return "groupby";
    case QueryKind::Join: return "join";
    case QueryKind::Having: return "having";
  }
  return "?";
}

const char* to_string(Aggregate fn) noexcept {
  switch (fn) {
    case Aggregate::Min: return "MIN";
    case Aggregate::Max: return "MAX";
    case Aggregate::Sum: return "SUM";
    case Aggregate::Count: return "COUNT";
  }
  return "?";
}

const char* to_string(ScoreHeuristic h) noexcept {
  return h == ScoreHeuristic::Sum ? "sum" : "aph";
}

std::vector<std::string> QuerySpec::key_columns() const {
  switch (kind) {
    case QueryKind::Distinct: return select;
    case QueryKind::GroupByMaxMin:
    case QueryKind::Having: return group_by;
    case QueryKind::Join: return {join_left};
    default: return {};
  }
}

std::string QuerySpec::value_column() const {
  switch (kind) {
    case QueryKind::TopN: return order_by;
    case QueryKind::GroupByMaxMin: return select_aggregate ? select_aggregate->column : std::string{};
    case QueryKind::Having: return having_column;
    default: return {};
  }
}

namespace {

bool having_direction_supported(Aggregate fn, CompareOp op) {
  switch (fn) {
    case Aggregate::Min: return op == CompareOp::Less || op == CompareOp::LessEq;
    case Aggregate::Max:
    case Aggregate::Sum:
    case Aggregate::Count: return op == CompareOp::Greater || op == CompareOp::GreaterEq;
  }
  return false;
}

}  // namespace

void validate(const QuerySpec& q) {
  if (q.select.empty()) throw std::invalid_argument("query selects no columns");
  if (q.guarantee.probabilistic && !(q.guarantee.delta > 0.0 && q.guarantee.delta < 1.0)) {
    throw std::invalid_argument("probabilistic guarantee needs 0 < delta < 1");
  }
  switch (q.kind) {
    case QueryKind::Filter: break;
    case QueryKind::Distinct:
      if (q.selects_all()) throw UnsupportedError("DISTINCT * is not supported; name the key columns");
      break;
    case QueryKind::TopN:
      if (q.top_n < 1) throw std::invalid_argument("TOP N needs N >= 1");
      if (q.order_by.empty()) throw std::invalid_argument("TOP N needs an ORDER BY column");
      break;
    case QueryKind::Skyline:
      if (q.skyline_dims.size() < 2) throw std::invalid_argument("SKYLINE needs at least 2 dimensions");
      break;
    case QueryKind::GroupByMaxMin:
      if (q.group_by.empty()) throw std::invalid_argument("GROUP BY needs key columns");
      if (!q.select_aggregate ||
          (q.select_aggregate->fn != Aggregate::Max && q.select_aggregate->fn != Aggregate::Min)) {
        throw UnsupportedError("GROUP BY pruning supports only MAX and MIN aggregates");
      }
      break;
    case QueryKind::Join:
      if (q.join_table.empty() || q.join_left.empty() || q.join_right.empty()) {
        throw std::invalid_argument("JOIN needs a table and an equality condition");
      }
      break;
    case QueryKind::Having:
      if (q.group_by.empty()) throw std::invalid_argument("HAVING needs GROUP BY key columns");
      if (q.having_fn != Aggregate::Count && q.having_column.empty()) {
        throw std::invalid_argument("HAVING aggregate needs a column");
      }
      if (!having_direction_supported(q.having_fn, q.having_op)) {
        throw UnsupportedError(std::string("HAVING ") + to_string(q.having_fn) + " with '" + to_string(q.having_op) +
                               "' is unsupported by design: no one-sided estimator makes pruning safe in that direction");
      }
      break;
  }
}

namespace {

enum class Tok : std::uint8_t { Ident, Number, String, Symbol, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  std::size_t pos = 0;  // 1-based
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '%';
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start + 1});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && ident_char(s[i])) throw ParseError("malformed number", 1, start + 1);
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start + 1});
    } else if (c == '\'') {
      std::string text;
      ++i;
      for (;;) {
        if (i >= s.size()) throw ParseError("unterminated string literal", 1, start + 1);
        if (s[i] == '\'') {
          if (i + 1 < s.size() && s[i + 1] == '\'') {
            text += '\'';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        text += s[i++];
      }
      out.push_back({Tok::String, std::move(text), start + 1});
    } else if (c == '<' || c == '>') {
      ++i;
      if (i < s.size() && s[i] == '=') ++i;
      out.push_back({Tok::Symbol, std::string(s.substr(start, i - start)), start + 1});
    } else if (c == '=' || c == '(' || c == ')' || c == ',' || c == '*') {
      ++i;
      out.push_back({Tok::Symbol, std::string(1, c), start + 1});
    } else if (c == '!') {
      throw ParseError("'!=' is not monotone and is not supported", 1, start + 1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", 1, start + 1);
    }
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

const std::vector<std::string>& keywords() {
  static const std::vector<std::string> k = {"SELECT", "DISTINCT", "TOP", "FROM", "JOIN",  "ON",   "WHERE",
                                             "GROUP",  "BY",       "HAVING", "ORDER", "DESC", "ASC", "SKYLINE",
                                             "OF",     "AND",      "OR",  "NOT",  "LIKE", "TRUE"};
  return k;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  QuerySpec parse() {
    QuerySpec q;
    expect_kw("SELECT");
    bool distinct = false;
    bool top = false;
    if (accept_kw("DISTINCT")) {
      distinct = true;
    } else if (accept_kw("TOP")) {
      top = true;
      q.top_n = number();
    }
    parse_items(q);

    if (accept_kw("FROM")) q.table = identifier("table name");
    bool join = false;
    if (accept_kw("JOIN")) {
      join = true;
      q.join_table = identifier("table name");
      expect_kw("ON");
      q.join_left = strip_table(identifier("column"), q.table);
      expect_symbol("=");
      q.join_right = strip_table(identifier("column"), q.join_table);
    }
    bool where = false;
    if (accept_kw("WHERE")) {
      where = true;
      q.where = parse_or();
    }
    bool having = false;
    if (accept_kw("GROUP")) {
      expect_kw("BY");
      q.group_by = column_list();
      if (accept_kw("HAVING")) {
        having = true;
        parse_having(q);
      }
    }
    if (accept_kw("ORDER")) {
      expect_kw("BY");
      q.order_by = identifier("column");
      if (peek_kw("ASC")) throw UnsupportedError("ascending TOP N is not supported; values are ranked largest first");
      accept_kw("DESC");
    }
    bool skyline = false;
    if (accept_kw("SKYLINE")) {
      skyline = true;
      expect_kw("OF");
      q.skyline_dims = column_list();
    }
    if (cur().type != Tok::End) fail("unexpected '" + cur().text + "'");

    const int forms = int(distinct) + int(top) + int(join) + int(skyline) + int(!q.group_by.empty());
    if (forms > 1) throw UnsupportedError("combining DISTINCT, TOP, JOIN, GROUP BY and SKYLINE in one query");
    if (where && forms > 0) throw UnsupportedError("WHERE is only supported on plain selections");
    if (!q.order_by.empty() && !top) throw UnsupportedError("ORDER BY is only supported with TOP N");

    if (distinct) {
      q.kind = QueryKind::Distinct;
    } else if (top) {
      if (q.order_by.empty()) fail("TOP N requires ORDER BY");
      q.kind = QueryKind::TopN;
    } else if (join) {
      q.kind = QueryKind::Join;
    } else if (skyline) {
      q.kind = QueryKind::Skyline;
    } else if (!q.group_by.empty()) {
      q.kind = having ? QueryKind::Having : QueryKind::GroupByMaxMin;
      if (!having && !q.select_aggregate) throw UnsupportedError("GROUP BY without an aggregate or HAVING");
      if (!having && q.select_aggregate->fn == Aggregate::Sum) {
        throw UnsupportedError("GROUP BY with SUM is unsupported by design: sums cannot be pruned without HAVING");
      }
      if (!having && q.select_aggregate->fn == Aggregate::Count) {
        throw UnsupportedError("GROUP BY with COUNT is unsupported by design: counts cannot be pruned without HAVING");
      }
    } else {
      q.kind = QueryKind::Filter;
    }
    if (q.select_aggregate && q.kind != QueryKind::GroupByMaxMin &&
        !(q.kind == QueryKind::Filter && q.select_aggregate->fn == Aggregate::Count)) {
      throw UnsupportedError(std::string(to_string(q.select_aggregate->fn)) + " in the select list of a " +
                             to_string(q.kind) + " query");
    }
    validate(q);
    return q;
  }

 private:
  const Token& cur() const { return toks_[i_]; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, cur().pos); }

  bool peek_kw(const char* kw) const { return cur().type == Tok::Ident && upper(cur().text) == kw; }
  bool accept_kw(const char* kw) {
    if (!peek_kw(kw)) return false;
    ++i_;
    return true;
  }
  void expect_kw(const char* kw) {
    if (!accept_kw(kw)) fail(std::string("expected ") + kw);
  }
  bool accept_symbol(const char* s) {
    if (cur().type != Tok::Symbol || cur().text != s) return false;
    ++i_;
    return true;
  }
  void expect_symbol(const char* s) {
    if (!accept_symbol(s)) fail(std::string("expected '") + s + "'");
  }

  static bool is_keyword(const std::string& t) {
    const auto u = upper(t);
    const auto& k = keywords();
    return std::find(k.begin(), k.end(), u) != k.end();
  }

  std::string identifier(const char* what) {
    if (cur().type != Tok::Ident || is_keyword(cur().text)) fail(std::string("expected ") + what);
    if (cur().text.find('%') != std::string::npos) fail("'%' is only allowed in LIKE patterns");
    return toks_[i_++].text;
  }

  std::uint64_t number() {
    if (cur().type != Tok::Number) fail("expected a number");
    std::uint64_t v = 0;
    const auto& t = cur().text;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) fail("number out of range");
    ++i_;
    return v;
  }

  static std::optional<Aggregate> aggregate_kw(const std::string& t) {
    const auto u = upper(t);
    if (u == "MIN") return Aggregate::Min;
    if (u == "MAX") return Aggregate::Max;
    if (u == "SUM") return Aggregate::Sum;
    if (u == "COUNT") return Aggregate::Count;
    return std::nullopt;
  }

  bool at_aggregate() const {
    return cur().type == Tok::Ident && aggregate_kw(cur().text) && toks_[i_ + 1].type == Tok::Symbol &&
           toks_[i_ + 1].text == "(";
  }

  AggregateItem aggregate() {
    AggregateItem a;
    a.fn = *aggregate_kw(cur().text);
    ++i_;
    expect_symbol("(");
    if (a.fn == Aggregate::Count) {
      if (!accept_symbol("*") && cur().type == Tok::Ident) a.column = identifier("column");
    } else {
      a.column = identifier("column");
    }
    expect_symbol(")");
    return a;
  }

  void parse_items(QuerySpec& q) {
    if (accept_symbol("*")) {
      q.select = {"*"};
      return;
    }
    for (;;) {
      if (at_aggregate()) {
        if (q.select_aggregate) fail("only one aggregate is supported in the select list");
        q.select_aggregate = aggregate();
      } else {
        q.select.push_back(identifier("column"));
      }
      if (!accept_symbol(",")) break;
    }
    // An aggregate alone selects no plain column; keep the list non-empty so
    // that rendering stays unambiguous.
    if (q.select.empty()) q.select = {"*"};
  }

  std::vector<std::string> column_list() {
    std::vector<std::string> out{identifier("column")};
    while (accept_symbol(",")) out.push_back(identifier("column"));
    return out;
  }

  static std::string strip_table(const std::string& col, const std::string& table) {
    const auto dot = col.find('.');
    if (dot == std::string::npos) return col;
    if (!table.empty() && col.substr(0, dot) != table) {
      throw ParseError("column '" + col + "' does not belong to table '" + table + "'", 1);
    }
    return col.substr(dot + 1);
  }

  CompareOp compare_op() {
    if (cur().type == Tok::Symbol) {
      const auto& t = cur().text;
      std::optional<CompareOp> op;
      if (t == "<") op = CompareOp::Less;
      else if (t == "<=") op = CompareOp::LessEq;
      else if (t == ">") op = CompareOp::Greater;
      else if (t == ">=") op = CompareOp::GreaterEq;
      else if (t == "=") op = CompareOp::Equal;
      if (op) {
        ++i_;
        return *op;
      }
    }
    fail("expected a comparison operator");
  }

  void parse_having(QuerySpec& q) {
    if (!at_aggregate()) fail("expected MIN, MAX, SUM or COUNT");
    const auto a = aggregate();
    q.having_fn = a.fn;
    q.having_column = a.column;
    q.having_op = compare_op();
    q.having_threshold = number();
    if (!having_direction_supported(q.having_fn, q.having_op)) {
      throw UnsupportedError(std::string("HAVING ") + to_string(q.having_fn) + " with '" + to_string(q.having_op) +
                             "' is unsupported by design: no one-sided estimator makes pruning safe in that direction");
    }
  }

  PredicateFormula parse_or() {
    std::vector<PredicateFormula> parts{parse_and()};
    while (accept_kw("OR")) parts.push_back(parse_and());
    return PredicateFormula::any_of(std::move(parts));
  }

  PredicateFormula parse_and() {
    std::vector<PredicateFormula> parts{parse_primary()};
    while (accept_kw("AND")) parts.push_back(parse_primary());
    return PredicateFormula::all_of(std::move(parts));
  }

  PredicateFormula parse_primary() {
    if (peek_kw("NOT")) fail("NOT is not supported: pruning needs a monotone formula");
    if (accept_kw("TRUE")) return PredicateFormula::truth();
    if (accept_symbol("(")) {
      auto f = parse_or();
      expect_symbol(")");
      return f;
    }
    Atom a;
    a.column = identifier("column");
    if (accept_kw("LIKE")) {
      a.kind = Atom::Kind::Like;
      if (cur().type == Tok::String || cur().type == Tok::Ident) {
        a.pattern = toks_[i_++].text;
      } else {
        fail("expected a LIKE pattern");
      }
      return PredicateFormula::leaf(std::move(a));
    }
    a.op = compare_op();
    if (cur().type == Tok::Number) {
      a.constant = Value(number());
    } else if (cur().type == Tok::String) {
      a.constant = Value(toks_[i_++].text);
    } else {
      fail("expected a constant");
    }
    return PredicateFormula::leaf(std::move(a));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

std::string join_list(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

std::string render_aggregate(const AggregateItem& a) {
  return std::string(to_string(a.fn)) + "(" + a.column + ")";
}

}  // namespace

QuerySpec parse_query(std::string_view text) {
  return Parser(text).parse();
}

std::string render_query(const QuerySpec& q) {
  std::string out = "SELECT ";
  if (q.kind == QueryKind::Distinct) out += "DISTINCT ";
  if (q.kind == QueryKind::TopN) out += "TOP " + std::to_string(q.top_n) + " ";
  if (q.select_aggregate && q.selects_all()) {
    out += render_aggregate(*q.select_aggregate);
  } else {
    out += join_list(q.select);
    if (q.select_aggregate) out += ", " + render_aggregate(*q.select_aggregate);
  }
  if (!q.table.empty()) out += " FROM " + q.table;
  if (q.kind == QueryKind::Join) {
    out += " JOIN " + q.join_table + " ON " + q.join_left + " = " + q.join_right;
  }
  if (!q.where.is_true()) out += " WHERE " + q.where.render();
  if (!q.group_by.empty()) out += " GROUP BY " + join_list(q.group_by);
  if (q.kind == QueryKind::Having) {
    out += " HAVING " + render_aggregate({q.having_fn, q.having_column}) + " " + to_string(q.having_op) + " " +
           std::to_string(q.having_threshold);
  }
  if (!q.order_by.empty()) out += " ORDER BY " + q.order_by;
  if (q.kind == QueryKind::Skyline) out += " SKYLINE OF " + join_list(q.skyline_dims);
  return out;
}

}  // namespace netprune
