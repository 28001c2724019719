#include "netprune/runner/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "netprune/algorithms/distinct.hpp"
#include "netprune/core/csv.hpp"
#include "netprune/core/errors.hpp"
#include "netprune/core/hash.hpp"

namespace netprune {

namespace {

using boost::property_tree::ptree;
using json = nlohmann::json;

const std::map<std::string, std::set<std::string>> kKeys = {
    {"experiment", {"name"}},
    {"query", {"text", "guarantee", "delta", "heuristic"}},
    {"algorithm",
     {"params", "d", "w", "policy", "fingerprint_bits", "randomized_topn", "bloom_bits", "bloom_hashes",
      "asymmetric_join", "build_side"}},
    {"switch", {"stages", "alus_per_stage", "sram_bits_per_stage", "tcam_entries"}},
    {"dataset",
     {"generator", "n", "distinct", "key_dist", "zipf_s", "value_min", "value_max", "dims", "max_coord", "left_rows",
      "right_rows", "overlap", "path", "right_path", "shuffle"}},
    {"run", {"seeds", "loss_rate", "latency", "jitter", "timeout", "window", "max_steps"}},
};

// Typed access to the INI tree that records every problem instead of
// stopping at the first.
class Reader {
 public:
  explicit Reader(ptree tree) : tree_(std::move(tree)) {
    for (const auto& [section, body] : tree_) {
      const auto known = kKeys.find(section);
      if (body.empty() && !body.data().empty()) {
        problem(section + ": key outside a section");
      } else if (known == kKeys.end()) {
        problem("[" + section + "]: unknown section");
      } else {
        for (const auto& [key, value] : body) {
          if (!known->second.contains(key)) problem(section + "." + key + ": unknown key");
        }
      }
    }
  }

  void problem(std::string p) { problems_.push_back(std::move(p)); }
  const std::vector<std::string>& problems() const { return problems_; }

  std::optional<std::string> text(const std::string& section, const std::string& key) const {
    const auto s = tree_.get_child_optional(section);
    if (!s) return std::nullopt;
    const auto v = s->get_optional<std::string>(ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return boost::trim_copy(*v);
  }

  bool has(const std::string& section, const std::string& key) const { return text(section, key).has_value(); }

  template <class T>
  void uint(const std::string& section, const std::string& key, T& out, std::uint64_t min = 0) {
    const auto v = text(section, key);
    if (!v) return;
    std::uint64_t x = 0;
    const auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
    if (ec != std::errc{} || end != v->data() + v->size() || x > std::numeric_limits<T>::max()) {
      problem(section + "." + key + ": '" + *v + "' is not an unsigned integer");
    } else if (x < min) {
      problem(section + "." + key + ": must be at least " + std::to_string(min));
    } else {
      out = static_cast<T>(x);
    }
  }

  template <class T>
  void uint(const std::string& section, const std::string& key, std::optional<T>& out, std::uint64_t min = 0) {
    if (!has(section, key)) return;
    T x{};
    const auto before = problems_.size();
    uint(section, key, x, min);
    if (problems_.size() == before) out = x;
  }

  void real(const std::string& section, const std::string& key, double& out) {
    const auto v = text(section, key);
    if (!v) return;
    double x = 0;
    const auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
    if (ec != std::errc{} || end != v->data() + v->size() || !std::isfinite(x)) {
      problem(section + "." + key + ": '" + *v + "' is not a number");
    } else {
      out = x;
    }
  }

  void boolean(const std::string& section, const std::string& key, bool& out) {
    const auto v = text(section, key);
    if (!v) return;
    const auto s = boost::to_lower_copy(*v);
    if (s == "true" || s == "yes" || s == "1") {
      out = true;
    } else if (s == "false" || s == "no" || s == "0") {
      out = false;
    } else {
      problem(section + "." + key + ": '" + *v + "' is not a boolean");
    }
  }

  void boolean(const std::string& section, const std::string& key, std::optional<bool>& out) {
    if (!has(section, key)) return;
    bool x = false;
    const auto before = problems_.size();
    boolean(section, key, x);
    if (problems_.size() == before) out = x;
  }

  // Lower-cased value that must be one of `choices`.
  std::optional<std::string> choice(const std::string& section, const std::string& key,
                                    std::initializer_list<const char*> choices) {
    const auto v = text(section, key);
    if (!v) return std::nullopt;
    const auto s = boost::to_lower_copy(*v);
    for (const char* c : choices) {
      if (s == c) return s;
    }
    std::string list;
    for (const char* c : choices) list += (list.empty() ? "" : ", ") + std::string(c);
    problem(section + "." + key + ": '" + *v + "' is not one of " + list);
    return std::nullopt;
  }

 private:
  ptree tree_;
  std::vector<std::string> problems_;
};

std::vector<std::uint64_t> parse_seeds(const std::string& text, Reader& r) {
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(", \t"), boost::token_compress_on);
  auto number = [&](std::string_view s, std::uint64_t& out) {
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && end == s.data() + s.size();
  };
  for (const auto& p : parts) {
    if (p.empty()) continue;
    const auto dots = p.find("..");
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    const bool ok = dots == std::string::npos ? number(p, lo) && number(p, hi)
                                              : number(std::string_view(p).substr(0, dots), lo) &&
                                                    number(std::string_view(p).substr(dots + 2), hi);
    if (!ok || lo > hi || hi - lo >= 1'000'000) {
      r.problem("run.seeds: '" + p + "' is not a seed or an ascending range a..b");
      continue;
    }
    for (std::uint64_t s = lo;; ++s) {
      seeds.push_back(s);
      if (s == hi) break;
    }
  }
  std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
  if (unique.size() != seeds.size()) r.problem("run.seeds: seeds repeat");
  return seeds;
}

std::string table_name(const std::string& name) { return name.empty() ? "t" : name; }

std::size_t distinct_keys(const Dataset& data, const QuerySpec& q) {
  const auto cols = q.key_columns();
  std::vector<std::size_t> idx;
  for (const auto& c : cols) {
    const auto dot = c.rfind('.');
    idx.push_back(data.column_index(dot == std::string::npos ? c : c.substr(dot + 1)));
  }
  std::set<std::vector<Value>> keys;
  for (const auto& e : data.rows()) {
    std::vector<Value> k;
    for (auto i : idx) k.push_back(e.columns[i]);
    keys.insert(std::move(k));
  }
  return keys.size();
}

PlanHints hints_for(const ExperimentConfig& c) {
  PlanHints h;
  const auto& ds = c.dataset;
  switch (ds.generator) {
    case Generator::Stream:
      h.stream_length = static_cast<double>(ds.n);
      h.distinct_keys = static_cast<double>(ds.distinct);
      break;
    case Generator::Points: h.stream_length = static_cast<double>(ds.n); break;
    case Generator::Join: h.stream_length = static_cast<double>(ds.left_rows); break;
    case Generator::Csv: {
      const Dataset data = load_csv(ds.path, infer_csv_schema(ds.path));
      h.stream_length = static_cast<double>(data.size());
      if (!c.query.key_columns().empty()) h.distinct_keys = static_cast<double>(distinct_keys(data, c.query));
      break;
    }
  }
  return h;
}

void check_dataset(const ExperimentConfig& c, Reader& r) {
  const auto& ds = c.dataset;
  const bool join = c.query.kind == QueryKind::Join;
  switch (ds.generator) {
    case Generator::Stream:
      if (ds.distinct > ds.n) r.problem("dataset.distinct: exceeds dataset.n");
      if (ds.n > 0 && ds.distinct == 0) r.problem("dataset.distinct: must be positive when dataset.n is");
      if (ds.value_min > ds.value_max) r.problem("dataset.value_min: exceeds dataset.value_max");
      if (ds.key_dist == KeyDistribution::Zipf && !(ds.zipf_s > 0)) r.problem("dataset.zipf_s: must be positive");
      break;
    case Generator::Points:
      if (ds.dims == 0) r.problem("dataset.dims: must be positive");
      break;
    case Generator::Join:
      if (!(ds.overlap >= 0 && ds.overlap <= 1)) r.problem("dataset.overlap: must lie in [0, 1]");
      if (std::llround(ds.overlap * static_cast<double>(ds.right_rows)) > static_cast<long long>(ds.left_rows)) {
        r.problem("dataset.overlap: more shared keys than dataset.left_rows");
      }
      break;
    case Generator::Csv:
      if (ds.path.empty()) {
        r.problem("dataset.path: required by generator = csv");
      } else if (!std::filesystem::is_regular_file(ds.path)) {
        r.problem("dataset.path: cannot read " + ds.path.string());
      }
      if (join && ds.right_path.empty()) r.problem("dataset.right_path: required by a join over CSV tables");
      if (!ds.right_path.empty() && !std::filesystem::is_regular_file(ds.right_path)) {
        r.problem("dataset.right_path: cannot read " + ds.right_path.string());
      }
      break;
  }
  if (join && ds.generator != Generator::Join && ds.generator != Generator::Csv) {
    r.problem("dataset.generator: a join needs generator = join or csv");
  }
  if (!join && ds.generator == Generator::Join) r.problem("dataset.generator: join tables need a join query");
}

TrialReport run_trial(const ExperimentConfig& c, const QueryPlan& shared, std::uint64_t seed) {
  TrialReport t;
  t.seed = seed;
  try {
    const Tables tables = make_tables(c, seed);
    QueryPlan plan = shared;
    plan.config.seed = derive_seed(seed, 1);
    ChannelConfig ch = c.channel;
    ch.seed = derive_seed(seed, 2);
    const RunOutcome out = run_query(plan, tables, c.profile, ch);
    t.stats = out.stats;
    t.result_rows = out.result.size();
    t.oracle_equal = out.result == oracle_execute(c.query, tables);
  } catch (const std::exception& e) {
    t.error = e.what();
  } catch (...) {
    t.error = "unknown exception";
  }
  return t;
}

std::string csv_field(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char ch) { return ch == ',' || ch == '\n' || ch == '\r'; }, ';');
  return s;
}

template <class F>
double mean_over(const std::vector<TrialReport>& trials, F f) {
  double sum = 0;
  std::size_t n = 0;
  for (const auto& t : trials) {
    if (!t.error.empty()) continue;
    sum += f(t);
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace

const char* to_string(Generator g) noexcept {
  switch (g) {
    case Generator::Stream: return "stream";
    case Generator::Points: return "points";
    case Generator::Join: return "join";
    case Generator::Csv: return "csv";
  }
  return "?";
}

std::string DatasetSpec::describe() const {
  std::ostringstream s;
  s << to_string(generator);
  switch (generator) {
    case Generator::Stream:
      s << " n=" << n << " distinct=" << distinct << ' '
        << (key_dist == KeyDistribution::Zipf ? "zipf s=" + std::to_string(zipf_s) : std::string("uniform"))
        << " values=[" << value_min << ',' << value_max << ']';
      break;
    case Generator::Points: s << " n=" << n << " dims=" << dims << " max=" << max_coord; break;
    case Generator::Join: s << " left=" << left_rows << " right=" << right_rows << " overlap=" << overlap; break;
    case Generator::Csv:
      s << ' ' << path.string();
      if (!right_path.empty()) s << ' ' << right_path.string();
      break;
  }
  if (shuffle) s << " shuffled";
  return s.str();
}

ExperimentConfig parse_experiment(std::string_view text, const std::filesystem::path& base) {
  ptree tree;
  try {
    std::istringstream in{std::string(text)};
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(e.message(), e.line());
  }
  Reader r(std::move(tree));
  ExperimentConfig c;

  if (auto v = r.text("experiment", "name")) c.name = *v;

  // [query]
  if (auto v = r.text("query", "text")) {
    c.query_text = *v;
    try {
      c.query = parse_query(*v);
    } catch (const Error& e) {
      r.problem("query.text: " + std::string(e.what()));
    }
  } else {
    r.problem("query.text: missing");
  }
  if (auto g = r.choice("query", "guarantee", {"deterministic", "probabilistic"}); g == "probabilistic") {
    double delta = 0;
    if (!r.has("query", "delta")) r.problem("query.delta: required by guarantee = probabilistic");
    r.real("query", "delta", delta);
    if (r.has("query", "delta") && !(delta > 0 && delta < 1)) r.problem("query.delta: must lie in (0, 1)");
    c.query.guarantee = Guarantee::with_probability(delta);
  } else if (r.has("query", "delta")) {
    r.problem("query.delta: only meaningful with guarantee = probabilistic");
  }
  if (auto h = r.choice("query", "heuristic", {"sum", "aph"})) {
    c.query.heuristic = *h == "sum" ? ScoreHeuristic::Sum : ScoreHeuristic::Aph;
  }

  // [algorithm]
  if (auto p = r.choice("algorithm", "params", {"auto", "manual"})) c.auto_params = *p == "auto";
  ManualParams& m = c.manual;
  r.uint("algorithm", "d", m.d, 1);
  r.uint("algorithm", "w", m.w, 1);
  if (auto p = r.choice("algorithm", "policy", {"lru", "fifo"})) {
    m.policy = *p == "fifo" ? ReplacementPolicy::Fifo : ReplacementPolicy::Lru;
  }
  r.uint("algorithm", "fingerprint_bits", m.fingerprint_bits);
  if (m.fingerprint_bits && *m.fingerprint_bits > 64) r.problem("algorithm.fingerprint_bits: at most 64");
  r.boolean("algorithm", "randomized_topn", m.randomized_topn);
  r.uint("algorithm", "bloom_bits", m.bloom_bits, 2);
  r.uint("algorithm", "bloom_hashes", m.bloom_hashes, 1);
  r.boolean("algorithm", "asymmetric_join", m.asymmetric_join);
  if (auto s = r.choice("algorithm", "build_side", {"a", "b"})) m.build_side = *s == "b" ? JoinSide::B : JoinSide::A;
  if (c.auto_params) {
    for (const char* key : {"d", "w", "policy", "fingerprint_bits", "randomized_topn", "bloom_bits", "bloom_hashes",
                            "asymmetric_join", "build_side"}) {
      if (r.has("algorithm", key)) r.problem(std::string("algorithm.") + key + ": needs params = manual");
    }
  }

  // [switch]
  r.uint("switch", "stages", c.profile.stages, 2);
  r.uint("switch", "alus_per_stage", c.profile.alus_per_stage, 1);
  r.uint("switch", "sram_bits_per_stage", c.profile.sram_bits_per_stage, 1);
  r.uint("switch", "tcam_entries", c.profile.tcam_entries);

  // [dataset]
  DatasetSpec& ds = c.dataset;
  if (auto g = r.choice("dataset", "generator", {"stream", "points", "join", "csv"})) {
    ds.generator = *g == "stream" ? Generator::Stream
                   : *g == "points" ? Generator::Points
                   : *g == "join"   ? Generator::Join
                                    : Generator::Csv;
  }
  r.uint("dataset", "n", ds.n);
  r.uint("dataset", "distinct", ds.distinct);
  if (auto k = r.choice("dataset", "key_dist", {"uniform", "zipf"})) {
    ds.key_dist = *k == "zipf" ? KeyDistribution::Zipf : KeyDistribution::Uniform;
  }
  r.real("dataset", "zipf_s", ds.zipf_s);
  r.uint("dataset", "value_min", ds.value_min);
  r.uint("dataset", "value_max", ds.value_max);
  r.uint("dataset", "dims", ds.dims);
  r.uint("dataset", "max_coord", ds.max_coord);
  r.uint("dataset", "left_rows", ds.left_rows);
  r.uint("dataset", "right_rows", ds.right_rows);
  r.real("dataset", "overlap", ds.overlap);
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_relative() && !base.empty() ? base / path : path;
  };
  if (auto p = r.text("dataset", "path")) ds.path = resolve(*p);
  if (auto p = r.text("dataset", "right_path")) ds.right_path = resolve(*p);
  r.boolean("dataset", "shuffle", ds.shuffle);

  // [run]
  if (auto s = r.text("run", "seeds")) {
    c.seeds = parse_seeds(*s, r);
    if (c.seeds.empty() && r.problems().empty()) r.problem("run.seeds: empty");
  } else {
    r.problem("run.seeds: missing");
  }
  ChannelConfig& ch = c.channel;
  r.real("run", "loss_rate", ch.loss_rate);
  if (!(ch.loss_rate >= 0 && ch.loss_rate < 1)) r.problem("run.loss_rate: must lie in [0, 1)");
  r.uint("run", "latency", ch.latency, 1);
  r.uint("run", "jitter", ch.jitter);
  r.uint("run", "timeout", ch.timeout, 1);
  if (ch.timeout <= 3 * (ch.latency + ch.jitter)) r.problem("run.timeout: must exceed 3 * (latency + jitter)");
  r.uint("run", "window", ch.window, 1);
  r.uint("run", "max_steps", ch.max_steps, 1);

  if (r.problems().empty()) check_dataset(c, r);
  if (r.problems().empty()) {
    try {
      const QueryPlan plan = experiment_plan(c);
      (void)make_pruner(plan.query, plan.config);
    } catch (const std::exception& e) {
      r.problem(std::string("algorithm: ") + e.what());
    }
  }
  if (!r.problems().empty()) throw ConfigError("invalid experiment: " + boost::join(r.problems(), "; "));
  return c;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return parse_experiment(s.str(), path.parent_path());
}

Tables make_tables(const ExperimentConfig& c, std::uint64_t seed) {
  const auto& ds = c.dataset;
  const std::string main = table_name(c.query.table);
  Tables t;
  switch (ds.generator) {
    case Generator::Stream: {
      StreamParams p;
      p.n = ds.n;
      p.distinct = ds.distinct;
      p.key_dist = ds.key_dist;
      p.zipf_s = ds.zipf_s;
      p.value_min = ds.value_min;
      p.value_max = ds.value_max;
      p.seed = seed;
      t.emplace(main, gen_stream(p));
      break;
    }
    case Generator::Points: t.emplace(main, gen_points(ds.n, ds.dims, ds.max_coord, seed)); break;
    case Generator::Join: {
      auto j = gen_join_tables(ds.left_rows, ds.right_rows, ds.overlap, seed);
      t.emplace(main, std::move(j.left));
      t.emplace(table_name(c.query.join_table), std::move(j.right));
      break;
    }
    case Generator::Csv: {
      auto load = [&](const std::filesystem::path& p, std::uint64_t s) {
        Dataset d = load_csv(p, infer_csv_schema(p));
        return ds.shuffle ? shuffle(d, s) : d;
      };
      t.emplace(main, load(ds.path, seed));
      if (!ds.right_path.empty()) t.emplace(table_name(c.query.join_table), load(ds.right_path, derive_seed(seed, 3)));
      break;
    }
  }
  return t;
}

QueryPlan experiment_plan(const ExperimentConfig& c) {
  const PlanHints hints = hints_for(c);
  if (c.auto_params) return plan_query(c.query, c.profile, hints);
  validate(c.query);
  QueryPlan plan;
  plan.query = c.query;
  PrunerConfig& p = plan.config;
  p = default_config(c.query);
  const ManualParams& m = c.manual;
  if (m.d) p.d = *m.d;
  if (m.w) p.w = *m.w;
  if (m.policy) p.policy = *m.policy;
  if (m.fingerprint_bits) p.fingerprint_bits = *m.fingerprint_bits;
  if (m.randomized_topn) p.randomized_topn = *m.randomized_topn;
  if (m.bloom_bits) p.bloom_bits = *m.bloom_bits;
  if (m.bloom_hashes) p.bloom_hashes = *m.bloom_hashes;
  if (m.asymmetric_join) p.asymmetric_join = *m.asymmetric_join;
  if (m.build_side) p.join_build_side = *m.build_side;
  p.alus_per_stage = c.profile.alus_per_stage;
  plan.footprint = estimate_resources(algorithm_params(c.query, p));
  plan.bounds = plan_bounds(c.query, p, hints);
  return plan;
}

double ExperimentReport::mean_pruning_fraction() const {
  return mean_over(trials, [](const TrialReport& t) { return t.stats.pruning_fraction(); });
}

double ExperimentReport::mean_unpruned() const {
  return mean_over(trials, [](const TrialReport& t) { return static_cast<double>(t.stats.forwarded); });
}

double ExperimentReport::mean_survivors() const {
  return mean_over(trials, [](const TrialReport& t) { return static_cast<double>(t.stats.survivors); });
}

std::size_t ExperimentReport::failures() const {
  return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const auto& t) { return !t.ok(); }));
}

double ExperimentReport::failure_fraction() const {
  return trials.empty() ? 0.0 : static_cast<double>(failures()) / static_cast<double>(trials.size());
}

bool ExperimentReport::passed() const {
  const bool threw = std::any_of(trials.begin(), trials.end(), [](const auto& t) { return !t.error.empty(); });
  return guarantee.probabilistic ? !threw : failures() == 0;
}

ExperimentReport run_experiment(const ExperimentConfig& c, Execution execution) {
  ExperimentReport rep;
  rep.name = c.name;
  rep.query = c.query_text;
  rep.kind = c.query.kind;
  rep.guarantee = c.query.guarantee;
  rep.plan = experiment_plan(c);
  rep.profile = c.profile;
  rep.dataset = c.dataset.describe();
  rep.loss_rate = c.channel.loss_rate;
  rep.trials.resize(c.seeds.size());
  const auto n = static_cast<std::ptrdiff_t>(c.seeds.size());
  if (execution == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) rep.trials[i] = run_trial(c, rep.plan, c.seeds[i]);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) rep.trials[i] = run_trial(c, rep.plan, c.seeds[i]);
  }
  return rep;
}

ExperimentReport run_experiment(const std::filesystem::path& config, Execution execution) {
  return run_experiment(load_experiment(config), execution);
}

void write_report_csv(std::ostream& out, const ExperimentReport& r) {
  out << "seed,total,forwarded,pruned,pruning_fraction,survivors,retransmissions,acks,lost,steps,"
         "sequence_violations,accounting_violations,result_rows,oracle_equal,error\n";
  for (const auto& t : r.trials) {
    const RunStats& s = t.stats;
    out << t.seed << ',' << s.total << ',' << s.forwarded << ',' << s.pruned << ',' << std::fixed
        << std::setprecision(6) << s.pruning_fraction() << std::defaultfloat << ',' << s.survivors << ','
        << s.retransmissions << ',' << s.acks << ',' << s.lost << ',' << s.steps << ',' << s.sequence_violations << ','
        << s.accounting_violations << ',' << t.result_rows << ',' << (t.oracle_equal ? 1 : 0) << ','
        << csv_field(t.error) << '\n';
  }
}

std::string report_json(const ExperimentReport& r) {
  const PrunerConfig& c = r.plan.config;
  json params = {{"algorithm", to_string(r.plan.footprint.params.algorithm)},
                 {"d", c.d},
                 {"w", c.w},
                 {"policy", to_string(c.policy)},
                 {"fingerprint_bits", c.fingerprint_bits},
                 {"randomized_topn", c.randomized_topn},
                 {"bloom_bits", c.bloom_bits},
                 {"bloom_hashes", c.bloom_hashes},
                 {"asymmetric_join", c.asymmetric_join},
                 {"build_side", c.join_build_side == JoinSide::A ? "a" : "b"}};
  const auto& f = r.plan.footprint.total;
  json bounds = json::object();
  for (const auto& [name, value] : r.plan.bounds) bounds[name] = value;
  json trials = json::array();
  std::uint64_t retrans = 0;
  std::uint64_t acks = 0;
  for (const auto& t : r.trials) {
    retrans += t.stats.retransmissions;
    acks += t.stats.acks;
    json j = {{"seed", t.seed},
              {"pruning_fraction", t.stats.pruning_fraction()},
              {"unpruned", t.stats.forwarded},
              {"survivors", t.stats.survivors},
              {"retransmissions", t.stats.retransmissions},
              {"acks", t.stats.acks},
              {"oracle_equal", t.oracle_equal}};
    if (!t.error.empty()) j["error"] = t.error;
    trials.push_back(std::move(j));
  }
  std::vector<std::uint64_t> seeds;
  for (const auto& t : r.trials) seeds.push_back(t.seed);
  json doc = {
      {"name", r.name},
      {"query", r.query},
      {"kind", to_string(r.kind)},
      {"guarantee", r.guarantee.probabilistic ? json{{"probabilistic", true}, {"delta", r.guarantee.delta}}
                                              : json{{"probabilistic", false}}},
      {"params", params},
      {"footprint", {{"stages", f.stages}, {"alus", f.alus}, {"sram_bits", f.sram_bits}, {"tcam_entries", f.tcam_entries}}},
      {"profile",
       {{"stages", r.profile.stages},
        {"alus_per_stage", r.profile.alus_per_stage},
        {"sram_bits_per_stage", r.profile.sram_bits_per_stage},
        {"tcam_entries", r.profile.tcam_entries}}},
      {"dataset", r.dataset},
      {"loss_rate", r.loss_rate},
      {"seeds", seeds},
      {"bounds", bounds},
      {"summary",
       {{"trials", r.trials.size()},
        {"mean_pruning_fraction", r.mean_pruning_fraction()},
        {"mean_unpruned", r.mean_unpruned()},
        {"mean_survivors", r.mean_survivors()},
        {"retransmissions", retrans},
        {"acks", acks},
        {"failures", r.failures()},
        {"failure_fraction", r.failure_fraction()},
        {"passed", r.passed()}}},
      {"trials", trials},
  };
  return doc.dump(2);
}

}  // namespace netprune
