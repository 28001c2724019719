// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "netprune/algorithms/pruner.hpp"
#include "netprune/core/errors.hpp"
#include "netprune/core/generate.hpp"
#include "netprune/core/hash.hpp"
#include "netprune/planner/bounds.hpp"
#include "netprune/planner/plan.hpp"
#include "netprune/planner/resources.hpp"
#include "netprune/runner/end_to_end.hpp"
#include "netprune/runner/experiment.hpp"
#include "netprune/switchsim/aph.hpp"
#include "netprune/switchsim/pipeline.hpp"
#include "netprune/transport/channel.hpp"
#include "scenarios.hpp"

using namespace netprune;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, const char* title, const std::function<Verdict()>& check) {
  const auto t0 = Clock::now();
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("threw: ") + e.what()};
  }
  if (!v.pass) ++failures;
  std::printf("criterion %2d %s  %s: %s (%.1f s)\n", n, v.pass ? "PASS" : "FAIL", title, v.detail.c_str(),
              seconds_since(t0));
  std::fflush(stdout);
}

template <class... T>
std::string str(const T&... parts) {
  std::ostringstream s;
  (s << ... << parts);
  return s.str();
}

// 1 -----------------------------------------------------------------------

Verdict planner_golden() {
  const auto t0 = Clock::now();
  const auto w600 = topn_width(600, 1000, 1e-4);
  const auto w8000 = topn_width(8000, 1000, 1e-4);
  const auto w200 = topn_width(200, 1000, 1e-4);
  const auto opt = topn_optimize(1000, 1e-4);
  const double t = seconds_since(t0);
  const bool ok = w600 == 16 && w8000 == 5 && w200 == 288 && opt == TopNShape{481, 19} && t < 1.0;
  return {ok, str("widths 600->", w600, " 8000->", w8000, " 200->", w200, ", optimum (", opt.d, ",", opt.w, ") in ", t,
                  " s")};
}

// 2 -----------------------------------------------------------------------

Verdict fingerprint_reach() {
  // Largest D with fingerprint_bits(D) <= 64 by bisection on D.
  std::uint64_t lo = 1;
  std::uint64_t hi = std::uint64_t{1} << 40;
  if (fingerprint_bits(static_cast<double>(lo), 1000, 1e-4) > 64) return {false, "even D = 1 needs over 64 bits"};
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (fingerprint_bits(static_cast<double>(mid), 1000, 1e-4) <= 64 ? lo : hi) = mid;
  }
  const bool in_range = lo >= 490'000'000 && lo <= 510'000'000;
  // The bisection assumes monotone widths; probe a grid below the answer.
  bool monotone = true;
  unsigned last = 0;
  for (double D = 1; D <= static_cast<double>(lo); D *= 1.01) {
    const unsigned f = fingerprint_bits(D, 1000, 1e-4);
    if (f < last) monotone = false;
    last = f;
  }
  return {in_range && monotone, str("largest D = ", lo, monotone ? "" : " (widths not monotone in D)")};
}

// 3 -----------------------------------------------------------------------

Verdict resource_table() {
  // Default rows of the resource table with A = 4 ALUs per stage.
  const std::map<std::string, ResourceFootprint> expected = {
      {"distinct-fifo", {1, 2, 4096 * 2 * 64, 0}},
      {"distinct-lru", {2, 2, 4096 * 2 * 64, 0}},
      {"skyline-sum", {1 + 20, 2 - 1 + 10 * 3, 10 * 3 * 64, 0}},
      {"skyline-aph", {1 + 22, 2 - 1 + 10 * 3, 10 * 3 * 64 + 65536 * 32, 64 * 2}},
      {"topn-det", {5, 5, 5 * 64, 0}},
      {"topn-rand", {4, 4, 4096 * 4 * 64, 0}},
      {"groupby", {8, 8, 4096 * 8 * 64, 0}},
      {"join-bf", {2, 3, std::uint64_t{32} << 20, 0}},
      {"join-rbf", {1, 1, (std::uint64_t{32} << 20) + 41664 * 64, 0}},  // C(64,3) = 41664
      {"having-sketch", {1, 3, 3 * 1024 * 64, 0}},
  };
  std::set<std::string> seen;
  std::string bad;
  for (const auto& row : default_rows(4)) {
    const auto it = expected.find(row.name);
    if (it == expected.end()) continue;
    seen.insert(row.name);
    const auto f = estimate_resources(row.params).total;
    if (!(f == it->second)) {
      bad += str(" ", row.name, "=(", f.stages, ",", f.alus, ",", f.sram_bits, ",", f.tcam_entries, ")");
    }
  }
  const bool ok = bad.empty() && seen.size() == expected.size();
  return {ok, ok ? str(seen.size(), " rows match") : str("mismatch:", bad, " rows seen ", seen.size())};
}

// 4, 9, 11 ----------------------------------------------------------------

struct HarnessStats {
  std::size_t runs = 0;
  std::size_t oracle_mismatches = 0;
  std::map<std::string, std::size_t> mismatches_by_kind;
  std::string first_mismatch;
  // 9
  std::size_t join_runs = 0;
  std::size_t matched_keys_pruned = 0;
  std::size_t having_runs = 0;
  std::size_t answer_keys_missing = 0;
  // 11
  std::size_t packets_compared = 0;
  std::size_t decision_mismatches = 0;
  std::size_t channel_mismatches = 0;
  std::size_t invariant_errors = 0;
  std::string first_decision_mismatch;
};

void replay_prunes(const QueryPlan& plan, const RunOutcome& out, HarnessStats& h) {
  // Fresh switch pipeline and fresh reference pruner fed the same packets.
  Pipeline pipe = build_pipeline({plan}, SwitchProfile{});
  for (const auto& pass : out.passes) {
    for (const auto& f : pass) {
      pipe.bind(f.spec.fid, 0, FlowRole{f.side == 0 ? JoinSide::A : JoinSide::B, static_cast<std::uint8_t>(f.spec.pass)});
    }
  }
  auto ref = make_pruner(plan.query, plan.config);
  for (const auto& pass : out.passes) {
    for (const auto& f : pass) {
      const FlowRole role{f.side == 0 ? JoinSide::A : JoinSide::B, static_cast<std::uint8_t>(f.spec.pass)};
      std::vector<std::uint32_t> pruned;
      for (std::size_t i = 0; i < f.spec.entries.size(); ++i) {
        const auto seq = static_cast<std::uint32_t>(i + 1);
        const auto& v = f.spec.entries[i];
        const Decision sw = pipe.process({f.spec.fid, seq, v}).decision;
        const Decision rf = ref->process({seq, v}, role);
        ++h.packets_compared;
        if (sw != rf) {
          ++h.decision_mismatches;
          if (h.first_decision_mismatch.empty()) {
            h.first_decision_mismatch = str(render_query(plan.query), " fid ", f.spec.fid, " seq ", seq);
          }
        }
        if (sw == Decision::Prune) pruned.push_back(seq);
      }
      if (pruned != f.switch_pruned) ++h.channel_mismatches;
    }
    const int p = pass.front().spec.pass;
    pipe.finish_pass(0, p);
    ref->finish_pass(p);
  }
}

std::size_t column(const Dataset& d, const std::string& name) {
  const auto dot = name.rfind('.');
  return d.column_index(dot == std::string::npos ? name : name.substr(dot + 1));
}

void one_sided_checks(const scenarios::Scenario& s, const QueryResult& oracle, const RunOutcome& out,
                      HarnessStats& h) {
  const QuerySpec& q = s.query;
  if (q.kind == QueryKind::Join) {
    ++h.join_runs;
    const Dataset* side[2] = {&find_table(s.tables, q.table), &find_table(s.tables, q.join_table)};
    const std::size_t key[2] = {column(*side[0], q.join_left), column(*side[1], q.join_right)};
    std::set<Value> keys[2];
    for (int k = 0; k < 2; ++k) {
      for (const auto& e : side[k]->rows()) keys[k].insert(e.columns[key[k]]);
    }
    for (const auto& pass : out.passes) {
      for (const auto& f : pass) {
        const bool absorbed = !s.config.asymmetric_join && f.spec.pass == 1;
        if (absorbed) continue;
        for (const auto seq : f.switch_pruned) {
          const Value& v = side[f.side]->row(f.rows[seq - 1]).columns[key[f.side]];
          if (keys[1 - f.side].contains(v)) ++h.matched_keys_pruned;
        }
      }
    }
  }
  if (q.kind == QueryKind::Having && (q.having_fn == Aggregate::Sum || q.having_fn == Aggregate::Count)) {
    ++h.having_runs;
    const Dataset& t = find_table(s.tables, q.table);
    std::vector<std::size_t> idx;
    for (const auto& g : q.group_by) idx.push_back(column(t, g));
    const auto& first = out.passes.front().front();
    std::set<std::uint32_t> pruned(first.switch_pruned.begin(), first.switch_pruned.end());
    std::set<std::vector<Value>> candidates;
    for (std::size_t i = 0; i < first.rows.size(); ++i) {
      if (pruned.contains(static_cast<std::uint32_t>(i + 1))) continue;
      std::vector<Value> k;
      for (auto c : idx) k.push_back(t.row(first.rows[i]).columns[c]);
      candidates.insert(std::move(k));
    }
    for (const auto& row : oracle.rows()) {
      if (!candidates.contains(row)) ++h.answer_keys_missing;
    }
  }
}

HarnessStats& harness() {
  static HarnessStats h = [] {
    HarnessStats h;
    const double losses[] = {0.0, 0.1, 0.3};
    for (const auto kind : scenarios::kAll) {
      for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto s = scenarios::make(kind, seed, 10'000);
        const QueryPlan plan = scenarios::plan_of(s.query, s.config);
        const QueryResult oracle = oracle_execute(s.query, s.tables);
        for (const double loss : losses) {
          ++h.runs;
          ChannelConfig ch;
          ch.loss_rate = loss;
          ch.jitter = loss > 0 ? 2 : 0;
          ch.seed = derive_seed(seed, static_cast<std::uint64_t>(loss * 10));
          try {
            const RunOutcome out = run_query(plan, s.tables, SwitchProfile{}, ch);
            if (!(out.result == oracle)) {
              ++h.oracle_mismatches;
              ++h.mismatches_by_kind[scenarios::name(kind)];
              if (h.first_mismatch.empty()) h.first_mismatch = str(scenarios::name(kind), " seed ", seed, " loss ", loss);
            }
            one_sided_checks(s, oracle, out, h);
            replay_prunes(plan, out, h);
          } catch (const InvariantError& e) {
            ++h.invariant_errors;
            ++h.oracle_mismatches;
            if (h.first_mismatch.empty()) h.first_mismatch = str(scenarios::name(kind), " seed ", seed, ": ", e.what());
          }
        }
      }
    }
    return h;
  }();
  return h;
}

Verdict oracle_equivalence() {
  const auto& h = harness();
  std::string by_kind;
  for (const auto& [k, n] : h.mismatches_by_kind) by_kind += str(" ", k, "=", n);
  return {h.oracle_mismatches == 0 && h.runs == 12 * 200 * 3,
          str(h.runs - h.oracle_mismatches, "/", h.runs, " runs equal the oracle",
              h.first_mismatch.empty() ? "" : "; first mismatch " + h.first_mismatch, by_kind)};
}

// 5 -----------------------------------------------------------------------

Verdict distinct_bound() {
  const QuerySpec q = parse_query("SELECT DISTINCT key FROM t");
  PrunerConfig c = default_config(q);
  c.d = 1000;
  c.w = 24;
  double sum = 0;
  const int seeds = 20;
  for (int seed = 1; seed <= seeds; ++seed) {
    StreamParams p;
    p.n = 150'000;
    p.distinct = 15'000;
    p.seed = static_cast<std::uint64_t>(seed);
    const Dataset data = gen_stream(p);
    c.seed = derive_seed(static_cast<std::uint64_t>(seed), 1);
    auto pruner = make_pruner(q, c);
    std::size_t pruned = 0;
    for (const auto& e : data.rows()) {
      const std::uint64_t key = e.columns[0].as_uint();
      if (pruner->process({e.id, std::span(&key, 1)}, {}) == Decision::Prune) ++pruned;
    }
    sum += static_cast<double>(pruned) / static_cast<double>(p.n - p.distinct);
  }
  const double mean = sum / seeds;
  const double predicted = distinct_expected_prune_fraction(15000, 1000, 24).value_or(0);
  return {mean >= 0.55, str("mean duplicate-prune fraction ", mean, " (analytic lower estimate ", predicted, ")")};
}

// 6 -----------------------------------------------------------------------

std::uint64_t topn_unpruned(std::uint64_t m, std::uint64_t seed) {
  QuerySpec q = parse_query("SELECT TOP 1000 * FROM t ORDER BY v");
  q.guarantee = Guarantee::with_probability(1e-4);
  PrunerConfig c = default_config(q);
  c.randomized_topn = true;
  c.d = 600;
  c.w = 16;
  c.seed = derive_seed(seed, 1);
  auto pruner = make_pruner(q, c);
  std::mt19937_64 rng(seed);
  std::uint64_t forwarded = 0;
  for (std::uint64_t i = 1; i <= m; ++i) {
    const std::uint64_t v = rng();
    if (pruner->process({static_cast<std::uint32_t>(i), std::span(&v, 1)}, {}) == Decision::Forward) ++forwarded;
  }
  return forwarded;
}

Verdict topn_bound() {
  const double bound = topn_expected_unpruned(1e6, 16, 600);
  double sum = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) sum += static_cast<double>(topn_unpruned(1'000'000, seed));
  const double mean = sum / 10;
  const double bound8m = topn_expected_unpruned(8e6, 16, 600);
  const auto at8m = topn_unpruned(8'000'000, 11);
  const double pruned8m = 1.0 - static_cast<double>(at8m) / 8e6;
  const bool ok = mean <= 1.1 * bound && static_cast<double>(at8m) <= 1.1 * bound8m && pruned8m >= 0.99;
  return {ok, str("m=1e6 mean unpruned ", mean, " vs 1.1 x ", bound, "; m=8e6 unpruned ", at8m, " vs 1.1 x ", bound8m,
                  ", pruned ", pruned8m)};
}

// 7 -----------------------------------------------------------------------

Verdict calibration() {
  const std::string topn = R"(
[query]
text = SELECT TOP 100 * FROM t ORDER BY value
guarantee = probabilistic
delta = 0.05
[dataset]
n = 20000
distinct = 20000
value_max = 1000000000000
[run]
seeds = 1..500
)";
  const std::string distinct = R"(
[query]
text = SELECT DISTINCT key FROM t
guarantee = probabilistic
delta = 0.05
[dataset]
n = 6000
distinct = 3000
[run]
seeds = 1..500
)";
  const auto rt = run_experiment(parse_experiment(topn));
  const auto rd = run_experiment(parse_experiment(distinct));
  const bool ok = rt.trials.size() == 500 && rd.trials.size() == 500 && rt.passed() && rd.passed() &&
                  rt.failure_fraction() <= 0.08 && rd.failure_fraction() <= 0.08;
  return {ok, str("TOP N (d,w)=(", rt.plan.config.d, ",", rt.plan.config.w, ") failures ", rt.failure_fraction(),
                  "; DISTINCT ", rd.plan.config.fingerprint_bits, "-bit fingerprints failures ", rd.failure_fraction())};
}

// 8 -----------------------------------------------------------------------

Verdict skyline_safety() {
  std::size_t lost = 0;
  std::size_t runs = 0;
  std::size_t pruned_total = 0;
  for (const std::size_t dims : {2, 3}) {
    for (const auto h : {ScoreHeuristic::Sum, ScoreHeuristic::Aph}) {
      QuerySpec q = parse_query(dims == 2 ? "SELECT * FROM t SKYLINE OF d1, d2" : "SELECT * FROM t SKYLINE OF d1, d2, d3");
      q.heuristic = h;
      PrunerConfig c = default_config(q);
      c.w = 10;
      for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        ++runs;
        const Dataset data = gen_points(10'000, dims, 1'000'000, seed);
        const auto sky = oracle_execute(q, {{"t", data}});
        std::set<std::uint64_t> ids;
        for (const auto& r : sky.rows()) ids.insert(r[0].as_uint());
        c.seed = seed;
        auto pruner = make_pruner(q, c);
        for (const auto& e : data.rows()) {
          std::vector<std::uint64_t> x;
          for (std::size_t k = 1; k <= dims; ++k) x.push_back(e.columns[k].as_uint());
          if (pruner->process({e.id, x}, {}) == Decision::Prune) {
            ++pruned_total;
            if (ids.contains(e.columns[0].as_uint())) ++lost;
          }
        }
      }
    }
  }
  // APH score never decreases along dominance.
  std::mt19937_64 rng(99);
  std::size_t violations = 0;
  const LogTable& table = LogTable::standard();
  for (int i = 0; i < 100'000; ++i) {
    const std::size_t dims = 2 + rng() % 4;
    const unsigned bits = 1 + static_cast<unsigned>(rng() % 64);
    std::vector<std::uint64_t> p(dims);
    std::vector<std::uint64_t> q(dims);
    for (std::size_t k = 0; k < dims; ++k) {
      p[k] = bits == 64 ? rng() : rng() % (std::uint64_t{1} << bits);
      q[k] = rng() % 3 == 0 ? p[k] : (p[k] == 0 ? 0 : rng() % p[k]);
    }
    if (p == q) {
      if (p[0] == UINT64_MAX) continue;
      ++p[0];
    }
    if (aph_score(p, table) < aph_score(q, table)) ++violations;
  }
  return {lost == 0 && violations == 0,
          str(lost, " skyline points pruned over ", runs, " runs (", pruned_total, " dominated points pruned); ",
              violations, " APH monotonicity violations in 1e5 pairs")};
}

// 9 -----------------------------------------------------------------------

Verdict one_sided() {
  const auto& h = harness();
  // Bloom false-forward rate against (1 - e^{-Hn/M})^H.
  std::string bloom;
  bool bloom_ok = true;
  const QuerySpec q = parse_query("SELECT * FROM A JOIN B ON A.k = B.k");
  for (const auto& [n, m, hashes] : std::vector<std::tuple<std::uint64_t, std::uint64_t, unsigned>>{
           {5000, 65536, 3}, {20000, 1 << 18, 4}, {1000, 8192, 2}, {30000, 1 << 17, 1}}) {
    PrunerConfig c = default_config(q);
    c.bloom_bits = 2 * m;
    c.bloom_hashes = hashes;
    c.seed = n;
    auto pruner = make_pruner(q, c);
    std::mt19937_64 rng(n * 7 + hashes);
    std::set<std::uint64_t> members;
    for (std::uint32_t i = 1; members.size() < n; ++i) {
      const std::uint64_t k = rng();
      if (!members.insert(k).second) continue;
      pruner->process({i, std::span(&k, 1)}, {JoinSide::A, 1});
    }
    pruner->finish_pass(1);
    std::uint64_t probes = 0;
    std::uint64_t forwarded = 0;
    for (std::uint32_t i = 1; probes < 100'000; ++i) {
      const std::uint64_t k = rng();
      if (members.contains(k)) continue;
      ++probes;
      if (pruner->process({i, std::span(&k, 1)}, {JoinSide::B, 2}) == Decision::Forward) ++forwarded;
    }
    const double rate = static_cast<double>(forwarded) / static_cast<double>(probes);
    const double fp = std::pow(1 - std::exp(-static_cast<double>(hashes * n) / static_cast<double>(m)), hashes);
    if (rate > 2 * fp) bloom_ok = false;
    bloom += str(" ", rate, "<=2x", fp);
  }
  const bool ok = h.join_runs > 0 && h.having_runs > 0 && h.matched_keys_pruned == 0 && h.answer_keys_missing == 0 &&
                  bloom_ok;
  return {ok, str(h.matched_keys_pruned, " matched join keys pruned in ", h.join_runs, " runs; ", h.answer_keys_missing,
                  " HAVING answers missing from candidates in ", h.having_runs, " runs; false-forward", bloom)};
}

// 10 ----------------------------------------------------------------------

Verdict protocol_robustness() {
  // Every first prune ACK from the switch is lost, so each pruned entry is
  // retransmitted and forwarded unprocessed to the master.
  std::size_t runs = 0;
  std::size_t equal = 0;
  std::uint64_t rescued = 0;
  for (const auto kind : {scenarios::Kind::Distinct, scenarios::Kind::TopNDet, scenarios::Kind::GroupByMax,
                          scenarios::Kind::Join, scenarios::Kind::HavingSum, scenarios::Kind::SkylineAph,
                          scenarios::Kind::Filter}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto s = scenarios::make(kind, seed, 3000);
      std::set<std::pair<std::uint16_t, std::uint32_t>> dropped;
      ChannelConfig ch;
      ch.loss_rate = 0.1;
      ch.seed = seed;
      ch.force_drop = [&](Link l, const Packet& p) {
        return l == Link::SwitchToWorker && p.type == PacketType::Ack && dropped.insert({p.fid, p.seq}).second;
      };
      const auto out = run_query(scenarios::plan_of(s.query, s.config), s.tables, SwitchProfile{}, ch);
      ++runs;
      if (out.result == oracle_execute(s.query, s.tables)) ++equal;
      if (out.stats.survivors > out.stats.forwarded) rescued += out.stats.survivors - out.stats.forwarded;
    }
  }
  // Loss 0.5 fuzzing of 1e5 packets.
  const QuerySpec q = parse_query("SELECT DISTINCT k FROM t");
  PrunerConfig c = default_config(q);
  c.d = 256;
  QueryPlan plan = scenarios::plan_of(q, c);
  Pipeline pipe = build_pipeline({plan}, SwitchProfile{});
  pipe.bind(1, 0, FlowRole{});
  std::mt19937_64 rng(5);
  std::vector<std::vector<std::uint64_t>> entries;
  for (int i = 0; i < 100'000; ++i) entries.push_back({rng() % 5000});
  ChannelConfig ch;
  ch.loss_rate = 0.5;
  ch.seed = 17;
  ch.jitter = 3;
  ch.timeout = 32;
  ch.window = 16;
  const auto r = channel_run(pipe, {FlowSpec{1, 1, entries}}, ch);
  auto ref = make_pruner(q, c);
  std::vector<std::uint32_t> expected;
  for (std::uint32_t i = 1; i <= entries.size(); ++i) {
    if (ref->process({i, entries[i - 1]}, {}) == Decision::Prune) expected.push_back(i);
  }
  const auto& f = r.flows.front();
  const bool fuzz_ok = r.completed && r.stats.sequence_violations == 0 && r.stats.accounting_violations == 0 &&
                       f.switch_pruned == expected && f.delivered.size() + f.pruned.size() == entries.size();
  return {equal == runs && rescued > 0 && fuzz_ok,
          str(equal, "/", runs, " adversarial runs equal the oracle (", rescued,
              " pruned entries reached the master); loss 0.5 fuzz: ", r.stats.lost, " losses, ",
              r.stats.sequence_violations, " sequence violations, ", r.stats.accounting_violations,
              " accounting violations, decisions ", f.switch_pruned == expected ? "equal" : "differ")};
}

// 11 ----------------------------------------------------------------------

Verdict switch_equivalence() {
  const auto& h = harness();
  return {h.decision_mismatches == 0 && h.channel_mismatches == 0 && h.invariant_errors == 0 && h.packets_compared > 0,
          str(h.packets_compared, " packets replayed, ", h.decision_mismatches, " pipeline/reference mismatches",
              h.first_decision_mismatch.empty() ? "" : " (first " + h.first_decision_mismatch + ")", ", ",
              h.channel_mismatches, " flows whose channel-run prunes differ, ", h.invariant_errors,
              " pipeline constraint errors")};
}

}  // namespace

int main() {
  report(1, "planner golden values", planner_golden);
  report(2, "fingerprint reach", fingerprint_reach);
  report(3, "resource table", resource_table);
  report(4, "oracle equivalence", oracle_equivalence);
  report(5, "DISTINCT pruning bound", distinct_bound);
  report(6, "TOP N pruning bound", topn_bound);
  report(7, "randomized guarantee calibration", calibration);
  report(8, "skyline safety", skyline_safety);
  report(9, "JOIN/HAVING one-sidedness", one_sided);
  report(10, "protocol robustness", protocol_robustness);
  report(11, "switchsim equivalence", switch_equivalence);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
