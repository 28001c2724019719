#include <sstream>
#include <string>

#include <json.hpp>

#include "doctest.h"
#include "netprune/core/errors.hpp"
#include "netprune/planner/bounds.hpp"
#include "netprune/runner/experiment.hpp"

using namespace netprune;

namespace {

std::string config(const std::string& query, const std::string& dataset, const std::string& run,
                   const std::string& algorithm = "params = auto") {
  return "[experiment]\nname = t\n[query]\ntext = " + query + "\n[algorithm]\n" + algorithm + "\n[dataset]\n" +
         dataset + "\n[run]\n" + run + "\n";
}

std::string csv_of(const ExperimentReport& r) {
  std::ostringstream s;
  write_report_csv(s, r);
  return s.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_experiment(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("experiment config: every section is read") {
  const auto c = parse_experiment(R"(; comment
[experiment]
name = sweep
[query]
text = SELECT DISTINCT key FROM t
guarantee = probabilistic
delta = 0.05
[algorithm]
params = manual
d = 256
w = 2
policy = fifo
fingerprint_bits = 40
[switch]
stages = 12
alus_per_stage = 2
[dataset]
generator = stream
n = 500
distinct = 50
key_dist = zipf
zipf_s = 1.3
[run]
seeds = 3, 7..9
loss_rate = 0.25
jitter = 1
timeout = 40
window = 8
)");
  CHECK(c.name == "sweep");
  CHECK(c.query.kind == QueryKind::Distinct);
  CHECK(c.query.guarantee == Guarantee::with_probability(0.05));
  CHECK_FALSE(c.auto_params);
  CHECK(c.manual.d == 256u);
  CHECK(c.manual.policy == ReplacementPolicy::Fifo);
  CHECK(c.manual.fingerprint_bits == 40u);
  CHECK(c.profile.stages == 12);
  CHECK(c.profile.alus_per_stage == 2);
  CHECK(c.dataset.key_dist == KeyDistribution::Zipf);
  CHECK(c.dataset.zipf_s == doctest::Approx(1.3));
  CHECK(c.seeds == std::vector<std::uint64_t>{3, 7, 8, 9});
  CHECK(c.channel.loss_rate == 0.25);
  CHECK(c.channel.timeout == 40);
  CHECK(c.channel.window == 8);

  const QueryPlan p = experiment_plan(c);
  CHECK(p.config.d == 256);
  CHECK(p.config.w == 2);
  CHECK(p.config.fingerprint_bits == 40);
  CHECK(p.config.alus_per_stage == 2);
}

TEST_CASE("experiment config: errors list every bad field") {
  const auto e = error_of(R"(
[query]
text = SELECT DISTINCT key FROM t
colour = red
[algorithm]
d = 12
[dataset]
n = many
key_dist = normal
[run]
loss_rate = 1.5
[extra]
x = 1
)");
  for (const char* field : {"query.colour", "algorithm.d: needs params = manual", "dataset.n", "dataset.key_dist",
                            "run.loss_rate", "run.seeds: missing", "[extra]"}) {
    CAPTURE(field);
    CHECK(e.find(field) != std::string::npos);
  }
}

TEST_CASE("experiment config: semantic checks") {
  CHECK(error_of(config("SELECT DISTINCT key FROM t", "n = 5\ndistinct = 9", "seeds = 1")).find("dataset.distinct") !=
        std::string::npos);
  CHECK(error_of(config("SELECT DISTINCT key FROM t", "generator = join", "seeds = 1")).find("join query") !=
        std::string::npos);
  CHECK(error_of(config("SELECT * FROM A JOIN B ON A.key = B.key", "generator = stream", "seeds = 1"))
            .find("a join needs") != std::string::npos);
  CHECK(error_of(config("SELECT DISTINCT key FROM t", "generator = csv", "seeds = 1")).find("dataset.path") !=
        std::string::npos);
  CHECK(error_of(config("SELECT DISTINCT key FROM t", "n = 10", "seeds = 1, 1")).find("repeat") != std::string::npos);
  CHECK(error_of(config("SELECT DISTINCT key FROM t", "n = 10", "seeds = 5..2")).find("run.seeds") !=
        std::string::npos);
  CHECK(error_of(config("SELECT DISTINCT key FROM t", "n = 10", "seeds = 1\ntimeout = 3")).find("run.timeout") !=
        std::string::npos);
  CHECK(error_of(config("SELECT FROM", "n = 10", "seeds = 1")).find("query.text") != std::string::npos);
  // A manual configuration the algorithm rejects.
  CHECK(error_of(config("SELECT TOP 100 * FROM t ORDER BY value\nguarantee = probabilistic\ndelta = 0.05",
                        "n = 10\ndistinct = 10", "seeds = 1", "params = manual\nrandomized_topn = true\nd = 10"))
            .find("algorithm: d >= N*e/ln(1/delta) violated") != std::string::npos);
  CHECK_THROWS_AS(parse_experiment("[query\ntext = x"), ParseError);
  CHECK_THROWS_AS(load_experiment("/nonexistent/exp.ini"), std::runtime_error);
}

TEST_CASE("experiment: deterministic queries match the oracle on every seed, serial and parallel alike") {
  const std::pair<const char*, const char*> cases[] = {
      {"SELECT DISTINCT key FROM t", "n = 3000\ndistinct = 400"},
      {"SELECT TOP 20 * FROM t ORDER BY value", "n = 3000\ndistinct = 3000"},
      {"SELECT key, MAX(value) FROM t GROUP BY key", "n = 3000\ndistinct = 300"},
      {"SELECT key FROM t GROUP BY key HAVING SUM(value) > 2000000", "n = 2000\ndistinct = 300"},
      {"SELECT * FROM t SKYLINE OF d1, d2, d3", "generator = points\nn = 2000\ndims = 3"},
      {"SELECT * FROM L JOIN R ON L.key = R.key", "generator = join\nleft_rows = 800\nright_rows = 900"},
  };
  for (const auto& [query, dataset] : cases) {
    CAPTURE(query);
    const auto c = parse_experiment(config(query, dataset, "seeds = 1..4\nloss_rate = 0.1\njitter = 1"));
    const auto par = run_experiment(c, Execution::Parallel);
    const auto ser = run_experiment(c, Execution::Serial);
    CHECK(par.passed());
    CHECK(par.failures() == 0);
    CHECK(csv_of(par) == csv_of(ser));
    for (const auto& t : par.trials) {
      CHECK(t.error.empty());
      CHECK(t.oracle_equal);
      CHECK(t.stats.pruning_fraction() == doctest::Approx(1.0 - double(t.stats.forwarded) / double(t.stats.total)));
      CHECK(t.stats.sequence_violations == 0);
      CHECK(t.stats.accounting_violations == 0);
    }
  }
}

TEST_CASE("experiment: CSV tables are loaded and shuffled per seed") {
  const std::string dir = NETPRUNE_TEST_DATA;
  const auto c = parse_experiment(config("SELECT * FROM Products JOIN Ratings ON Products.name = Ratings.name",
                                         "generator = csv\npath = products.csv\nright_path = ratings.csv\nshuffle = yes",
                                         "seeds = 1..3"),
                                  dir);
  const auto t1 = make_tables(c, 1);
  CHECK(t1.at("Products").size() == 4);
  CHECK(t1.at("Ratings").size() == 5);
  const auto r = run_experiment(c);
  CHECK(r.passed());
  for (const auto& t : r.trials) CHECK(t.result_rows == 4);
}

TEST_CASE("experiment: zero-length dataset has pruning fraction 1 and an empty result") {
  const auto r = run_experiment(parse_experiment(config("SELECT DISTINCT key FROM t", "n = 0\ndistinct = 0", "seeds = 1")));
  REQUIRE(r.trials.size() == 1);
  CHECK(r.trials[0].ok());
  CHECK(r.trials[0].stats.total == 0);
  CHECK(r.trials[0].stats.pruning_fraction() == 1.0);
  CHECK(r.trials[0].result_rows == 0);
  CHECK(r.mean_pruning_fraction() == 1.0);
}

TEST_CASE("experiment: DISTINCT pruning rate grows with d at w = 2") {
  double last = -1;
  for (std::size_t d = 256; d <= 4096; d *= 2) {
    CAPTURE(d);
    const auto r = run_experiment(parse_experiment(config("SELECT DISTINCT key FROM t", "n = 40000\ndistinct = 12000",
                                                          "seeds = 1..3", "params = manual\nw = 2\nd = " + std::to_string(d))));
    CHECK(r.passed());
    CHECK(r.mean_pruning_fraction() > last);
    last = r.mean_pruning_fraction();
  }
}

TEST_CASE("experiment: randomized TOP N unpruned count stays under its bound") {
  const auto c = parse_experiment(config("SELECT TOP 250 * FROM t ORDER BY value",
                                         "n = 1000000\ndistinct = 1000000\nvalue_max = 1000000000000",
                                         "seeds = 1\nwindow = 256",
                                         "params = manual\nrandomized_topn = true\nd = 4096\nw = 4"));
  const auto r = run_experiment(c);
  REQUIRE(r.trials.size() == 1);
  CHECK(r.trials[0].error.empty());
  const double bound = topn_expected_unpruned(1e6, 4, 4096);
  REQUIRE(r.plan.bounds.size() == 1);
  CHECK(r.plan.bounds[0].first == "expected_unpruned");
  CHECK(r.plan.bounds[0].second == doctest::Approx(bound));
  CHECK(r.mean_unpruned() <= 1.1 * bound);
}

TEST_CASE("experiment report: CSV rows and JSON summary") {
  const auto r = run_experiment(parse_experiment(
      config("SELECT key, MIN(value) FROM t GROUP BY key", "n = 500\ndistinct = 40", "seeds = 2, 4, 6\nloss_rate = 0.2")));
  const std::string csv = csv_of(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("seed,total,forwarded,pruned,pruning_fraction,survivors,", 0) == 0);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.find(",1,") != std::string::npos);  // oracle_equal
  }
  CHECK(rows == 3);

  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["name"] == "t");
  CHECK(j["kind"] == "groupby");
  CHECK(j["seeds"] == std::vector<int>{2, 4, 6});
  CHECK(j["params"]["d"] == 4096);
  CHECK(j["params"]["w"] == 8);
  CHECK(j["summary"]["trials"] == 3);
  CHECK(j["summary"]["passed"] == true);
  CHECK(j["summary"]["mean_pruning_fraction"].get<double>() == doctest::Approx(r.mean_pruning_fraction()));
  CHECK(j["trials"].size() == 3);
  CHECK(j["trials"][0]["retransmissions"].get<std::uint64_t>() == r.trials[0].stats.retransmissions);
}

TEST_CASE("experiment: probabilistic DISTINCT with narrow fingerprints records failures instead of throwing") {
  const auto r = run_experiment(parse_experiment(config("SELECT DISTINCT key FROM t\nguarantee = probabilistic\ndelta = 0.05",
                                                        "n = 2000\ndistinct = 1500", "seeds = 1..6",
                                                        "params = manual\nfingerprint_bits = 4\nd = 64\nw = 2")));
  CHECK(r.guarantee.probabilistic);
  CHECK(r.failures() == 6);
  CHECK(r.failure_fraction() == 1.0);
  CHECK(r.passed());
  for (const auto& t : r.trials) {
    CHECK(t.error.empty());
    CHECK_FALSE(t.oracle_equal);
  }
}
