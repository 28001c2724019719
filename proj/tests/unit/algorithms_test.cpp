#include <algorithm>
#include <list>
#include <map>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "doctest.h"
#include "netprune/algorithms/distinct.hpp"
#include "netprune/algorithms/filter.hpp"
#include "netprune/algorithms/groupby.hpp"
#include "netprune/algorithms/having.hpp"
#include "netprune/algorithms/join.hpp"
#include "netprune/algorithms/pruner.hpp"
#include "netprune/algorithms/skyline.hpp"
#include "netprune/algorithms/topn.hpp"
#include "netprune/core/errors.hpp"
#include "netprune/core/hash.hpp"
#include "netprune/core/query.hpp"

using namespace netprune;

namespace {

constexpr Decision F = Decision::Forward;
constexpr Decision P = Decision::Prune;

std::uint64_t key_of(std::string_view s) { return fnv1a64(s) % UINT64_MAX; }

Atom cmp(std::string col, CompareOp op, std::uint64_t c) {
  Atom a;
  a.column = std::move(col);
  a.op = op;
  a.constant = Value(c);
  return a;
}

Atom like(std::string col, std::string pattern) {
  Atom a;
  a.kind = Atom::Kind::Like;
  a.column = std::move(col);
  a.pattern = std::move(pattern);
  return a;
}

// Skyline by pairwise comparison.
std::set<std::size_t> exact_skyline(const std::vector<std::vector<std::uint64_t>>& pts) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
      if (i == j) continue;
      bool le = true, ne = false;
      for (std::size_t k = 0; k < pts[i].size(); ++k) {
        le = le && pts[i][k] <= pts[j][k];
        ne = ne || pts[i][k] != pts[j][k];
      }
      dominated = le && ne;
    }
    if (!dominated) out.insert(i);
  }
  return out;
}

}  // namespace

TEST_CASE("filter decomposition of the ratings predicate") {
  const auto phi = PredicateFormula::any_of(
      {PredicateFormula::leaf(cmp("taste", CompareOp::Greater, 5)),
       PredicateFormula::all_of({PredicateFormula::leaf(cmp("texture", CompareOp::Greater, 4)),
                                 PredicateFormula::leaf(like("name", "e%s"))})});
  const auto split = filter_decompose(phi);
  const auto expected = PredicateFormula::any_of({PredicateFormula::leaf(cmp("taste", CompareOp::Greater, 5)),
                                                  PredicateFormula::leaf(cmp("texture", CompareOp::Greater, 4))});
  CHECK(split.switch_part == expected);
  CHECK(split.residual == phi);

  const FilterPruner f(split.switch_part);
  REQUIRE(f.atom_count() == 2);
  const std::uint64_t fries[] = {3, 3};
  const std::uint64_t pizza[] = {7, 5};
  const std::uint64_t jello[] = {9, 4};
  const std::uint64_t burger[] = {5, 7};
  CHECK(f.process(fries) == P);
  CHECK(f.process(pizza) == F);
  CHECK(f.process(jello) == F);
  CHECK(f.process(burger) == F);
}

TEST_CASE("filter decomposition edge cases") {
  const auto all = PredicateFormula::all_of(
      {PredicateFormula::leaf(cmp("a", CompareOp::Less, 3)), PredicateFormula::leaf(cmp("b", CompareOp::Equal, 1))});
  CHECK(filter_decompose(all).switch_part == all);
  CHECK(filter_decompose(all).residual.is_true());

  const auto one = PredicateFormula::leaf(like("name", "x%"));
  CHECK(filter_decompose(one).switch_part.is_true());
  CHECK(filter_decompose(one).residual == one);

  const FilterPruner truth{PredicateFormula::truth()};
  CHECK(truth.process(std::span<const std::uint64_t>{}) == F);

  CHECK_THROWS_AS(filter_decompose(PredicateFormula::negate(one)), std::invalid_argument);
  CHECK_THROWS_AS(FilterPruner{one}, ConfigError);
}

TEST_CASE("filter switch part never prunes a satisfying assignment") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<bool> supported;
    auto random_formula = [&](int depth, auto& self) -> PredicateFormula {
      if (depth == 0 || rng() % 3 == 0) {
        const std::string col = "c" + std::to_string(supported.size());
        const bool sup = rng() % 3 != 0;
        supported.push_back(sup);
        return PredicateFormula::leaf(sup ? cmp(col, CompareOp::Greater, 0) : like(col, "%"));
      }
      std::vector<PredicateFormula> kids;
      const auto n = 2 + rng() % 2;
      for (std::size_t i = 0; i < n; ++i) kids.push_back(self(depth - 1, self));
      return rng() % 2 ? PredicateFormula::all_of(std::move(kids)) : PredicateFormula::any_of(std::move(kids));
    };
    const auto phi = random_formula(3, random_formula);
    const auto split = filter_decompose(phi);
    CHECK(split.switch_part.all_atoms_supported());
    const std::size_t n = phi.atoms().size();
    if (n > 16) continue;
    // Atom truth is keyed by column name c<i>, which is unique per atom.
    for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
      auto value = [&](const Atom& a) { return ((bits >> std::stoul(a.column.substr(1))) & 1U) != 0; };
      const bool full = phi.evaluate(value);
      const bool sw = split.switch_part.evaluate(value);
      if (full) CHECK(sw);
      CHECK((split.residual.evaluate(value) && sw) == full);
    }
  }
}

TEST_CASE("distinct on the products sellers") {
  MatrixCache m(DistinctConfig{4096, 2, ReplacementPolicy::Lru, 0, 4, 1});
  std::vector<Decision> got;
  for (auto s : {"McQuick", "Papizza", "McQuick", "JellyFish"}) got.push_back(m.process(key_of(s), 0));
  CHECK(got == std::vector<Decision>{F, F, P, F});
}

TEST_CASE("distinct never prunes an all-distinct stream") {
  for (auto policy : {ReplacementPolicy::Lru, ReplacementPolicy::Fifo}) {
    MatrixCache m(DistinctConfig{16, 3, policy, 0, 2, 9});
    for (std::uint32_t i = 0; i < 5000; ++i) CHECK(m.process(i * 7919ULL, i + 1) == F);
  }
}

TEST_CASE("distinct LRU matches a list-based model") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + rng() % 8, w = 1 + rng() % 6;
    MatrixCache m(DistinctConfig{d, w, ReplacementPolicy::Lru, 0, 4, rng()});
    std::vector<std::list<std::uint64_t>> model(d);
    for (std::uint32_t i = 0; i < 3000; ++i) {
      const std::uint64_t key = rng() % 40;
      auto& row = model[m.row_of(key)];
      auto it = std::find(row.begin(), row.end(), key);
      const Decision expect = it == row.end() ? F : P;
      if (it != row.end()) row.erase(it);
      row.push_front(key);
      if (row.size() > w) row.pop_back();
      CHECK(m.process(key, i + 1) == expect);
    }
  }
}

TEST_CASE("distinct FIFO matches a cursor model") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + rng() % 4, w = 1 + rng() % 9, a = 1 + rng() % 4;
    MatrixCache m(DistinctConfig{d, w, ReplacementPolicy::Fifo, 0, a, rng()});
    std::vector<std::vector<std::uint64_t>> model(d, std::vector<std::uint64_t>(w, UINT64_MAX));
    for (std::uint32_t seq = 1; seq <= 3000; ++seq) {
      const std::uint64_t key = rng() % 30;
      auto& row = model[m.row_of(key)];
      std::size_t first = w;
      for (std::size_t j = 0; j < w; ++j) {
        if (row[j] == key) {
          first = j;
          break;
        }
      }
      const std::size_t col = (seq - 1) % w;
      const std::size_t stage_end = std::min(w, (col / a + 1) * a);
      if (first >= stage_end) row[col] = key;
      CHECK(m.process(key, seq) == (first < w ? P : F));
    }
  }
}

TEST_CASE("distinct exact mode never prunes a first occurrence") {
  std::mt19937_64 rng(23);
  for (auto policy : {ReplacementPolicy::Lru, ReplacementPolicy::Fifo}) {
    MatrixCache m(DistinctConfig{8, 4, policy, 0, 2, 3});
    std::unordered_set<std::uint64_t> seen;
    for (std::uint32_t seq = 1; seq <= 20000; ++seq) {
      const std::uint64_t key = rng() % 5000;
      const Decision d = m.process(key, seq);
      if (!seen.count(key)) CHECK(d == F);
      seen.insert(key);
    }
  }
}

TEST_CASE("distinct fingerprint prune implies a same-row match") {
  std::mt19937_64 rng(24);
  MatrixCache m(DistinctConfig{4, 3, ReplacementPolicy::Lru, 6, 4, 5});
  for (std::uint32_t seq = 1; seq <= 5000; ++seq) {
    const std::uint64_t key = rng();
    const std::size_t r = m.row_of(key);
    const std::uint64_t fp = m.fingerprint(key);
    CHECK(fp >= 1);
    CHECK(fp < 64);
    bool present = false;
    for (std::size_t j = 0; j < 3; ++j) present = present || m.cell(r, j) == fp;
    CHECK((m.process(key, seq) == P) == present);
  }
}

TEST_CASE("distinct rejects the reserved key in exact mode") {
  MatrixCache m(DistinctConfig{});
  CHECK_THROWS_AS(m.process(UINT64_MAX, 1), std::domain_error);
  CHECK_THROWS_AS(MatrixCache(DistinctConfig{0, 2}), ConfigError);
}

TEST_CASE("deterministic TOP N") {
  SUBCASE("warmup sets t0") {
    TopNDet t({3, 4});
    std::vector<Decision> got;
    for (std::uint64_t v : {4, 7, 2, 5}) got.push_back(t.process(v));
    CHECK(got == std::vector<Decision>{F, F, F, F});
    CHECK(t.t0() == 2);
    CHECK(t.process(1) == P);
    CHECK(t.process(2) == F);
  }
  SUBCASE("N at least the stream length forwards all") {
    TopNDet t({10, 4});
    for (std::uint64_t v = 10; v > 0; --v) CHECK(t.process(v) == F);
  }
  SUBCASE("decreasing stream prunes only values below t0") {
    TopNDet t({5, 4});
    for (std::uint64_t v = 1000; v > 0; --v) {
      const Decision d = t.process(v);
      CHECK(d == (v < 996 ? P : F));
    }
  }
  SUBCASE("ladder advances") {
    TopNDet t({2, 3});
    t.process(1);
    t.process(1);
    CHECK(t.active_index() == 0);
    for (int i = 0; i < 2; ++i) t.process(8);
    CHECK(t.counter(1) == 2);
    CHECK(t.counter(3) == 2);
    CHECK(t.active_index() == 3);
    CHECK(t.process(7) == P);
    CHECK(t.process(8) == F);
  }
  SUBCASE("zero t0 uses the unit ladder") {
    TopNDet t({1, 2});
    t.process(0);
    CHECK(t.threshold(1) == 2);
    CHECK(t.process(0) == F);
    t.process(4);
    CHECK(t.process(3) == P);
  }
  SUBCASE("forwarded values contain the true top N") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
      const std::uint64_t n = 1 + rng() % 20;
      TopNDet t({n, 1 + rng() % 6});
      std::vector<std::uint64_t> all, kept;
      const std::size_t m = rng() % 2000;
      const std::uint64_t range = 1 + rng() % 100000;
      for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t v = rng() % range;
        all.push_back(v);
        if (t.process(v) == F) kept.push_back(v);
      }
      std::sort(all.rbegin(), all.rend());
      std::sort(kept.rbegin(), kept.rend());
      const std::size_t k = std::min<std::size_t>(n, all.size());
      REQUIRE(kept.size() >= k);
      CHECK(std::equal(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), kept.begin()));
    }
  }
}

TEST_CASE("randomized TOP N replay of the worked example") {
  // Rows are 0-based here; the example's rows 1, 3, 3, 1, 3, 2.
  const std::size_t rows[] = {0, 2, 2, 0, 2, 1};
  TopNRand t(TopNRandConfig{3, 2, 1}, [&](std::uint32_t seq) { return rows[seq - 1]; });
  std::vector<Decision> got;
  std::uint32_t seq = 0;
  for (std::uint64_t v : {7, 4, 7, 5, 3, 2}) got.push_back(t.process(v, ++seq));
  CHECK(got == std::vector<Decision>{F, F, F, F, P, F});
  CHECK(t.cell(2, 0) == 8);
  CHECK(t.cell(2, 1) == 5);
}

TEST_CASE("randomized TOP N") {
  SUBCASE("wide rows never prune") {
    TopNRand t(TopNRandConfig{4, 64, 2});
    for (std::uint32_t s = 1; s <= 64; ++s) CHECK(t.process(1000 - s, s) == F);
  }
  SUBCASE("precondition") {
    CHECK_THROWS_AS(TopNRand(TopNRandConfig{100, 4, 1, 1000, 1e-4}), ConfigError);
    CHECK_NOTHROW(TopNRand(TopNRandConfig{600, 16, 1, 1000, 1e-4}));
  }
  SUBCASE("rows keep their w largest values") {
    std::mt19937_64 rng(32);
    TopNRand t(TopNRandConfig{5, 3, 77});
    std::vector<std::multiset<std::uint64_t>> seen(5);
    for (std::uint32_t s = 1; s <= 4000; ++s) {
      const std::uint64_t v = rng() % 1000;
      const std::size_t r = t.row_for(s);
      const bool below = seen[r].size() >= 3 && v < *std::next(seen[r].rbegin(), 2);
      CHECK((t.process(v, s) == P) == below);
      seen[r].insert(v);
      std::multiset<std::uint64_t> cells;
      for (std::size_t j = 0; j < 3; ++j) {
        if (t.cell(r, j) != 0) cells.insert(t.cell(r, j) - 1);
      }
      std::multiset<std::uint64_t> top(std::prev(seen[r].end(), static_cast<std::ptrdiff_t>(std::min<std::size_t>(3, seen[r].size()))),
                                       seen[r].end());
      CHECK(cells == top);
    }
  }
  SUBCASE("row draws are roughly uniform") {
    std::vector<int> count(8);
    for (std::uint32_t s = 1; s <= 80000; ++s) ++count[topn_random_row(3, s, 8)];
    for (int c : count) CHECK(std::abs(c - 10000) < 500);
  }
}

TEST_CASE("skyline on the ratings table") {
  const std::vector<std::vector<std::uint64_t>> pts = {{7, 5}, {8, 6}, {9, 4}, {5, 7}, {3, 3}};
  for (auto h : {ScoreHeuristic::Sum, ScoreHeuristic::Aph}) {
    SkylineStore s(SkylineConfig{2, 5, h, nullptr});
    std::set<std::size_t> survivors;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (s.process(pts[i]) == F) survivors.insert(i);
    }
    // Cheetos, Jello and Burger are rows 1, 2, 3.
    for (std::size_t i : {1, 2, 3}) CHECK(survivors.count(i) == 1);
    CHECK(survivors.count(4) == 0);
    std::vector<std::vector<std::uint64_t>> surv_pts;
    std::vector<std::size_t> ids(survivors.begin(), survivors.end());
    for (auto i : ids) surv_pts.push_back(pts[i]);
    std::set<std::size_t> result;
    for (auto i : exact_skyline(surv_pts)) result.insert(ids[i]);
    CHECK(result == std::set<std::size_t>{1, 2, 3});
  }
}

TEST_CASE("skyline basics") {
  SkylineStore s(SkylineConfig{2, 3, ScoreHeuristic::Sum, nullptr});
  const std::uint64_t p[] = {1, 1};
  CHECK(s.process(p) == F);
  CHECK(s.process(p) == F);  // exact duplicates are kept
  const std::uint64_t q[] = {1, 1, 1};
  CHECK_THROWS_AS(s.process(q), std::invalid_argument);
  CHECK(strictly_dominated(std::vector<std::uint64_t>{1, 2}, std::vector<std::uint64_t>{1, 3}));
  CHECK_FALSE(strictly_dominated(std::vector<std::uint64_t>{1, 3}, std::vector<std::uint64_t>{1, 3}));
  CHECK_FALSE(strictly_dominated(std::vector<std::uint64_t>{2, 1}, std::vector<std::uint64_t>{1, 3}));
}

TEST_CASE("skyline never prunes a skyline point") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dims = 2 + trial % 3;
    const auto h = trial % 2 ? ScoreHeuristic::Aph : ScoreHeuristic::Sum;
    SkylineStore s(SkylineConfig{dims, 1 + rng() % 10, h, nullptr});
    std::vector<std::vector<std::uint64_t>> pts(300);
    const std::uint64_t range = trial % 4 == 0 ? 8 : 1'000'000;
    for (auto& p : pts) {
      p.resize(dims);
      for (auto& x : p) x = rng() % range;
    }
    const auto sky = exact_skyline(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Decision d = s.process(pts[i]);
      if (sky.count(i)) CHECK(d == F);
    }
  }
}

TEST_CASE("group-by on the products table") {
  GroupBySketch g(GroupByConfig{4096, 8, Extremum::Max, 3});
  const std::pair<const char*, std::uint64_t> rows[] = {{"McQuick", 4}, {"Papizza", 7}, {"McQuick", 2}, {"JellyFish", 5}};
  std::map<std::string, std::uint64_t> best;
  for (auto [k, v] : rows) {
    if (g.process(key_of(k), v) == F) best[k] = std::max(best[k], v);
  }
  CHECK(best == std::map<std::string, std::uint64_t>{{"McQuick", 4}, {"Papizza", 7}, {"JellyFish", 5}});
}

TEST_CASE("group-by worked example") {
  const std::uint64_t x = 1, y = 2;
  for (std::size_t h2y = 0; h2y < 3; ++h2y) {
    // 0-based cells: h1(x)=h1(y)=2, h2(x)=1, h3(y)=2, h3(x)=1.
    auto index = [&](std::size_t i, std::uint64_t k) -> std::size_t {
      if (i == 0) return 1;
      if (i == 1) return k == x ? 0 : h2y;
      return k == x ? 0 : 1;
    };
    GroupBySketch g(GroupByConfig{3, 3, Extremum::Max, 1}, index);
    std::vector<Decision> got;
    for (auto [k, v] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{x, 5}, {x, 2}, {y, 2}, {y, 1}, {x, 3}}) {
      got.push_back(g.process(k, v));
    }
    CHECK(got == std::vector<Decision>{F, P, F, P, P});
  }
}

TEST_CASE("group-by properties") {
  std::mt19937_64 rng(51);
  SUBCASE("unique keys are never pruned") {
    GroupBySketch g(GroupByConfig{16, 3, Extremum::Max, 2});
    for (std::uint64_t k = 0; k < 3000; ++k) CHECK(g.process(k, rng() % 100) == F);
  }
  for (auto dir : {Extremum::Max, Extremum::Min}) {
    CAPTURE(static_cast<int>(dir));
    for (int trial = 0; trial < 20; ++trial) {
      GroupBySketch g(GroupByConfig{1 + rng() % 16, 1 + rng() % 5, dir, rng()});
      std::vector<std::pair<std::uint64_t, std::uint64_t>> rows(2000);
      for (auto& [k, v] : rows) {
        k = rng() % 100;
        v = rng() % 1000;
      }
      std::map<std::uint64_t, std::uint64_t> truth, got;
      for (auto [k, v] : rows) {
        auto it = truth.find(k);
        if (it == truth.end()) truth[k] = v;
        else it->second = dir == Extremum::Max ? std::max(it->second, v) : std::min(it->second, v);
      }
      for (auto [k, v] : rows) {
        const Decision d = g.process(k, v);
        if (v == truth[k]) CHECK(d == F);
        if (d == F) {
          auto it = got.find(k);
          if (it == got.end()) got[k] = v;
          else it->second = dir == Extremum::Max ? std::max(it->second, v) : std::min(it->second, v);
        }
      }
      CHECK(got == truth);
    }
  }
}

TEST_CASE("join on the products and ratings names") {
  JoinFilters j(JoinConfig{std::uint64_t{1} << 16, 3, false, JoinSide::A, 1});
  const char* products[] = {"Burger", "Pizza", "Fries", "Jello"};
  const char* ratings[] = {"Pizza", "Cheetos", "Jello", "Burger", "Fries"};
  CHECK_THROWS_AS(j.process(key_of("Pizza"), JoinSide::B, 2), ProtocolError);
  for (auto p : products) CHECK(j.process(key_of(p), JoinSide::A, 1) == P);
  for (auto r : ratings) CHECK(j.process(key_of(r), JoinSide::B, 1) == P);
  j.finish_pass1();
  CHECK_THROWS_AS(j.process(key_of("Pizza"), JoinSide::A, 1), ProtocolError);
  for (auto p : products) CHECK(j.process(key_of(p), JoinSide::A, 2) == F);
  std::vector<std::string> kept;
  for (auto r : ratings) {
    if (j.process(key_of(r), JoinSide::B, 2) == F) kept.emplace_back(r);
  }
  CHECK(kept == std::vector<std::string>{"Pizza", "Jello", "Burger", "Fries"});
}

TEST_CASE("join with an empty side prunes everything") {
  JoinFilters j(JoinConfig{4096, 2, false, JoinSide::A, 1});
  for (std::uint64_t k = 0; k < 50; ++k) j.process(k, JoinSide::B, 1);
  j.finish_pass1();
  for (std::uint64_t k = 0; k < 50; ++k) CHECK(j.process(k, JoinSide::B, 2) == P);
}

TEST_CASE("asymmetric join") {
  JoinFilters j(JoinConfig{4096, 3, true, JoinSide::B, 1});
  for (std::uint64_t k = 0; k < 20; ++k) CHECK(j.process(k * 2, JoinSide::B, 1) == F);
  CHECK_THROWS_AS(j.process(1, JoinSide::A, 1), ProtocolError);
  j.finish_pass1();
  for (std::uint64_t k = 0; k < 40; k += 2) CHECK(j.process(k, JoinSide::A, 2) == F);
  CHECK_THROWS_AS(j.process(1, JoinSide::B, 2), ProtocolError);
}

TEST_CASE("Bloom filter false-forward rate") {
  // 10^5 keys on one side, 10^4 on the other, half of them shared.
  const std::uint64_t bits = std::uint64_t{1} << 20;
  JoinFilters j(JoinConfig{bits, 3, false, JoinSide::A, 11});
  std::vector<std::uint64_t> a(100'000), b(10'000);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = splitmix64(i);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = i < 5000 ? a[i * 7] : splitmix64(1'000'000 + i);
  for (auto k : a) j.process(k, JoinSide::A, 1);
  for (auto k : b) j.process(k, JoinSide::B, 1);
  j.finish_pass1();
  std::size_t false_forward = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Decision d = j.process(b[i], JoinSide::B, 2);
    if (i < 5000) CHECK(d == F);
    else if (d == F) ++false_forward;
  }
  const double rate = static_cast<double>(false_forward) / 5000.0;
  const double bound = BloomFilter::false_positive_bound(bits, 3, a.size());
  CHECK(rate <= 2 * bound);
}

TEST_CASE("having MIN and MAX") {
  const std::pair<const char*, std::uint64_t> rows[] = {{"McQuick", 4}, {"Papizza", 7}, {"McQuick", 2}, {"JellyFish", 5}};
  HavingConfig c;
  c.fn = Aggregate::Min;
  c.op = CompareOp::Less;
  c.threshold = 6;
  HavingPruner h(c);
  std::set<std::string> keys;
  std::uint32_t seq = 0;
  for (auto [k, v] : rows) {
    if (h.process(key_of(k), v, ++seq, 1) == F) CHECK(keys.insert(k).second);
  }
  CHECK(keys == std::set<std::string>{"McQuick", "JellyFish"});

  c.fn = Aggregate::Max;
  c.op = CompareOp::Greater;
  c.threshold = 4;
  HavingPruner hm(c);
  keys.clear();
  seq = 0;
  for (auto [k, v] : rows) {
    if (hm.process(key_of(k), v, ++seq, 1) == F) keys.insert(k);
  }
  CHECK(keys == std::set<std::string>{"Papizza", "JellyFish"});
}

TEST_CASE("having SUM two passes") {
  const std::pair<const char*, std::uint64_t> rows[] = {{"McQuick", 4}, {"Papizza", 7}, {"McQuick", 2}, {"JellyFish", 5}};
  HavingConfig c;
  c.fn = Aggregate::Sum;
  c.threshold = 5;
  HavingPruner h(c);
  std::set<std::string> candidates;
  std::uint32_t seq = 0;
  for (auto [k, v] : rows) {
    if (h.process(key_of(k), v, ++seq, 1) == F) candidates.insert(k);
  }
  CHECK(candidates == std::set<std::string>{"McQuick", "Papizza"});
  CHECK_THROWS_AS(h.process(key_of("Papizza"), 7, 1, 2), ProtocolError);
  h.finish_pass1();
  CHECK(h.process(key_of("Papizza"), 7, 1, 2) == F);
  CHECK(h.process(key_of("JellyFish"), 5, 2, 2) == P);
}

TEST_CASE("having threshold above the total forwards nothing") {
  HavingConfig c;
  c.fn = Aggregate::Count;
  c.threshold = 1000;
  HavingPruner h(c);
  for (std::uint32_t s = 1; s <= 500; ++s) CHECK(h.process(s % 7, 1, s, 1) == P);
}

TEST_CASE("having unsupported directions") {
  HavingConfig c;
  c.fn = Aggregate::Sum;
  c.op = CompareOp::Less;
  CHECK_THROWS_AS(HavingPruner{c}, UnsupportedError);
  c.fn = Aggregate::Max;
  CHECK_THROWS_AS(HavingPruner{c}, UnsupportedError);
  c.fn = Aggregate::Min;
  c.op = CompareOp::Greater;
  CHECK_THROWS_AS(HavingPruner{c}, UnsupportedError);
}

TEST_CASE("Count-Min candidates contain every qualifying key") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    HavingConfig c;
    c.fn = trial % 2 ? Aggregate::Sum : Aggregate::Count;
    c.op = trial % 3 ? CompareOp::Greater : CompareOp::GreaterEq;
    c.threshold = c.fn == Aggregate::Sum ? 2000 : 20;
    c.cm_rows = 1 + rng() % 4;
    c.cm_width = 1 + rng() % 64;
    c.seed = rng();
    HavingPruner h(c);
    std::unordered_map<std::uint64_t, std::uint64_t> truth;
    std::unordered_set<std::uint64_t> candidates;
    for (std::uint32_t s = 1; s <= 3000; ++s) {
      const std::uint64_t k = rng() % 200, v = rng() % 100;
      truth[k] += c.fn == Aggregate::Sum ? v : 1;
      if (h.process(k, v, s, 1) == F) candidates.insert(k);
      CHECK(h.sketch()->estimate(k) >= truth[k]);
    }
    for (auto [k, f] : truth) {
      if (having_holds(c.op, f, c.threshold)) CHECK(candidates.count(k) == 1);
    }
  }
}

TEST_CASE("pruner factory") {
  const auto q = parse_query("SELECT DISTINCT seller FROM Products");
  const auto cfg = default_config(q);
  CHECK(cfg.w == 2);
  CHECK(cfg.d == 4096);
  auto p = make_pruner(q, cfg);
  const std::uint64_t k[] = {5};
  CHECK(p->process({1, k}, {}) == F);
  CHECK(p->process({2, k}, {}) == P);
  CHECK(pass_count(parse_query("SELECT * FROM a JOIN b ON x = y"), {}) == 2);
  CHECK(pass_count(parse_query("SELECT k FROM t GROUP BY k HAVING MIN(v) < 3"), {}) == 1);
  CHECK(pass_count(parse_query("SELECT k FROM t GROUP BY k HAVING COUNT() > 3"), {}) == 2);
}
