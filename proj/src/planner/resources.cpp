#include "netprune/planner/resources.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "netprune/algorithms/filter.hpp"
#include "netprune/core/errors.hpp"
#include "netprune/switchsim/aph.hpp"

namespace netprune {

namespace {

constexpr std::uint64_t kWord = 64;
constexpr std::uint64_t kFilterConstantBits = 32;

constexpr std::array<std::pair<Algorithm, const char*>, 12> kNames = {{
    {Algorithm::Filter, "filter"},
    {Algorithm::DistinctLru, "distinct-lru"},
    {Algorithm::DistinctFifo, "distinct-fifo"},
    {Algorithm::SkylineSum, "skyline-sum"},
    {Algorithm::SkylineAph, "skyline-aph"},
    {Algorithm::TopNDet, "topn-det"},
    {Algorithm::TopNRand, "topn-rand"},
    {Algorithm::GroupBy, "groupby"},
    {Algorithm::JoinBloom, "join-bf"},
    {Algorithm::JoinRbf, "join-rbf"},
    {Algorithm::HavingSketch, "having-sketch"},
    {Algorithm::HavingCache, "having-cache"},
}};

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

std::size_t ceil_log2(std::size_t x) {
  std::size_t l = 0;
  while ((std::size_t{1} << l) < x) ++l;
  return l;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// `count` units spread over stages of at most `per_stage` ALUs each.
void grouped(std::vector<StageDemand>& out, std::uint64_t count, std::size_t per_stage, std::uint64_t bits_per_unit,
             const char* role) {
  for (std::uint64_t done = 0; done < count; done += per_stage) {
    const std::uint64_t n = std::min<std::uint64_t>(per_stage, count - done);
    out.push_back({static_cast<std::size_t>(n), n * bits_per_unit, 0, role});
  }
}

std::vector<StageDemand> layout_of(const AlgorithmParams& p) {
  std::vector<StageDemand> s;
  const std::size_t a = p.alus_per_stage;
  switch (p.algorithm) {
    case Algorithm::Filter:
      require(p.atoms <= 16, "filter supports at most 16 switch atoms");
      grouped(s, p.atoms, a, kFilterConstantBits, "atoms");
      break;
    case Algorithm::DistinctLru:
    case Algorithm::TopNRand:
    case Algorithm::GroupBy:
      for (std::uint64_t i = 0; i < p.w; ++i) s.push_back({1, p.d * kWord, 0, "column"});
      break;
    case Algorithm::HavingCache: {
      // The distinct cache of the policy plus one compare ALU, in stage 0
      // when it has room and in a stage of its own otherwise.
      auto cache = p;
      cache.algorithm = p.policy == ReplacementPolicy::Fifo ? Algorithm::DistinctFifo : Algorithm::DistinctLru;
      s = layout_of(cache);
      if (s.front().alus < a) {
        s.front().alus += 1;
      } else {
        s.insert(s.begin(), StageDemand{1, 0, 0, "having compare"});
      }
      break;
    }
    case Algorithm::DistinctFifo: grouped(s, p.w, a, p.d * kWord, "columns"); break;
    case Algorithm::HavingSketch: grouped(s, p.d, a, p.w * kWord, "sketch rows"); break;
    case Algorithm::TopNDet:
      s.push_back({1, kWord, 0, "count and t0"});
      for (std::uint64_t i = 0; i < p.w; ++i) s.push_back({1, kWord, 0, "threshold counter"});
      break;
    case Algorithm::SkylineSum:
    case Algorithm::SkylineAph: {
      const std::size_t levels = ceil_log2(p.dims);
      if (p.algorithm == Algorithm::SkylineAph) {
        s.push_back({0, 0, kWord * p.dims, "msb"});
        s.push_back({0, kLogTableSize * 32, 0, "log table"});
      }
      for (std::size_t i = 0; i < levels; ++i) s.push_back({i == 0 ? levels : 1, 0, 0, "score tree"});
      for (std::uint64_t i = 0; i < p.w; ++i) {
        s.push_back({1, kWord, 0, "point score"});
        s.push_back({p.dims, p.dims * kWord, 0, "point coordinates"});
      }
      break;
    }
    case Algorithm::JoinBloom:
      s.push_back({0, 0, 0, "hash"});
      s.push_back({p.hashes, p.bloom_bits, 0, "filters"});
      break;
    case Algorithm::JoinRbf: break;
  }
  return s;
}

}  // namespace

const char* to_string(Algorithm a) noexcept {
  for (const auto& [alg, name] : kNames) {
    if (alg == a) return name;
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& [alg, n] : kNames) {
    if (name == n) return alg;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

AlgorithmFootprint estimate_resources(const AlgorithmParams& p) {
  require(p.alus_per_stage >= 1, "alus_per_stage must be positive");
  switch (p.algorithm) {
    case Algorithm::Filter: break;
    case Algorithm::DistinctLru:
    case Algorithm::DistinctFifo:
    case Algorithm::TopNRand:
    case Algorithm::GroupBy:
    case Algorithm::HavingSketch:
    case Algorithm::HavingCache: require(p.d >= 1 && p.w >= 1, "d and w must be positive"); break;
    case Algorithm::TopNDet: require(p.w >= 1, "w must be positive"); break;
    case Algorithm::SkylineSum:
    case Algorithm::SkylineAph:
      require(p.w >= 1, "w must be positive");
      require(p.dims >= 2, "skyline needs at least 2 dimensions");
      break;
    case Algorithm::JoinBloom:
    case Algorithm::JoinRbf:
      require(p.bloom_bits >= 2, "bloom_bits must be at least 2");
      require(p.hashes >= 1 && p.hashes <= 64, "hashes must lie in [1, 64]");
      break;
  }

  AlgorithmFootprint f;
  f.params = p;
  if (p.algorithm == Algorithm::JoinRbf) {
    f.total = {1, 1, p.bloom_bits + binomial(64, p.hashes) * kWord, 0};
    return f;
  }
  f.layout = layout_of(p);
  f.total.stages = f.layout.size();
  for (const auto& s : f.layout) {
    f.total.alus += s.alus;
    f.total.sram_bits += s.sram_bits;
    f.total.tcam_entries += s.tcam_entries;
  }
  return f;
}

AlgorithmParams algorithm_params(const QuerySpec& q, const PrunerConfig& c) {
  AlgorithmParams p;
  p.d = c.d;
  p.w = c.w;
  p.alus_per_stage = c.alus_per_stage;
  switch (q.kind) {
    case QueryKind::Filter:
      p.algorithm = Algorithm::Filter;
      p.atoms = filter_decompose(q.where).switch_part.atoms().size();
      break;
    case QueryKind::Distinct:
      p.algorithm = c.policy == ReplacementPolicy::Fifo ? Algorithm::DistinctFifo : Algorithm::DistinctLru;
      break;
    case QueryKind::TopN: p.algorithm = c.randomized_topn ? Algorithm::TopNRand : Algorithm::TopNDet; break;
    case QueryKind::Skyline:
      p.algorithm = q.heuristic == ScoreHeuristic::Aph ? Algorithm::SkylineAph : Algorithm::SkylineSum;
      p.dims = q.skyline_dims.size();
      break;
    case QueryKind::GroupByMaxMin: p.algorithm = Algorithm::GroupBy; break;
    case QueryKind::Join:
      p.algorithm = Algorithm::JoinBloom;
      p.bloom_bits = c.bloom_bits;
      p.hashes = c.bloom_hashes;
      break;
    case QueryKind::Having:
      p.algorithm = q.having_fn == Aggregate::Sum || q.having_fn == Aggregate::Count ? Algorithm::HavingSketch
                                                                                     : Algorithm::HavingCache;
      p.policy = c.policy;
      break;
  }
  return p;
}

std::vector<DefaultRow> default_rows(std::size_t a) {
  auto row = [a](Algorithm alg) {
    AlgorithmParams p;
    p.algorithm = alg;
    p.alus_per_stage = a;
    return p;
  };
  std::vector<DefaultRow> out;
  for (Algorithm alg : {Algorithm::DistinctFifo, Algorithm::DistinctLru}) {
    auto p = row(alg);
    p.w = 2;
    p.d = 4096;
    out.push_back({to_string(alg), p});
  }
  for (Algorithm alg : {Algorithm::SkylineSum, Algorithm::SkylineAph}) {
    auto p = row(alg);
    p.dims = 2;
    p.w = 10;
    out.push_back({to_string(alg), p});
  }
  {
    auto p = row(Algorithm::TopNDet);
    p.w = 4;
    out.push_back({to_string(p.algorithm), p});
    p.algorithm = Algorithm::TopNRand;
    p.d = 4096;
    out.push_back({to_string(p.algorithm), p});
  }
  {
    auto p = row(Algorithm::GroupBy);
    p.w = 8;
    p.d = 4096;
    out.push_back({to_string(p.algorithm), p});
  }
  for (Algorithm alg : {Algorithm::JoinBloom, Algorithm::JoinRbf}) {
    auto p = row(alg);
    p.bloom_bits = std::uint64_t{32} << 20;
    p.hashes = 3;
    out.push_back({to_string(alg), p});
  }
  {
    auto p = row(Algorithm::HavingSketch);
    p.w = 1024;
    p.d = 3;
    out.push_back({to_string(p.algorithm), p});
  }
  return out;
}

}  // namespace netprune
