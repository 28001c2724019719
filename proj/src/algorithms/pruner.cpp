#include "netprune/algorithms/pruner.hpp"

#include <algorithm>

#include "netprune/algorithms/filter.hpp"
#include "netprune/algorithms/groupby.hpp"
#include "netprune/algorithms/having.hpp"
#include "netprune/algorithms/join.hpp"
#include "netprune/algorithms/skyline.hpp"
#include "netprune/algorithms/topn.hpp"
#include "netprune/core/errors.hpp"

namespace netprune {
namespace {

bool is_sketch_having(const QuerySpec& q) {
  return q.kind == QueryKind::Having && (q.having_fn == Aggregate::Sum || q.having_fn == Aggregate::Count);
}

std::uint64_t value_at(const EntryView& e, std::size_t i) {
  if (i >= e.values.size()) throw std::invalid_argument("packet carries too few values");
  return e.values[i];
}

DistinctConfig cache_config(const PrunerConfig& c) {
  DistinctConfig d;
  d.d = c.d;
  d.w = c.w;
  d.policy = c.policy;
  d.fingerprint_bits = c.fingerprint_bits;
  d.group_width = c.alus_per_stage;
  d.seed = c.seed;
  return d;
}

class FilterAdapter final : public Pruner {
 public:
  explicit FilterAdapter(const QuerySpec& q) : f_(filter_decompose(q.where).switch_part) {}
  Decision process(const EntryView& e, FlowRole) override { return f_.process(e.values); }

 private:
  FilterPruner f_;
};

class DistinctAdapter final : public Pruner {
 public:
  explicit DistinctAdapter(const PrunerConfig& c) : m_(cache_config(c)) {}
  Decision process(const EntryView& e, FlowRole) override { return m_.process(value_at(e, 0), e.seq); }

 private:
  MatrixCache m_;
};

class TopNDetAdapter final : public Pruner {
 public:
  TopNDetAdapter(const QuerySpec& q, const PrunerConfig& c) : t_(TopNDetConfig{q.top_n, c.w}) {}
  Decision process(const EntryView& e, FlowRole) override { return t_.process(value_at(e, 0)); }

 private:
  TopNDet t_;
};

class TopNRandAdapter final : public Pruner {
 public:
  TopNRandAdapter(const QuerySpec& q, const PrunerConfig& c) : t_(make_config(q, c)) {}
  Decision process(const EntryView& e, FlowRole) override { return t_.process(value_at(e, 0), e.seq); }

 private:
  static TopNRandConfig make_config(const QuerySpec& q, const PrunerConfig& c) {
    TopNRandConfig t;
    t.d = c.d;
    t.w = c.w;
    t.seed = c.seed;
    if (q.guarantee.probabilistic) {
      t.n = q.top_n;
      t.delta = q.guarantee.delta;
    }
    return t;
  }
  TopNRand t_;
};

class SkylineAdapter final : public Pruner {
 public:
  SkylineAdapter(const QuerySpec& q, const PrunerConfig& c)
      : s_(SkylineConfig{q.skyline_dims.size(), c.w, q.heuristic, nullptr}) {}
  Decision process(const EntryView& e, FlowRole) override { return s_.process(e.values); }

 private:
  SkylineStore s_;
};

class GroupByAdapter final : public Pruner {
 public:
  GroupByAdapter(const QuerySpec& q, const PrunerConfig& c)
      : g_(GroupByConfig{c.d, c.w, q.select_aggregate->fn == Aggregate::Min ? Extremum::Min : Extremum::Max, c.seed}) {}
  Decision process(const EntryView& e, FlowRole) override { return g_.process(value_at(e, 0), value_at(e, 1)); }

 private:
  GroupBySketch g_;
};

class JoinAdapter final : public Pruner {
 public:
  explicit JoinAdapter(const PrunerConfig& c)
      : j_(JoinConfig{std::max<std::uint64_t>(c.bloom_bits / 2, 1), c.bloom_hashes, c.asymmetric_join, c.join_build_side, c.seed}) {}
  Decision process(const EntryView& e, FlowRole r) override { return j_.process(value_at(e, 0), r.side, r.pass); }
  void finish_pass(int pass) override {
    if (pass == 1) j_.finish_pass1();
  }

 private:
  JoinFilters j_;
};

class HavingAdapter final : public Pruner {
 public:
  HavingAdapter(const QuerySpec& q, const PrunerConfig& c) : h_(make_config(q, c)) {}
  Decision process(const EntryView& e, FlowRole r) override {
    return h_.process(value_at(e, 0), value_at(e, 1), e.seq, r.pass);
  }
  void finish_pass(int pass) override {
    if (pass == 1 && h_.two_pass()) h_.finish_pass1();
  }

 private:
  static HavingConfig make_config(const QuerySpec& q, const PrunerConfig& c) {
    HavingConfig h;
    h.fn = q.having_fn;
    h.op = q.having_op;
    h.threshold = q.having_threshold;
    h.cache = cache_config(c);
    h.cm_rows = c.d;
    h.cm_width = c.w;
    h.seed = c.seed;
    return h;
  }
  HavingPruner h_;
};

}  // namespace

PrunerConfig default_config(const QuerySpec& q) {
  PrunerConfig c;
  switch (q.kind) {
    case QueryKind::Filter: break;
    case QueryKind::Distinct:
      c.d = 4096;
      c.w = 2;
      break;
    case QueryKind::TopN:
      c.d = 4096;
      c.w = 4;
      break;
    case QueryKind::Skyline: c.w = 10; break;
    case QueryKind::GroupByMaxMin:
      c.d = 4096;
      c.w = 8;
      break;
    case QueryKind::Join:
      c.bloom_bits = std::uint64_t{32} << 20;
      c.bloom_hashes = 3;
      break;
    case QueryKind::Having:
      if (is_sketch_having(q)) {
        c.d = 3;
        c.w = 1024;
      } else {
        c.d = 4096;
        c.w = 2;
      }
      break;
  }
  return c;
}

int pass_count(const QuerySpec& q, const PrunerConfig&) {
  return q.kind == QueryKind::Join || is_sketch_having(q) ? 2 : 1;
}

std::unique_ptr<Pruner> make_pruner(const QuerySpec& q, const PrunerConfig& c) {
  validate(q);
  switch (q.kind) {
    case QueryKind::Filter: return std::make_unique<FilterAdapter>(q);
    case QueryKind::Distinct: return std::make_unique<DistinctAdapter>(c);
    case QueryKind::TopN:
      if (c.randomized_topn) return std::make_unique<TopNRandAdapter>(q, c);
      return std::make_unique<TopNDetAdapter>(q, c);
    case QueryKind::Skyline: return std::make_unique<SkylineAdapter>(q, c);
    case QueryKind::GroupByMaxMin: return std::make_unique<GroupByAdapter>(q, c);
    case QueryKind::Join: return std::make_unique<JoinAdapter>(c);
    case QueryKind::Having: return std::make_unique<HavingAdapter>(q, c);
  }
  throw ConfigError("unknown query kind");
}

}  // namespace netprune
