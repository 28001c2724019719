#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "netprune/algorithms/filter.hpp"
#include "netprune/algorithms/topn.hpp"
#include "netprune/core/errors.hpp"
#include "netprune/core/hash.hpp"
#include "netprune/switchsim/aph.hpp"
#include "netprune/switchsim/pipeline.hpp"

namespace netprune {

void StageContext::alu(std::size_t n) {
  used_ += n;
  if (used_ > budget_) {
    throw InvariantError("stage op used " + std::to_string(used_) + " ALUs, declared " + std::to_string(budget_));
  }
}

std::uint64_t StageOp::physical_sram_bits() const {
  std::uint64_t bits = 0;
  for (const auto* a : arrays) bits += a->sram_bits();
  return bits;
}

RegisterArray& Program::array(std::string name, std::size_t cells, unsigned bits, std::size_t max_accesses) {
  arrays_.push_back(std::make_unique<RegisterArray>(std::move(name), cells, bits, max_accesses));
  return *arrays_.back();
}

namespace {

// Metadata slots.
enum Meta : std::size_t { kKey, kFp, kRow, kCarry, kHit, kFlag, kAux, kAux2 };

std::uint64_t value_at(const Phv& p, std::size_t i) {
  if (i >= p.values.size()) throw std::invalid_argument("packet carries too few values");
  return p.values[i];
}

Decision verdict(bool prune) { return prune ? Decision::Prune : Decision::Forward; }

std::size_t ceil_log2(std::size_t x) {
  std::size_t l = 0;
  while ((std::size_t{1} << l) < x) ++l;
  return l;
}

void check_having_direction(Aggregate fn, CompareOp op) {
  const bool lower = op == CompareOp::Less || op == CompareOp::LessEq;
  const bool upper = op == CompareOp::Greater || op == CompareOp::GreaterEq;
  if (!(fn == Aggregate::Min ? lower : upper)) {
    throw UnsupportedError(std::string("HAVING ") + to_string(fn) + " " + to_string(op) + " c has no safe pruning rule");
  }
}

bool holds(CompareOp op, std::uint64_t v, std::uint64_t c) {
  switch (op) {
    case CompareOp::Less: return v < c;
    case CompareOp::LessEq: return v <= c;
    case CompareOp::Greater: return v > c;
    case CompareOp::GreaterEq: return v >= c;
    case CompareOp::Equal: return v == c;
  }
  return false;
}

// ---- FILTER ---------------------------------------------------------------

class FilterProgram final : public Program {
 public:
  FilterProgram(const QuerySpec& q, const PrunerConfig& c) {
    const auto part = filter_decompose(q.where).switch_part;
    const auto atoms = part.atoms();
    if (atoms.size() > 16) throw ConfigError("filter supports at most 16 switch atoms");
    std::unordered_map<const Atom*, std::size_t> index;
    for (const auto* a : atoms) {
      if (!a->switch_supported()) throw ConfigError("atom " + a->render() + " is not switch-evaluable");
      index.emplace(a, atoms_.size());
      atoms_.push_back({a->op, a->constant.as_uint()});
    }
    table_.resize(std::size_t{1} << atoms_.size());
    for (std::size_t bits = 0; bits < table_.size(); ++bits) {
      table_[bits] = part.evaluate([&](const Atom& a) { return ((bits >> index.at(&a)) & 1U) != 0; });
    }
    const std::size_t a = c.alus_per_stage;
    for (std::size_t first = 0; first < atoms_.size(); first += a) {
      const std::size_t n = std::min(a, atoms_.size() - first);
      ops_.push_back({"atoms", n, {}, 0, [this, first, n](Phv& p, StageContext& ctx) {
                        for (std::size_t i = first; i < first + n; ++i) {
                          ctx.alu();
                          if (holds(atoms_[i].op, p.values[i], atoms_[i].constant)) p.meta[kHit] |= std::uint64_t{1} << i;
                        }
                      }});
    }
  }

  std::size_t value_count() const override { return atoms_.size(); }

  void begin(Phv& p) override {
    if (p.values.size() < atoms_.size()) throw std::invalid_argument("filter packet carries too few values");
  }

  Decision decide(const Phv& p) const override { return verdict(!table_[p.meta[kHit]]); }

 private:
  struct Compiled {
    CompareOp op;
    std::uint64_t constant;
  };
  std::vector<Compiled> atoms_;
  std::vector<bool> table_;
};

// ---- DISTINCT and HAVING MIN/MAX cache -------------------------------------

struct Gate {
  CompareOp op;
  std::uint64_t threshold;
};

class CacheProgram final : public Program {
 public:
  CacheProgram(const PrunerConfig& c, std::optional<Gate> gate)
      : c_(c), gate_(gate), row_hash_(derive_seed(c.seed, 0)), fp_hash_(derive_seed(c.seed, 1)) {
    if (c.d == 0 || c.w == 0) throw ConfigError("distinct cache needs d >= 1 and w >= 1");
    if (c.fingerprint_bits > 64) throw ConfigError("fingerprints are at most 64 bits");
    const std::size_t a = c.alus_per_stage;
    if (a == 0) throw ConfigError("alus_per_stage must be positive");
    if (c.policy == ReplacementPolicy::Lru) {
      for (std::size_t j = 0; j < c.w; ++j) {
        auto* arr = &array("cache column " + std::to_string(j), c.d, 64);
        ops_.push_back({"column", 1, {arr}, 0, [this, arr](Phv& p, StageContext& ctx) { lru_step(*arr, p, ctx); }});
      }
    } else {
      for (std::size_t first = 0; first < c.w; first += a) {
        const std::size_t cols = std::min(a, c.w - first);
        auto* arr = &array("cache columns " + std::to_string(first) + "+" + std::to_string(cols), c.d * cols, 64, cols);
        ops_.push_back({"columns", cols, {arr}, 0, [this, arr, first, cols](Phv& p, StageContext& ctx) {
                          fifo_step(*arr, first, cols, p, ctx);
                        }});
      }
    }
    if (gate_) {
      auto compare = [this](Phv& p, StageContext& ctx) {
        ctx.alu();
        if (!holds(gate_->op, p.meta[kAux2], gate_->threshold)) p.meta[kFlag] = 1;
      };
      if (ops_.front().alus < a) {
        auto& first = ops_.front();
        first.alus += 1;
        first.run = [compare, inner = first.run](Phv& p, StageContext& ctx) {
          compare(p, ctx);
          inner(p, ctx);
        };
      } else {
        ops_.insert(ops_.begin(), StageOp{"having compare", 1, {}, 0, compare});
      }
    }
  }

  std::size_t value_count() const override { return gate_ ? 2 : 1; }

  void begin(Phv& p) override {
    if (gate_ && p.role.pass != 1) throw ProtocolError("HAVING MIN/MAX is single-pass");
    const std::uint64_t key = value_at(p, 0);
    if (gate_) p.meta[kAux2] = value_at(p, 1);
    std::uint64_t fp = 0;
    if (c_.fingerprint_bits == 0) {
      if (key == UINT64_MAX) throw std::domain_error("key 2^64-1 is reserved in exact mode");
      fp = key + 1;
    } else {
      const std::uint64_t h = fp_hash_(key);
      fp = c_.fingerprint_bits == 64 ? h : h >> (64 - c_.fingerprint_bits);
      if (fp == 0) fp = 1;
    }
    p.meta[kFp] = fp;
    p.meta[kCarry] = fp;
    p.meta[kRow] = row_hash_.range(key, c_.d);
    p.meta[kAux] = (p.seq == 0 ? 0 : p.seq - 1) % c_.w;
  }

  Decision decide(const Phv& p) const override { return verdict(p.meta[kFlag] != 0 || p.meta[kHit] != 0); }

 private:
  // Rolling insert: each column takes the value carried from the previous
  // one until the fingerprint has been met.
  static void lru_step(RegisterArray& arr, Phv& p, StageContext& ctx) {
    if (p.meta[kFlag]) return;
    ctx.rmw(arr, p.meta[kRow], [&](std::span<std::uint64_t> cell) {
      const std::uint64_t old = cell[0];
      if (!p.meta[kHit]) cell[0] = p.meta[kCarry];
      p.meta[kCarry] = old;
      if (old == p.meta[kFp]) p.meta[kHit] = 1;
    });
  }

  // Reads the non-cursor columns first so the cursor write sees every hit of
  // its own stage.
  static void fifo_step(RegisterArray& arr, std::size_t first, std::size_t cols, Phv& p, StageContext& ctx) {
    if (p.meta[kFlag]) return;
    const std::size_t row = p.meta[kRow];
    const std::size_t cursor = p.meta[kAux];
    bool hit = false;
    for (std::size_t j = 0; j < cols; ++j) {
      if (first + j == cursor) continue;
      ctx.rmw(arr, row * cols + j, [&](std::span<std::uint64_t> cell) { hit = hit || cell[0] == p.meta[kFp]; });
    }
    if (cursor >= first && cursor < first + cols) {
      ctx.rmw(arr, row * cols + (cursor - first), [&](std::span<std::uint64_t> cell) {
        hit = hit || cell[0] == p.meta[kFp];
        if (!p.meta[kHit] && !hit) cell[0] = p.meta[kFp];
      });
    }
    if (hit) p.meta[kHit] = 1;
  }

  PrunerConfig c_;
  std::optional<Gate> gate_;
  SeededHash row_hash_;
  SeededHash fp_hash_;
};

// ---- TOP N -----------------------------------------------------------------

class TopNDetProgram final : public Program {
 public:
  TopNDetProgram(const QuerySpec& q, const PrunerConfig& c) : n_(q.top_n) {
    if (n_ == 0) throw ConfigError("TOP N needs N >= 1");
    if (c.w == 0) throw ConfigError("w must be positive");
    // Count and t0 live in one paired register so one ALU updates both.
    auto* head = &array("count and t0", 1, 128);
    ops_.push_back({"count and t0", 1, {head}, 0, [this, head](Phv& p, StageContext& ctx) {
                      const std::uint64_t v = p.meta[kKey];
                      ctx.rmw(*head, 0, [&](std::span<std::uint64_t> cell) {
                        if (cell[0] < n_) {
                          cell[1] = cell[0] == 0 ? v : std::min(cell[1], v);
                          ++cell[0];
                          p.meta[kFlag] = 1;
                        }
                        p.meta[kAux] = cell[1];
                      });
                      if (!p.meta[kFlag] && v < p.meta[kAux]) p.meta[kHit] = 1;
                    }});
    for (std::size_t i = 1; i <= c.w; ++i) {
      auto* counter = &array("threshold counter " + std::to_string(i), 1, 64);
      ops_.push_back({"threshold counter", 1, {counter}, 0, [this, counter, i](Phv& p, StageContext& ctx) {
                        if (p.meta[kFlag]) return;
                        const std::uint64_t v = p.meta[kKey];
                        const std::uint64_t t = topn_threshold(p.meta[kAux], i);
                        ctx.rmw(*counter, 0, [&](std::span<std::uint64_t> cell) {
                          if (cell[0] >= n_ && v < t) p.meta[kHit] = 1;
                          if (v >= t) ++cell[0];
                        });
                      }});
    }
  }

  std::size_t value_count() const override { return 1; }
  void begin(Phv& p) override { p.meta[kKey] = value_at(p, 0); }
  Decision decide(const Phv& p) const override { return verdict(p.meta[kHit] != 0); }

 private:
  std::uint64_t n_;
};

class TopNRandProgram final : public Program {
 public:
  TopNRandProgram(const QuerySpec& q, const PrunerConfig& c, ProgramHooks::TopNRows rows)
      : d_(c.d), row_hash_(c.seed), rows_(std::move(rows)) {
    if (c.d == 0 || c.w == 0) throw ConfigError("randomized TOP N needs d >= 1 and w >= 1");
    if (q.guarantee.probabilistic) {
      const double need = static_cast<double>(q.top_n) * std::numbers::e / std::log(1.0 / q.guarantee.delta);
      if (static_cast<double>(c.d) < need) {
        throw ConfigError("d >= N*e/ln(1/delta) violated: d = " + std::to_string(c.d) + " < " + std::to_string(need));
      }
    }
    for (std::size_t j = 0; j < c.w; ++j) {
      auto* arr = &array("top column " + std::to_string(j), c.d, 64);
      ops_.push_back({"column", 1, {arr}, 0, [arr](Phv& p, StageContext& ctx) {
                        ctx.rmw(*arr, p.meta[kRow], [&](std::span<std::uint64_t> cell) {
                          if (!(p.meta[kKey] < cell[0])) p.meta[kHit] = 0;
                          if (p.meta[kCarry] > cell[0]) std::swap(p.meta[kCarry], cell[0]);
                        });
                      }});
    }
  }

  std::size_t value_count() const override { return 1; }

  void begin(Phv& p) override {
    const std::uint64_t e = plus_one(value_at(p, 0));
    p.meta[kKey] = e;
    p.meta[kCarry] = e;
    p.meta[kHit] = 1;
    const std::size_t row = rows_ ? rows_(p.seq) : static_cast<std::size_t>(row_hash_.range(p.seq, d_));
    if (row >= d_) throw std::out_of_range("row source returned a row beyond d");
    p.meta[kRow] = row;
  }

  Decision decide(const Phv& p) const override { return verdict(p.meta[kHit] != 0); }

 private:
  std::size_t d_;
  SeededHash row_hash_;
  ProgramHooks::TopNRows rows_;
};

// ---- SKYLINE ---------------------------------------------------------------

class SkylineProgram final : public Program {
 public:
  SkylineProgram(const QuerySpec& q, const PrunerConfig& c) : dims_(q.skyline_dims.size()), aph_(q.heuristic == ScoreHeuristic::Aph) {
    const std::size_t D = dims_;
    if (D < 2) throw ConfigError("skyline needs at least 2 dimensions");
    if (c.w == 0) throw ConfigError("skyline needs w >= 1");
    const std::size_t levels = ceil_log2(D);
    // Greedy adder schedule: the first tree stage has `levels` ALUs, the rest one.
    std::vector<std::size_t> adds;
    std::size_t live = D;
    for (std::size_t s = 0; s < levels; ++s) {
      const std::size_t n = std::min(s == 0 ? levels : std::size_t{1}, live / 2);
      adds.push_back(n);
      live -= n;
    }
    if (live != 1) {
      throw ConfigError("score tree for " + std::to_string(D) + " dimensions does not fit " + std::to_string(levels) +
                        " stages of the declared adders");
    }

    if (aph_) {
      for (std::size_t k = 0; k < D; ++k) msb_.push_back(make_msb_tcam());
      ops_.push_back({"msb", 0, {}, 64 * D, [this](Phv& p, StageContext&) {
                        for (std::size_t k = 0; k < dims_; ++k) p.carry[2 * dims_ + k] = *msb_[k].lookup(p.carry[dims_ + k]);
                      }});
      const LogTable& table = LogTable::standard();
      beta_ = table.beta();
      auto* logs = &array("log table", kLogTableSize, 32, D);
      for (std::size_t i = 0; i < kLogTableSize; ++i) logs->write(i, table[i]);
      ops_.push_back({"log table", 0, {logs}, 0, [this, logs](Phv& p, StageContext& ctx) {
                        for (std::size_t k = 0; k < dims_; ++k) {
                          const std::uint64_t z = p.carry[dims_ + k];
                          const std::uint64_t l = p.carry[2 * dims_ + k];
                          const std::uint64_t shift = l <= 15 ? 0 : l - 15;
                          p.carry[dims_ + k] = ctx.lookup(*logs, z >> shift) + beta_ * shift;
                        }
                      }});
    }
    for (std::size_t s = 0; s < levels; ++s) {
      const std::size_t n = adds[s];
      const bool last = s + 1 == levels;
      ops_.push_back({"score tree", s == 0 ? levels : 1, {}, 0, [this, n, last](Phv& p, StageContext& ctx) {
                        auto* ops = p.carry.data() + dims_;
                        std::uint64_t& live = p.meta[kAux];
                        for (std::size_t i = 0; i < n; ++i) {
                          ctx.alu();
                          ops[i] = aph_ ? ops[2 * i] + ops[2 * i + 1] : saturating_add(ops[2 * i], ops[2 * i + 1]);
                        }
                        std::copy(ops + 2 * n, ops + live, ops + n);
                        live -= n;
                        if (last) p.meta[kCarry] = plus_one(ops[0]);
                      }});
    }
    for (std::size_t i = 0; i < c.w; ++i) {
      auto* score = &array("point " + std::to_string(i) + " score", 1, 64);
      ops_.push_back({"point score", 1, {score}, 0, [score](Phv& p, StageContext& ctx) {
                        ctx.rmw(*score, 0, [&](std::span<std::uint64_t> cell) {
                          p.meta[kFlag] = cell[0] != 0;
                          p.meta[kAux2] = p.meta[kCarry] > cell[0];
                          if (p.meta[kAux2]) std::swap(p.meta[kCarry], cell[0]);
                        });
                      }});
      std::vector<RegisterArray*> coords;
      for (std::size_t k = 0; k < D; ++k) {
        coords.push_back(&array("point " + std::to_string(i) + " coord " + std::to_string(k), 1, 64));
      }
      ops_.push_back({"point coordinates", D, coords, 0, [this, coords](Phv& p, StageContext& ctx) {
                        bool le = true;
                        bool ne = false;
                        for (std::size_t k = 0; k < dims_; ++k) {
                          ctx.rmw(*coords[k], 0, [&](std::span<std::uint64_t> cell) {
                            const std::uint64_t y = cell[0];
                            const std::uint64_t x = p.values[k];
                            le = le && x <= y;
                            ne = ne || x != y;
                            if (p.meta[kAux2]) {
                              cell[0] = p.carry[k];
                              p.carry[k] = y;
                            }
                          });
                        }
                        if (p.meta[kFlag] && le && ne) p.meta[kHit] = 1;
                      }});
    }
  }

  std::size_t value_count() const override { return dims_; }

  void begin(Phv& p) override {
    if (p.values.size() != dims_) {
      throw std::invalid_argument("skyline entry has " + std::to_string(p.values.size()) + " dimensions, expected " +
                                  std::to_string(dims_));
    }
    // [0, D) carried point, [D, 2D) score operands, [2D, 3D) msb indices.
    p.carry.assign(3 * dims_, 0);
    for (std::size_t k = 0; k < dims_; ++k) {
      p.carry[k] = p.values[k];
      p.carry[dims_ + k] = aph_ && p.values[k] == 0 ? 1 : p.values[k];
    }
    p.meta[kAux] = dims_;
  }

  Decision decide(const Phv& p) const override { return verdict(p.meta[kHit] != 0); }

 private:
  std::size_t dims_;
  bool aph_;
  std::uint64_t beta_ = 0;
  std::vector<Tcam> msb_;
};

// ---- GROUP BY --------------------------------------------------------------

class GroupByProgram final : public Program {
 public:
  GroupByProgram(const QuerySpec& q, const PrunerConfig& c, ProgramHooks::GroupByIndex index)
      : d_(c.d), max_(q.select_aggregate->fn != Aggregate::Min), index_(std::move(index)) {
    if (c.d == 0 || c.w == 0) throw ConfigError("group-by sketch needs d >= 1 and w >= 1");
    for (std::size_t i = 0; i < c.w; ++i) {
      hashes_.emplace_back(derive_seed(c.seed, 100 + i));
      // 128-bit cells: key + 1 and value.
      auto* arr = &array("group row " + std::to_string(i), c.d, 128);
      ops_.push_back({"column", 1, {arr}, 0, [this, arr, i](Phv& p, StageContext& ctx) {
                        const std::size_t j = index_ ? index_(i, p.values[0]) : hashes_[i].range(p.values[0], d_);
                        if (j >= d_) throw std::out_of_range("group-by index beyond d");
                        const std::uint64_t k = p.meta[kKey];
                        const std::uint64_t v = p.meta[kAux];
                        ctx.rmw(*arr, j, [&](std::span<std::uint64_t> cell) {
                          if (cell[0] == k && better(cell[1], v)) p.meta[kHit] = 1;
                          if (cell[0] == k && better(cell[1], p.meta[kCarry])) p.meta[kCarry] = cell[1];
                          cell[0] = k;
                          cell[1] = p.meta[kCarry];
                        });
                      }});
    }
  }

  std::size_t value_count() const override { return 2; }

  void begin(Phv& p) override {
    const std::uint64_t key = value_at(p, 0);
    if (key == UINT64_MAX) throw std::domain_error("key 2^64-1 is reserved");
    p.meta[kKey] = key + 1;
    p.meta[kAux] = value_at(p, 1);
    p.meta[kCarry] = p.meta[kAux];
  }

  Decision decide(const Phv& p) const override { return verdict(p.meta[kHit] != 0); }

 private:
  bool better(std::uint64_t a, std::uint64_t b) const { return max_ ? a > b : a < b; }

  std::size_t d_;
  bool max_;
  ProgramHooks::GroupByIndex index_;
  std::vector<SeededHash> hashes_;
};

// ---- JOIN ------------------------------------------------------------------

class JoinProgram final : public Program {
 public:
  explicit JoinProgram(const PrunerConfig& c)
      : per_(std::max<std::uint64_t>(c.bloom_bits / 2, 1)), asymmetric_(c.asymmetric_join), build_(c.join_build_side) {
    if (c.bloom_hashes == 0) throw ConfigError("Bloom filter needs M >= 1 bits and H >= 1 hashes");
    for (std::uint64_t side : {1, 2}) {
      auto& h = side == 1 ? hash_a_ : hash_b_;
      for (unsigned i = 0; i < c.bloom_hashes; ++i) h.emplace_back(derive_seed(derive_seed(c.seed, side), 200 + i));
    }
    ops_.push_back({"hash", 0, {}, 0, [this](Phv& p, StageContext&) {
                      const bool own = p.meta[kFlag] != kProbe;
                      const bool a = (p.role.side == JoinSide::A) == own;
                      const auto& h = a ? hash_a_ : hash_b_;
                      p.meta[kAux] = a ? 0 : per_;
                      p.carry.resize(h.size());
                      for (std::size_t i = 0; i < h.size(); ++i) p.carry[i] = h[i].range(p.meta[kKey], per_);
                    }});
    // Filter A in [0, M/2), filter B in [M/2, M); the H ALUs share the array.
    auto* bits = &array("bloom filters", static_cast<std::size_t>(2 * per_), 1, c.bloom_hashes);
    ops_.push_back({"filters", c.bloom_hashes, {bits}, 0, [this, bits](Phv& p, StageContext& ctx) {
                      p.meta[kHit] = 1;
                      for (auto pos : p.carry) {
                        ctx.rmw(*bits, p.meta[kAux] + pos, [&](std::span<std::uint64_t> cell) {
                          if (p.meta[kFlag] == kProbe) {
                            if (!cell[0]) p.meta[kHit] = 0;
                          } else {
                            cell[0] = 1;
                          }
                        });
                      }
                    }});
  }

  std::size_t value_count() const override { return 1; }

  void begin(Phv& p) override {
    const int pass = p.role.pass;
    if (pass != 1 && pass != 2) throw ProtocolError("join pass must be 1 or 2");
    if (pass == 1 && pass1_done_) throw ProtocolError("join pass-1 entry after the pass-1 barrier");
    if (pass == 2 && !pass1_done_) throw ProtocolError("join pass-2 entry before the pass-1 barrier");
    p.meta[kKey] = value_at(p, 0);
    if (asymmetric_) {
      const bool build = p.role.side == build_;
      if (build != (pass == 1)) {
        throw ProtocolError("asymmetric join streams the build side in pass 1 and the probe side in pass 2");
      }
      p.meta[kFlag] = build ? kInsertForward : kProbe;
    } else {
      p.meta[kFlag] = pass == 1 ? kInsertPrune : kProbe;
    }
  }

  Decision decide(const Phv& p) const override {
    switch (p.meta[kFlag]) {
      case kInsertPrune: return Decision::Prune;
      case kInsertForward: return Decision::Forward;
      default: return verdict(p.meta[kHit] == 0);
    }
  }

  void finish_pass(int pass) override {
    if (pass != 1) return;
    if (pass1_done_) throw ProtocolError("join pass 1 finished twice");
    pass1_done_ = true;
  }

 private:
  static constexpr std::uint64_t kInsertPrune = 0;
  static constexpr std::uint64_t kInsertForward = 1;
  static constexpr std::uint64_t kProbe = 2;

  std::uint64_t per_;
  bool asymmetric_;
  JoinSide build_;
  std::vector<SeededHash> hash_a_;
  std::vector<SeededHash> hash_b_;
  bool pass1_done_ = false;
};

// ---- HAVING SUM / COUNT ----------------------------------------------------

class HavingSketchProgram final : public Program {
 public:
  HavingSketchProgram(const QuerySpec& q, const PrunerConfig& c)
      : count_(q.having_fn == Aggregate::Count), op_(q.having_op), threshold_(q.having_threshold), width_(c.w) {
    if (c.d == 0 || c.w == 0) throw ConfigError("Count-Min needs rows >= 1 and width >= 1");
    for (std::size_t r = 0; r < c.d; ++r) hashes_.emplace_back(derive_seed(c.seed, 300 + r));
    const std::size_t a = c.alus_per_stage;
    for (std::size_t first = 0; first < c.d; first += a) {
      const std::size_t rows = std::min(a, c.d - first);
      auto* arr = &array("sketch rows " + std::to_string(first) + "+" + std::to_string(rows), rows * c.w, 64, rows);
      ops_.push_back({"sketch rows", rows, {arr}, 0, [this, arr, first, rows](Phv& p, StageContext& ctx) {
                        for (std::size_t r = first; r < first + rows; ++r) {
                          const std::size_t col = hashes_[r].range(p.meta[kKey], width_);
                          ctx.rmw(*arr, (r - first) * width_ + col, [&](std::span<std::uint64_t> cell) {
                            if (p.role.pass == 1) cell[0] = saturating_add(cell[0], p.meta[kAux]);
                            p.meta[kCarry] = std::min(p.meta[kCarry], cell[0]);
                          });
                        }
                      }});
    }
  }

  std::size_t value_count() const override { return 2; }

  void begin(Phv& p) override {
    const int pass = p.role.pass;
    if (pass == 1 && pass1_done_) throw ProtocolError("HAVING pass-1 entry after the pass-1 barrier");
    if (pass == 2 && !pass1_done_) throw ProtocolError("HAVING pass-2 entry before the pass-1 barrier");
    if (pass != 1 && pass != 2) throw ProtocolError("HAVING pass must be 1 or 2");
    p.meta[kKey] = value_at(p, 0);
    p.meta[kAux] = count_ ? 1 : value_at(p, 1);
    p.meta[kCarry] = UINT64_MAX;
  }

  Decision decide(const Phv& p) const override { return verdict(!holds(op_, p.meta[kCarry], threshold_)); }

  void finish_pass(int pass) override {
    if (pass != 1) return;
    if (pass1_done_) throw ProtocolError("HAVING pass 1 finished twice");
    pass1_done_ = true;
  }

 private:
  bool count_;
  CompareOp op_;
  std::uint64_t threshold_;
  std::size_t width_;
  std::vector<SeededHash> hashes_;
  bool pass1_done_ = false;
};

}  // namespace

std::unique_ptr<Program> make_program(const QuerySpec& q, const PrunerConfig& c, const ProgramHooks& hooks) {
  validate(q);
  switch (q.kind) {
    case QueryKind::Filter: return std::make_unique<FilterProgram>(q, c);
    case QueryKind::Distinct: return std::make_unique<CacheProgram>(c, std::nullopt);
    case QueryKind::TopN:
      if (c.randomized_topn) return std::make_unique<TopNRandProgram>(q, c, hooks.topn_rows);
      return std::make_unique<TopNDetProgram>(q, c);
    case QueryKind::Skyline: return std::make_unique<SkylineProgram>(q, c);
    case QueryKind::GroupByMaxMin: return std::make_unique<GroupByProgram>(q, c, hooks.groupby_index);
    case QueryKind::Join: return std::make_unique<JoinProgram>(c);
    case QueryKind::Having:
      check_having_direction(q.having_fn, q.having_op);
      if (q.having_fn == Aggregate::Sum || q.having_fn == Aggregate::Count) {
        return std::make_unique<HavingSketchProgram>(q, c);
      }
      return std::make_unique<CacheProgram>(c, Gate{q.having_op, q.having_threshold});
  }
  throw ConfigError("unknown query kind");
}

}  // namespace netprune
