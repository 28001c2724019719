#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "netprune/algorithms/common.hpp"
#include "netprune/algorithms/pruner.hpp"
#include "netprune/planner/packing.hpp"
#include "netprune/planner/plan.hpp"
#include "netprune/planner/profile.hpp"
#include "netprune/switchsim/registers.hpp"

namespace netprune {

/// Per-query packet header vector: the packet fields a query reads plus
/// metadata that earlier stages pass to later ones.
struct Phv {
  std::uint32_t seq = 0;
  FlowRole role;
  std::span<const std::uint64_t> values;
  std::array<std::uint64_t, 8> meta{};
  std::vector<std::uint64_t> carry;  // multi-word metadata (skyline point, bloom positions)
};

/// One packet's visit to one stage for one query. Every register access and
/// arithmetic or comparison on a register value costs one ALU of the op's
/// budget; hashing, table lookups and metadata moves are free.
class StageContext {
 public:
  StageContext(std::uint64_t epoch, std::size_t alus) : epoch_(epoch), budget_(alus) {}

  /// Claims ALUs; throws InvariantError beyond the budget.
  void alu(std::size_t n = 1);

  template <class F>
  void rmw(RegisterArray& array, std::size_t index, F&& f) {
    alu();
    array.rmw(index, epoch_, std::forward<F>(f));
  }

  /// Read-only match-table lookup, no ALU.
  std::uint64_t lookup(RegisterArray& array, std::size_t index) {
    std::uint64_t v = 0;
    array.rmw(index, epoch_, [&](std::span<std::uint64_t> c) { v = c[0]; });
    return v;
  }

  std::size_t used() const noexcept { return used_; }

 private:
  std::uint64_t epoch_;
  std::size_t budget_;
  std::size_t used_ = 0;
};

/// Work of one layout stage of a program.
struct StageOp {
  std::string role;
  std::size_t alus = 0;              // ALUs the stage declares to the planner
  std::vector<RegisterArray*> arrays;
  std::size_t tcam_entries = 0;
  std::function<void(Phv&, StageContext&)> run;

  std::uint64_t physical_sram_bits() const;
};

/// Test hooks replacing hash-chosen indices.
struct ProgramHooks {
  using TopNRows = std::function<std::size_t(std::uint32_t seq)>;
  using GroupByIndex = std::function<std::size_t(std::size_t i, std::uint64_t key)>;
  TopNRows topn_rows;
  GroupByIndex groupby_index;
};

/// Stage program of one query. ops() lists one op per stage of the planner
/// layout; decide() is the query's entry of the shared decision stage.
class Program {
 public:
  virtual ~Program() = default;
  const std::vector<StageOp>& ops() const noexcept { return ops_; }
  /// Number of packet values the query reads.
  virtual std::size_t value_count() const = 0;
  /// Parser and hash units: validates the packet and fills metadata.
  virtual void begin(Phv& phv) = 0;
  virtual Decision decide(const Phv& phv) const = 0;
  /// Control-plane barrier after every flow of `pass` has finished.
  virtual void finish_pass(int /*pass*/) {}

 protected:
  RegisterArray& array(std::string name, std::size_t cells, unsigned bits, std::size_t max_accesses = 1);
  std::vector<std::unique_ptr<RegisterArray>> arrays_;
  std::vector<StageOp> ops_;
};

/// Throws ConfigError or UnsupportedError like make_pruner.
std::unique_ptr<Program> make_program(const QuerySpec& q, const PrunerConfig& config, const ProgramHooks& hooks = {});

/// A packet as the switch parses it.
struct SwitchPacket {
  std::uint16_t fid = 0;
  std::uint32_t seq = 0;
  std::span<const std::uint64_t> values;
};

struct PacketVerdict {
  bool known_fid = false;
  Decision decision = Decision::Forward;  // prune only if every bound query prunes
  std::vector<std::pair<std::size_t, Decision>> per_query;
};

/// Programs of several queries laid out on one switch.
class Pipeline {
 public:
  struct Resident {
    QueryPlan plan;
    std::unique_ptr<Program> program;
    std::vector<std::size_t> stages;  // pipeline stage of each op
  };

  Pipeline(SwitchProfile profile, std::vector<Resident> residents, std::size_t decision_stage);

  /// Routes flow `fid` to `query`, which reads the packet values starting at
  /// `value_offset`. A fid may be bound to several queries.
  void bind(std::uint16_t fid, std::size_t query, FlowRole role, std::size_t value_offset = 0);

  /// Carries one packet through every stage in order. An unknown fid is
  /// forwarded untouched.
  PacketVerdict process(const SwitchPacket& packet);

  void finish_pass(std::size_t query, int pass);

  bool bound(std::uint16_t fid) const { return bindings_.contains(fid); }

  std::size_t query_count() const noexcept { return residents_.size(); }
  const Resident& resident(std::size_t q) const { return residents_.at(q); }
  const SwitchProfile& profile() const noexcept { return profile_; }
  std::size_t decision_stage() const noexcept { return decision_stage_; }
  std::uint64_t packets() const noexcept { return epoch_; }

  /// Text dump of every stage's ALUs, SRAM and TCAM and what occupies them.
  std::string layout_text() const;

 private:
  struct Binding {
    std::size_t query;
    FlowRole role;
    std::size_t offset;
  };

  SwitchProfile profile_;
  std::vector<Resident> residents_;
  std::size_t decision_stage_;
  // stage -> (query, op) in query order
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> schedule_;
  std::map<std::uint16_t, std::vector<Binding>> bindings_;
  std::uint64_t epoch_ = 0;
};

/// Packs the plans, builds their programs and checks each stage against the
/// profile: op roles, ALUs and TCAM must match the planner layout and the
/// physical register memory must fit. Throws ConfigError for an empty plan
/// list, an infeasible packing (with its diagnosis) or a mismatch.
Pipeline build_pipeline(const std::vector<QueryPlan>& plans, const SwitchProfile& profile,
                        const ProgramHooks& hooks = {});

}  // namespace netprune
