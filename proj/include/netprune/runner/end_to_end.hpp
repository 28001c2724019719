#pragma once

#include <cstdint>
#include <vector>

#include "netprune/planner/plan.hpp"
#include "netprune/planner/profile.hpp"
#include "netprune/runner/result.hpp"
#include "netprune/transport/channel.hpp"

namespace netprune {

struct RunStats {
  std::uint64_t total = 0;      // DATA entries streamed over all passes
  std::uint64_t forwarded = 0;  // forwarded by the pipeline on first processing
  std::uint64_t pruned = 0;     // pruned by the pipeline on first processing
  std::uint64_t survivors = 0;  // distinct entries held by the master
  std::uint64_t retransmissions = 0;
  std::uint64_t acks = 0;  // ACKs received by workers, switch and master
  std::uint64_t lost = 0;
  std::uint64_t steps = 0;
  std::uint64_t sequence_violations = 0;
  std::uint64_t accounting_violations = 0;

  /// 1 - forwarded/total; 1 for an empty input.
  double pruning_fraction() const noexcept {
    return total == 0 ? 1.0 : 1.0 - static_cast<double>(forwarded) / static_cast<double>(total);
  }
};

/// One flow as streamed: its packets, the table rows behind them and the
/// sequence numbers the pipeline pruned on first processing.
struct FlowRecord {
  FlowSpec spec;
  std::size_t side = 0;           // 0 = q.table, 1 = joined table
  std::vector<std::size_t> rows;  // row index of packet seq s at rows[s - 1]
  std::vector<std::uint32_t> switch_pruned;
};

struct RunOutcome {
  QueryResult result;
  RunStats stats;
  std::vector<std::vector<FlowRecord>> passes;  // flows of pass p at passes[p - 1]
};

/// Streams the tables of plan.query from workers through the lossy channel,
/// a pipeline built from `plan`, and the master, which completes the query.
/// Flow ids: pass p of table side s (0 = q.table, 1 = joined table) uses
/// fid 1 + s + 2(p-1). Each pass runs to completion (every FIN at the
/// master) before the pipeline's pass barrier and the next pass.
///
/// Keys travel as the single UInt key column when every key is one such
/// value below 2^64-1, and as dense dictionary codes of the key tuples
/// otherwise. Ordered, aggregated, skyline and filter-atom columns must be
/// UInt (SchemaError). Throws Error when the channel exceeds its step bound.
RunOutcome run_query(const QueryPlan& plan, const Tables& tables, const SwitchProfile& profile,
                     const ChannelConfig& channel);

}  // namespace netprune
