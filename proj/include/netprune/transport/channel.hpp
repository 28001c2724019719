#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "netprune/switchsim/pipeline.hpp"
#include "netprune/transport/packet.hpp"
#include "netprune/transport/protocol.hpp"

namespace netprune {

enum class Link : std::uint8_t { WorkerToSwitch, SwitchToMaster, SwitchToWorker, MasterToWorker };

const char* to_string(Link l) noexcept;

/// One worker flow. Flows of pass p start once the master holds the FIN of
/// every flow of an earlier pass.
struct FlowSpec {
  std::uint16_t fid = 0;
  int pass = 1;
  std::vector<std::vector<std::uint64_t>> entries;
};

struct ChannelConfig {
  double loss_rate = 0.0;  // per transmission, in [0, 1)
  std::uint64_t seed = 1;
  std::uint64_t latency = 1;  // steps per hop
  std::uint64_t jitter = 0;   // extra steps per hop, uniform in [0, jitter]
  std::uint64_t timeout = 16;
  std::size_t window = 8;
  std::uint64_t max_steps = 50'000'000;
  /// Returns true to drop a transmission; consulted before random loss.
  std::function<bool(Link, const Packet&)> force_drop;
  bool record_trace = false;
};

struct TraceEvent {
  std::uint64_t step = 0;
  Link link = Link::WorkerToSwitch;
  PacketType type = PacketType::Data;
  std::uint16_t fid = 0;
  std::uint32_t seq = 0;
  bool lost = false;
};

struct ChannelStats {
  std::uint64_t steps = 0;
  std::uint64_t transmissions = 0;
  std::uint64_t lost = 0;
  std::uint64_t data_sent = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t acks_from_switch = 0;
  std::uint64_t acks_from_master = 0;
  SwitchStats switch_stats;
  MasterStats master_stats;
  /// Packets the pipeline processed out of sequence. Always 0.
  std::uint64_t sequence_violations = 0;
  /// DATA entries neither or both pruned-and-ACKed by the switch and
  /// delivered to the master as a first ACK. Always 0 for a completed run.
  std::uint64_t accounting_violations = 0;
};

struct FlowOutcome {
  std::uint16_t fid = 0;
  std::size_t entries = 0;
  /// Seqs the pipeline pruned when it processed them.
  std::vector<std::uint32_t> switch_pruned;
  /// Seqs whose first ACK came from the switch. A subset of switch_pruned:
  /// a lost prune ACK sends the retransmission on to the master.
  std::vector<std::uint32_t> pruned;
  /// Entries held by the master, by seq.
  std::map<std::uint32_t, std::vector<std::uint64_t>> delivered;
};

struct ChannelResult {
  bool completed = false;  // false when max_steps ran out
  ChannelStats stats;
  std::vector<FlowOutcome> flows;  // in FlowSpec order
  std::vector<TraceEvent> trace;
};

/// Called when the master holds every FIN of a pass, before the next pass.
using PassBarrier = std::function<void(int pass)>;

/// Runs workers, the switch gate over `pipeline`, and the master over four
/// lossy FIFO links until every flow is FIN-complete. Throws ConfigError for
/// a loss rate outside [0, 1), a timeout not above the worst round trip,
/// a duplicate fid, or a pass below 1.
ChannelResult channel_run(Pipeline& pipeline, const std::vector<FlowSpec>& flows, const ChannelConfig& config,
                          const PassBarrier& barrier = {});

/// One line per trace event.
std::string trace_text(const std::vector<TraceEvent>& trace);

}  // namespace netprune
