#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <optional>
#include <unordered_map>
#include <vector>

#include "netprune/switchsim/pipeline.hpp"
#include "netprune/transport/packet.hpp"

namespace netprune {

// ---- switch ----------------------------------------------------------------

enum class SwitchAction : std::uint8_t {
  Forwarded,           // in sequence, processed, sent on to the master
  Pruned,              // in sequence, processed, ACKed back to the worker
  ForwardUnprocessed,  // retransmission of a processed seq
  Drop,                // gap: waits for X+1
  Untracked,           // fid not bound to any query
};

const char* to_string(SwitchAction a) noexcept;

struct SwitchOutput {
  SwitchAction action = SwitchAction::Drop;
  std::optional<Packet> to_master;
  std::optional<Packet> to_worker;
};

struct SwitchStats {
  std::uint64_t processed = 0;
  std::uint64_t pruned = 0;
  std::uint64_t forwarded_unprocessed = 0;
  std::uint64_t dropped = 0;
  std::uint64_t untracked = 0;
};

/// Per-fid sequence gate in front of the pipeline. With X the last
/// processed seq of the flow and Y the arriving one: Y = X+1 is processed
/// (a pruned DATA packet is answered with ACK(Y) to the worker); Y <= X is
/// forwarded unprocessed; Y > X+1 is dropped. FIN is never pruned.
class SwitchEndpoint {
 public:
  explicit SwitchEndpoint(Pipeline& pipeline) : pipeline_(pipeline) {}

  /// Throws std::invalid_argument for an ACK.
  SwitchOutput step(const Packet& p);

  std::uint32_t last_processed(std::uint16_t fid) const;
  const SwitchStats& stats() const noexcept { return stats_; }

 private:
  Pipeline& pipeline_;
  std::unordered_map<std::uint16_t, std::uint32_t> x_;
  SwitchStats stats_;
};

// ---- worker ----------------------------------------------------------------

enum class AckSource : std::uint8_t { Switch, Master };

struct WorkerStats {
  std::uint64_t data_sent = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t acks_from_switch = 0;
  std::uint64_t acks_from_master = 0;
  std::uint64_t stale_acks = 0;
};

/// Sends entries 1..n of one flow with at most `window` unacknowledged,
/// retransmits every packet unacknowledged for `timeout` steps, and sends
/// FIN(n+1) once every DATA packet is acknowledged.
class WorkerEndpoint {
 public:
  WorkerEndpoint(std::uint16_t fid, std::vector<std::vector<std::uint64_t>> entries, std::uint64_t timeout,
                 std::size_t window);

  /// Packets due at `now`: expired retransmissions first, then new ones.
  std::vector<Packet> poll(std::uint64_t now);
  void on_ack(const Packet& ack, AckSource source);

  bool finished() const noexcept { return fin_acked_; }
  std::uint16_t fid() const noexcept { return fid_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// Earliest pending retransmission deadline.
  std::optional<std::uint64_t> next_deadline() const;
  /// Source of the first ACK of DATA seq, if any.
  std::optional<AckSource> acked_by(std::uint32_t seq) const;
  const WorkerStats& stats() const noexcept { return stats_; }

 private:
  Packet packet(std::uint32_t seq) const;

  std::uint16_t fid_;
  std::vector<std::vector<std::uint64_t>> entries_;
  std::uint64_t timeout_;
  std::size_t window_;
  std::uint32_t next_seq_ = 1;
  std::map<std::uint32_t, std::uint64_t> unacked_;  // seq -> deadline
  std::set<std::pair<std::uint64_t, std::uint32_t>> deadlines_;  // (deadline, seq) of unacked_
  std::vector<std::optional<AckSource>> acked_by_;
  std::size_t data_acked_ = 0;
  bool fin_sent_ = false;
  bool fin_acked_ = false;
  WorkerStats stats_;
};

// ---- master ----------------------------------------------------------------

struct MasterStats {
  std::uint64_t received = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t acks_sent = 0;
};

/// ACKs every DATA and FIN packet and keeps the first copy of each
/// (fid, seq).
class MasterEndpoint {
 public:
  /// Returns the ACK for p. Throws std::invalid_argument for an ACK.
  Packet on_packet(const Packet& p);

  bool fin_received(std::uint16_t fid) const { return fins_.contains(fid); }
  /// Surviving entries of a flow, by seq.
  const std::map<std::uint32_t, std::vector<std::uint64_t>>& survivors(std::uint16_t fid) const;
  const MasterStats& stats() const noexcept { return stats_; }

 private:
  std::unordered_map<std::uint16_t, std::map<std::uint32_t, std::vector<std::uint64_t>>> flows_;
  std::unordered_map<std::uint16_t, std::uint32_t> fins_;
  MasterStats stats_;
};

}  // namespace netprune
