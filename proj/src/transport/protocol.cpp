#include "netprune/transport/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace netprune {

const char* to_string(SwitchAction a) noexcept {
  switch (a) {
    case SwitchAction::Forwarded: return "forwarded";
    case SwitchAction::Pruned: return "pruned";
    case SwitchAction::ForwardUnprocessed: return "forward-unprocessed";
    case SwitchAction::Drop: return "drop";
    case SwitchAction::Untracked: return "untracked";
  }
  return "?";
}

SwitchOutput SwitchEndpoint::step(const Packet& p) {
  if (p.type == PacketType::Ack) throw std::invalid_argument("the switch gate takes DATA and FIN packets");
  SwitchOutput out;
  if (!pipeline_.bound(p.fid)) {
    ++stats_.untracked;
    out.action = SwitchAction::Untracked;
    out.to_master = p;
    return out;
  }
  std::uint32_t& x = x_[p.fid];
  if (p.seq <= x) {
    ++stats_.forwarded_unprocessed;
    out.action = SwitchAction::ForwardUnprocessed;
    out.to_master = p;
    return out;
  }
  if (p.seq != x + 1) {
    ++stats_.dropped;
    out.action = SwitchAction::Drop;
    return out;
  }
  x = p.seq;
  if (p.type == PacketType::Fin) {
    out.action = SwitchAction::Forwarded;
    out.to_master = p;
    return out;
  }
  ++stats_.processed;
  const auto verdict = pipeline_.process(SwitchPacket{p.fid, p.seq, p.values});
  if (verdict.decision == Decision::Prune) {
    ++stats_.pruned;
    out.action = SwitchAction::Pruned;
    out.to_worker = Packet::ack(p.fid, p.seq);
  } else {
    out.action = SwitchAction::Forwarded;
    out.to_master = p;
  }
  return out;
}

std::uint32_t SwitchEndpoint::last_processed(std::uint16_t fid) const {
  const auto it = x_.find(fid);
  return it == x_.end() ? 0 : it->second;
}

WorkerEndpoint::WorkerEndpoint(std::uint16_t fid, std::vector<std::vector<std::uint64_t>> entries,
                               std::uint64_t timeout, std::size_t window)
    : fid_(fid), entries_(std::move(entries)), timeout_(timeout), window_(window), acked_by_(entries_.size()) {
  if (timeout == 0 || window == 0) throw std::invalid_argument("worker timeout and window must be positive");
  if (entries_.size() >= UINT32_MAX) throw std::invalid_argument("flow too long for 32-bit sequence numbers");
}

Packet WorkerEndpoint::packet(std::uint32_t seq) const {
  if (seq == entries_.size() + 1) return Packet::fin(fid_, seq);
  return Packet::data(fid_, seq, entries_[seq - 1]);
}

std::vector<Packet> WorkerEndpoint::poll(std::uint64_t now) {
  std::vector<Packet> out;
  std::vector<std::uint32_t> expired;
  while (!deadlines_.empty() && deadlines_.begin()->first <= now) {
    expired.push_back(deadlines_.begin()->second);
    deadlines_.erase(deadlines_.begin());
  }
  std::sort(expired.begin(), expired.end());
  for (const auto seq : expired) {
    out.push_back(packet(seq));
    unacked_[seq] = now + timeout_;
    deadlines_.emplace(now + timeout_, seq);
    ++stats_.retransmissions;
  }
  const std::size_t n = entries_.size();
  while (next_seq_ <= n && unacked_.size() < window_) {
    out.push_back(packet(next_seq_));
    unacked_.emplace(next_seq_, now + timeout_);
    deadlines_.emplace(now + timeout_, next_seq_);
    ++stats_.data_sent;
    ++next_seq_;
  }
  if (!fin_sent_ && data_acked_ == n) {
    const auto fin = static_cast<std::uint32_t>(n + 1);
    out.push_back(packet(fin));
    unacked_.emplace(fin, now + timeout_);
    deadlines_.emplace(now + timeout_, fin);
    fin_sent_ = true;
  }
  return out;
}

void WorkerEndpoint::on_ack(const Packet& ack, AckSource source) {
  if (ack.type != PacketType::Ack || ack.fid != fid_) throw std::invalid_argument("ACK for another flow");
  (source == AckSource::Switch ? stats_.acks_from_switch : stats_.acks_from_master) += 1;
  const auto it = unacked_.find(ack.seq);
  if (it == unacked_.end()) {
    ++stats_.stale_acks;
    return;
  }
  deadlines_.erase({it->second, it->first});
  unacked_.erase(it);
  if (ack.seq == entries_.size() + 1) {
    fin_acked_ = true;
    return;
  }
  acked_by_[ack.seq - 1] = source;
  ++data_acked_;
}

std::optional<std::uint64_t> WorkerEndpoint::next_deadline() const {
  if (deadlines_.empty()) return std::nullopt;
  return deadlines_.begin()->first;
}

std::optional<AckSource> WorkerEndpoint::acked_by(std::uint32_t seq) const {
  if (seq == 0 || seq > acked_by_.size()) throw std::out_of_range("no such DATA seq");
  return acked_by_[seq - 1];
}

Packet MasterEndpoint::on_packet(const Packet& p) {
  if (p.type == PacketType::Ack) throw std::invalid_argument("the master receives DATA and FIN packets");
  ++stats_.acks_sent;
  if (p.type == PacketType::Fin) {
    fins_[p.fid] = p.seq;
    flows_[p.fid];
    return Packet::ack(p.fid, p.seq);
  }
  auto& flow = flows_[p.fid];
  if (flow.emplace(p.seq, p.values).second) {
    ++stats_.received;
  } else {
    ++stats_.duplicates;
  }
  return Packet::ack(p.fid, p.seq);
}

const std::map<std::uint32_t, std::vector<std::uint64_t>>& MasterEndpoint::survivors(std::uint16_t fid) const {
  static const std::map<std::uint32_t, std::vector<std::uint64_t>> kEmpty;
  const auto it = flows_.find(fid);
  return it == flows_.end() ? kEmpty : it->second;
}

}  // namespace netprune
