#include "netprune/transport/channel.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "netprune/core/errors.hpp"

namespace netprune {

const char* to_string(Link l) noexcept {
  switch (l) {
    case Link::WorkerToSwitch: return "worker->switch";
    case Link::SwitchToMaster: return "switch->master";
    case Link::SwitchToWorker: return "switch->worker";
    case Link::MasterToWorker: return "master->worker";
  }
  return "?";
}

namespace {

struct InFlight {
  std::uint64_t deliver;
  Packet packet;
};

class Links {
 public:
  Links(const ChannelConfig& c, ChannelResult& r) : config_(c), result_(r), rng_(c.seed) {}

  void send(Link link, Packet p, std::uint64_t now) {
    ++result_.stats.transmissions;
    bool lost = config_.force_drop && config_.force_drop(link, p);
    if (!lost && config_.loss_rate > 0.0) lost = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < config_.loss_rate;
    if (config_.record_trace) result_.trace.push_back({now, link, p.type, p.fid, p.seq, lost});
    if (lost) {
      ++result_.stats.lost;
      return;
    }
    std::uint64_t delay = config_.latency;
    if (config_.jitter > 0) delay += std::uniform_int_distribution<std::uint64_t>(0, config_.jitter)(rng_);
    auto& q = queues_[static_cast<std::size_t>(link)];
    // FIFO per link: never overtake the packet ahead.
    const std::uint64_t at = std::max(now + delay, q.empty() ? 0 : q.back().deliver);
    q.push_back({at, std::move(p)});
  }

  std::deque<InFlight>& queue(Link link) { return queues_[static_cast<std::size_t>(link)]; }

  std::optional<std::uint64_t> next_delivery() const {
    std::optional<std::uint64_t> best;
    for (const auto& q : queues_) {
      if (!q.empty() && (!best || q.front().deliver < *best)) best = q.front().deliver;
    }
    return best;
  }

 private:
  const ChannelConfig& config_;
  ChannelResult& result_;
  std::mt19937_64 rng_;
  std::array<std::deque<InFlight>, 4> queues_;
};

void validate(const std::vector<FlowSpec>& flows, const ChannelConfig& c) {
  if (!(c.loss_rate >= 0.0 && c.loss_rate < 1.0)) throw ConfigError("loss rate must lie in [0, 1)");
  if (c.latency == 0) throw ConfigError("link latency must be at least one step");
  // Longest ACK path is worker -> switch -> master -> worker.
  if (c.timeout <= 3 * (c.latency + c.jitter)) {
    throw ConfigError("timeout " + std::to_string(c.timeout) + " does not exceed the worst round trip of " +
                      std::to_string(3 * (c.latency + c.jitter)) + " steps");
  }
  std::unordered_set<std::uint16_t> fids;
  for (const auto& f : flows) {
    if (f.pass < 1) throw ConfigError("flow passes start at 1");
    if (!fids.insert(f.fid).second) throw ConfigError("duplicate flow id " + std::to_string(f.fid));
  }
}

}  // namespace

ChannelResult channel_run(Pipeline& pipeline, const std::vector<FlowSpec>& flows, const ChannelConfig& config,
                          const PassBarrier& barrier) {
  validate(flows, config);
  ChannelResult result;
  Links links(config, result);
  SwitchEndpoint sw(pipeline);
  MasterEndpoint master;

  std::vector<std::unique_ptr<WorkerEndpoint>> workers;
  std::unordered_map<std::uint16_t, std::size_t> worker_of;
  for (std::size_t i = 0; i < flows.size(); ++i) {
    workers.push_back(std::make_unique<WorkerEndpoint>(flows[i].fid, flows[i].entries, config.timeout, config.window));
    worker_of.emplace(flows[i].fid, i);
  }
  std::set<int> passes;
  for (const auto& f : flows) passes.insert(f.pass);
  auto pass_it = passes.begin();

  std::unordered_map<std::uint16_t, std::uint32_t> seen_x;  // independent in-sequence check
  std::unordered_map<std::uint16_t, std::vector<std::uint32_t>> switch_pruned;
  auto on_switch = [&](const Packet& p, std::uint64_t now) {
    const SwitchOutput out = sw.step(p);
    if (out.action == SwitchAction::Forwarded || out.action == SwitchAction::Pruned) {
      std::uint32_t& x = seen_x[p.fid];
      if (p.seq != x + 1) ++result.stats.sequence_violations;
      x = p.seq;
    }
    if (out.action == SwitchAction::Pruned) switch_pruned[p.fid].push_back(p.seq);
    if (out.to_master) links.send(Link::SwitchToMaster, *out.to_master, now);
    if (out.to_worker) links.send(Link::SwitchToWorker, *out.to_worker, now);
  };
  auto on_ack = [&](const Packet& ack, AckSource source) {
    const auto it = worker_of.find(ack.fid);
    if (it != worker_of.end()) workers[it->second]->on_ack(ack, source);
  };
  auto pass_done = [&](int pass) {
    for (std::size_t i = 0; i < flows.size(); ++i) {
      if (flows[i].pass == pass && !master.fin_received(flows[i].fid)) return false;
    }
    return true;
  };
  auto all_finished = [&] {
    return std::all_of(workers.begin(), workers.end(), [](const auto& w) { return w->finished(); });
  };

  std::uint64_t now = 0;
  while (true) {
    // Deliver everything due now. Sends made here land at now + latency or later.
    for (Link link : {Link::WorkerToSwitch, Link::SwitchToMaster, Link::SwitchToWorker, Link::MasterToWorker}) {
      auto& q = links.queue(link);
      while (!q.empty() && q.front().deliver <= now) {
        Packet p = std::move(q.front().packet);
        q.pop_front();
        switch (link) {
          case Link::WorkerToSwitch: on_switch(p, now); break;
          case Link::SwitchToMaster: links.send(Link::MasterToWorker, master.on_packet(p), now); break;
          case Link::SwitchToWorker: on_ack(p, AckSource::Switch); break;
          case Link::MasterToWorker: on_ack(p, AckSource::Master); break;
        }
      }
    }
    while (pass_it != passes.end() && pass_done(*pass_it)) {
      if (barrier) barrier(*pass_it);
      ++pass_it;
    }
    if (pass_it == passes.end() && all_finished()) {
      result.completed = true;
      break;
    }
    std::optional<std::uint64_t> next;
    for (std::size_t i = 0; i < flows.size(); ++i) {
      auto& w = *workers[i];
      const bool started = pass_it == passes.end() || flows[i].pass <= *pass_it;
      if (w.finished() || !started) continue;
      for (Packet& p : w.poll(now)) links.send(Link::WorkerToSwitch, std::move(p), now);
      const auto d = w.next_deadline();
      if (d && (!next || *d < *next)) next = d;
    }
    const auto delivery = links.next_delivery();
    if (delivery && (!next || *delivery < *next)) next = delivery;
    if (!next) break;
    now = std::max(now + 1, *next);
    if (now > config.max_steps) break;
  }
  result.stats.steps = now;

  const SwitchStats& ss = sw.stats();
  result.stats.switch_stats = ss;
  result.stats.master_stats = master.stats();
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const auto& w = *workers[i];
    result.stats.data_sent += w.stats().data_sent;
    result.stats.retransmissions += w.stats().retransmissions;
    result.stats.acks_from_switch += w.stats().acks_from_switch;
    result.stats.acks_from_master += w.stats().acks_from_master;
    FlowOutcome outcome;
    outcome.fid = flows[i].fid;
    outcome.entries = w.size();
    outcome.delivered = master.survivors(flows[i].fid);
    outcome.switch_pruned = std::move(switch_pruned[flows[i].fid]);
    for (std::uint32_t seq = 1; seq <= w.size(); ++seq) {
      const bool pruned = w.acked_by(seq) == AckSource::Switch;
      if (pruned) outcome.pruned.push_back(seq);
      if (result.completed && pruned == outcome.delivered.contains(seq)) ++result.stats.accounting_violations;
    }
    result.flows.push_back(std::move(outcome));
  }
  return result;
}

std::string trace_text(const std::vector<TraceEvent>& trace) {
  std::ostringstream out;
  for (const auto& e : trace) {
    out << e.step << ' ' << to_string(e.link) << ' ' << to_string(e.type) << " fid=" << e.fid << " seq=" << e.seq;
    if (e.lost) out << " lost";
    out << '\n';
  }
  return out.str();
}

}  // namespace netprune
