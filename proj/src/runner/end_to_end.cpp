#include "netprune/runner/end_to_end.hpp"

#include <map>
#include <set>

#include "columns.hpp"
#include "netprune/algorithms/filter.hpp"
#include "netprune/core/errors.hpp"
#include "netprune/core/hash.hpp"
#include "netprune/switchsim/pipeline.hpp"

namespace netprune {

namespace {

using detail::Row;

struct Side {
  const Dataset* data = nullptr;
  std::string table;
  std::vector<std::size_t> key;  // key column indices, empty if unkeyed
};

// Maps key tuples to the 64-bit value the switch sees.
class KeyCodec {
 public:
  explicit KeyCodec(const std::vector<Side>& sides) {
    raw_ = true;
    for (const auto& s : sides) {
      if (s.key.size() != 1) raw_ = false;
      for (const auto& e : s.data->rows()) {
        if (!raw_) break;
        const Value& v = e.columns[s.key.front()];
        if (!v.is_uint() || v.as_uint() == UINT64_MAX) raw_ = false;
      }
    }
    if (raw_) return;
    std::set<Row> tuples;
    for (const auto& s : sides) {
      for (const auto& e : s.data->rows()) tuples.insert(detail::pick(e.columns, s.key));
    }
    std::uint64_t next = 1;
    for (const auto& t : tuples) dict_.emplace(t, next++);
  }

  std::uint64_t encode(const Row& row, const std::vector<std::size_t>& key) const {
    if (raw_) return row[key.front()].as_uint();
    return dict_.at(detail::pick(row, key));
  }

 private:
  bool raw_ = true;
  std::map<Row, std::uint64_t> dict_;
};

struct Flow {
  FlowSpec spec;
  std::size_t side = 0;
  std::vector<std::size_t> rows;  // row index of each seq - 1
};

std::vector<std::uint64_t> uints(const Row& r, const std::vector<std::size_t>& idx, const Schema& schema) {
  std::vector<std::uint64_t> out;
  for (auto i : idx) out.push_back(detail::uint_at(r, i, schema[i].name));
  return out;
}

class Encoder {
 public:
  Encoder(const QuerySpec& q, const std::vector<Side>& sides) : q_(q), sides_(sides), keys_(sides) {
    const Side& m = sides.front();
    const Schema& schema = m.data->schema();
    switch (q.kind) {
      case QueryKind::Filter:
        for (const Atom* a : filter_decompose(q.where).switch_part.atoms()) {
          values_.push_back(resolve_column(schema, m.table, a->column));
        }
        break;
      case QueryKind::TopN: values_.push_back(resolve_column(schema, m.table, q.order_by)); break;
      case QueryKind::Skyline: values_ = detail::indices(schema, m.table, q.skyline_dims); break;
      case QueryKind::GroupByMaxMin:
      case QueryKind::Having: {
        const std::string c = q.value_column();
        if (!c.empty()) values_.push_back(resolve_column(schema, m.table, c));
        break;
      }
      default: break;
    }
  }

  std::uint64_t key(std::size_t side, const Row& r) const { return keys_.encode(r, sides_[side].key); }

  std::vector<std::uint64_t> packet(std::size_t side, const Row& r) const {
    const Schema& schema = sides_[side].data->schema();
    switch (q_.kind) {
      case QueryKind::Filter: {
        auto v = uints(r, values_, schema);
        if (v.empty()) v.push_back(0);  // DATA carries at least one value
        return v;
      }
      case QueryKind::TopN:
      case QueryKind::Skyline: return uints(r, values_, schema);
      case QueryKind::Distinct:
      case QueryKind::Join: return {key(side, r)};
      case QueryKind::GroupByMaxMin:
      case QueryKind::Having: {
        const std::uint64_t v = values_.empty() ? 1 : uints(r, values_, schema).front();
        return {key(side, r), v};
      }
    }
    return {};
  }

 private:
  const QuerySpec& q_;
  const std::vector<Side>& sides_;
  KeyCodec keys_;
  std::vector<std::size_t> values_;
};

std::uint16_t fid_of(std::size_t side, int pass) { return static_cast<std::uint16_t>(1 + side + 2 * (pass - 1)); }

Flow make_flow(const Encoder& enc, const Side& s, std::size_t side, int pass,
               const std::function<bool(const Row&)>& keep = {}) {
  Flow f;
  f.spec.fid = fid_of(side, pass);
  f.spec.pass = pass;
  f.side = side;
  const auto rows = s.data->rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (keep && !keep(rows[i].columns)) continue;
    f.spec.entries.push_back(enc.packet(side, rows[i].columns));
    f.rows.push_back(i);
  }
  return f;
}

}  // namespace

RunOutcome run_query(const QueryPlan& plan, const Tables& tables, const SwitchProfile& profile,
                     const ChannelConfig& channel) {
  const QuerySpec& q = plan.query;
  const PrunerConfig& c = plan.config;
  validate(q);

  std::vector<Side> sides;
  {
    Side m{&find_table(tables, q.table), q.table, {}};
    if (q.kind == QueryKind::Join) {
      m.key = {resolve_column(m.data->schema(), q.table, q.join_left)};
      Side r{&find_table(tables, q.join_table), q.join_table, {}};
      r.key = {resolve_column(r.data->schema(), q.join_table, q.join_right)};
      sides = {m, r};
    } else {
      const auto key = q.key_columns();
      if (!key.empty()) m.key = detail::indices(m.data->schema(), q.table, key);
      sides = {m};
    }
  }
  const Encoder enc(q, sides);

  Pipeline pipe = build_pipeline({plan}, profile);
  const int passes = pass_count(q, c);
  for (int pass = 1; pass <= passes; ++pass) {
    for (std::size_t s = 0; s < sides.size(); ++s) {
      pipe.bind(fid_of(s, pass), 0, FlowRole{s == 0 ? JoinSide::A : JoinSide::B, static_cast<std::uint8_t>(pass)});
    }
  }

  RunOutcome out;
  RunStats& st = out.stats;
  // Flows whose survivors the master completes the query on.
  std::vector<std::pair<Flow, ChannelResult>> final_flows;

  auto run_pass = [&](int pass, std::vector<Flow> flows) {
    std::vector<FlowSpec> specs;
    for (const auto& f : flows) specs.push_back(f.spec);
    ChannelConfig ch = channel;
    ch.seed = derive_seed(channel.seed, static_cast<std::uint64_t>(pass));
    ChannelResult r = channel_run(pipe, specs, ch);
    if (!r.completed) throw Error("channel did not finish within " + std::to_string(channel.max_steps) + " steps");
    pipe.finish_pass(0, pass);
    for (const auto& f : flows) st.total += f.spec.entries.size();
    st.pruned += r.stats.switch_stats.pruned;
    st.forwarded += r.stats.switch_stats.processed - r.stats.switch_stats.pruned;
    st.retransmissions += r.stats.retransmissions;
    st.acks += r.stats.acks_from_switch + r.stats.acks_from_master;
    st.lost += r.stats.lost;
    st.steps += r.stats.steps;
    st.sequence_violations += r.stats.sequence_violations;
    st.accounting_violations += r.stats.accounting_violations;
    auto& record = out.passes.emplace_back();
    std::vector<std::pair<Flow, ChannelResult>> done;
    for (std::size_t i = 0; i < flows.size(); ++i) {
      record.push_back({flows[i].spec, flows[i].side, flows[i].rows, r.flows[i].switch_pruned});
      ChannelResult one;
      one.flows = {r.flows[i]};
      done.emplace_back(std::move(flows[i]), std::move(one));
    }
    return done;
  };

  if (q.kind == QueryKind::Join) {
    if (c.asymmetric_join) {
      const std::size_t build = c.join_build_side == JoinSide::A ? 0 : 1;
      for (auto& d : run_pass(1, {make_flow(enc, sides[build], build, 1)})) final_flows.push_back(std::move(d));
      for (auto& d : run_pass(2, {make_flow(enc, sides[1 - build], 1 - build, 2)})) final_flows.push_back(std::move(d));
    } else {
      run_pass(1, {make_flow(enc, sides[0], 0, 1), make_flow(enc, sides[1], 1, 1)});  // absorbed
      final_flows = run_pass(2, {make_flow(enc, sides[0], 0, 2), make_flow(enc, sides[1], 1, 2)});
    }
  } else if (passes == 2) {
    // HAVING SUM / COUNT: pass 1 announces candidate keys; workers re-stream
    // only rows of candidates.
    const auto first = run_pass(1, {make_flow(enc, sides[0], 0, 1)});
    std::set<std::uint64_t> candidates;
    for (const auto& [seq, values] : first.front().second.flows.front().delivered) candidates.insert(values.front());
    final_flows = run_pass(2, {make_flow(enc, sides[0], 0, 2, [&](const Row& r) {
                             return candidates.contains(enc.key(0, r));
                           })});
  } else {
    final_flows = run_pass(1, {make_flow(enc, sides[0], 0, 1)});
  }

  std::vector<SurvivorRows> survivors(sides.size());
  for (std::size_t s = 0; s < sides.size(); ++s) {
    survivors[s].schema = sides[s].data->schema();
    survivors[s].table = sides[s].table;
  }
  for (const auto& [flow, result] : final_flows) {
    const auto& delivered = result.flows.front().delivered;
    st.survivors += delivered.size();
    for (const auto& [seq, values] : delivered) {
      survivors[flow.side].rows.push_back(sides[flow.side].data->row(flow.rows[seq - 1]).columns);
    }
  }
  out.result = master_complete(q, survivors[0], sides.size() > 1 ? &survivors[1] : nullptr);
  return out;
}

}  // namespace netprune
