#include "netprune/switchsim/pipeline.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "netprune/core/errors.hpp"

namespace netprune {

Pipeline::Pipeline(SwitchProfile profile, std::vector<Resident> residents, std::size_t decision_stage)
    : profile_(profile), residents_(std::move(residents)), decision_stage_(decision_stage), schedule_(decision_stage) {
  for (std::size_t q = 0; q < residents_.size(); ++q) {
    const auto& r = residents_[q];
    for (std::size_t i = 0; i < r.stages.size(); ++i) schedule_.at(r.stages[i]).emplace_back(q, i);
  }
}

void Pipeline::bind(std::uint16_t fid, std::size_t query, FlowRole role, std::size_t value_offset) {
  if (query >= residents_.size()) throw ConfigError("fid " + std::to_string(fid) + " bound to unknown query");
  auto& list = bindings_[fid];
  for (const auto& b : list) {
    if (b.query == query) throw ConfigError("fid " + std::to_string(fid) + " bound twice to one query");
  }
  list.push_back({query, role, value_offset});
}

PacketVerdict Pipeline::process(const SwitchPacket& packet) {
  ++epoch_;
  PacketVerdict out;
  const auto it = bindings_.find(packet.fid);
  if (it == bindings_.end()) return out;
  out.known_fid = true;
  const auto& bound = it->second;

  std::vector<Phv> phvs(bound.size());
  for (std::size_t b = 0; b < bound.size(); ++b) {
    if (bound[b].offset > packet.values.size()) throw std::invalid_argument("packet carries too few values");
    Phv& p = phvs[b];
    p.seq = packet.seq;
    p.role = bound[b].role;
    p.values = packet.values.subspan(bound[b].offset);
    residents_[bound[b].query].program->begin(p);
  }

  for (std::size_t s = 0; s < decision_stage_; ++s) {
    std::size_t stage_alus = 0;
    for (const auto& [q, op_index] : schedule_[s]) {
      for (std::size_t b = 0; b < bound.size(); ++b) {
        if (bound[b].query != q) continue;
        const StageOp& op = residents_[q].program->ops()[op_index];
        StageContext ctx(epoch_, op.alus);
        op.run(phvs[b], ctx);
        stage_alus += ctx.used();
      }
    }
    if (stage_alus > profile_.alus_per_stage) {
      throw InvariantError("stage " + std::to_string(s) + " used " + std::to_string(stage_alus) + " ALUs");
    }
  }

  bool all_prune = true;
  for (std::size_t b = 0; b < bound.size(); ++b) {
    const Decision d = residents_[bound[b].query].program->decide(phvs[b]);
    out.per_query.emplace_back(bound[b].query, d);
    all_prune = all_prune && d == Decision::Prune;
  }
  out.decision = all_prune ? Decision::Prune : Decision::Forward;
  return out;
}

void Pipeline::finish_pass(std::size_t query, int pass) { residents_.at(query).program->finish_pass(pass); }

std::string Pipeline::layout_text() const {
  std::ostringstream os;
  os << "switch: " << profile_.stages << " stages, " << profile_.alus_per_stage << " ALUs and "
     << profile_.sram_bits_per_stage << " SRAM bits per stage, " << profile_.tcam_entries << " TCAM entries\n";
  for (std::size_t q = 0; q < residents_.size(); ++q) {
    os << "q" << q << ": " << to_string(residents_[q].plan.footprint.params.algorithm) << "  "
       << render_query(residents_[q].plan.query) << "\n";
  }
  for (std::size_t s = 0; s < schedule_.size(); ++s) {
    if (schedule_[s].empty()) continue;
    std::size_t alus = 0;
    std::uint64_t sram = 0;
    std::size_t tcam = 0;
    for (const auto& [q, i] : schedule_[s]) {
      const auto& d = residents_[q].plan.footprint.layout[i];
      alus += d.alus;
      sram += d.sram_bits;
      tcam += d.tcam_entries;
    }
    os << "stage " << s << ": alus " << alus << "/" << profile_.alus_per_stage << "  sram " << sram << "/"
       << profile_.sram_bits_per_stage << "  tcam " << tcam << "\n";
    for (const auto& [q, i] : schedule_[s]) {
      const auto& d = residents_[q].plan.footprint.layout[i];
      os << "  q" << q << " " << d.role << "  alus " << d.alus << "  sram " << d.sram_bits;
      if (d.tcam_entries) os << "  tcam " << d.tcam_entries;
      os << "\n";
    }
  }
  os << "stage " << decision_stage_ << ": decision";
  for (std::size_t q = 0; q < residents_.size(); ++q) os << " q" << q;
  os << "\n";
  return os.str();
}

Pipeline build_pipeline(const std::vector<QueryPlan>& plans, const SwitchProfile& profile, const ProgramHooks& hooks) {
  if (plans.empty()) throw ConfigError("no queries to place on the switch");
  std::vector<AlgorithmFootprint> footprints;
  for (const auto& p : plans) {
    if (p.footprint.layout.empty() && p.footprint.params.algorithm == Algorithm::JoinRbf) {
      throw ConfigError("join-rbf has no stage program");
    }
    footprints.push_back(p.footprint);
  }
  const Placement placement = pack_queries(footprints, profile);
  if (!placement.feasible) throw ConfigError("queries do not fit the switch: " + placement.diagnosis);

  std::vector<Pipeline::Resident> residents;
  std::vector<std::uint64_t> physical(placement.decision_stage, 0);
  for (std::size_t q = 0; q < plans.size(); ++q) {
    Pipeline::Resident r;
    r.plan = plans[q];
    r.program = make_program(plans[q].query, plans[q].config, hooks);
    r.stages = placement.stages[q];
    const auto& ops = r.program->ops();
    const auto& layout = plans[q].footprint.layout;
    if (ops.size() != layout.size()) {
      throw InvariantError("q" + std::to_string(q) + ": program has " + std::to_string(ops.size()) +
                           " stages, layout " + std::to_string(layout.size()));
    }
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (ops[i].alus != layout[i].alus || ops[i].tcam_entries != layout[i].tcam_entries ||
          ops[i].role != layout[i].role) {
        throw InvariantError("q" + std::to_string(q) + " stage " + std::to_string(i) + ": program op '" + ops[i].role +
                             "' does not match layout '" + layout[i].role + "'");
      }
      physical[r.stages[i]] += ops[i].physical_sram_bits();
    }
    residents.push_back(std::move(r));
  }
  for (std::size_t s = 0; s < physical.size(); ++s) {
    if (physical[s] > profile.sram_bits_per_stage) {
      throw ConfigError("stage " + std::to_string(s) + " needs " + std::to_string(physical[s]) +
                        " physical SRAM bits, profile has " + std::to_string(profile.sram_bits_per_stage));
    }
  }
  return Pipeline(profile, std::move(residents), placement.decision_stage);
}

}  // namespace netprune
