#include "netprune/planner/packing.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace netprune {

namespace {

std::string label(const AlgorithmFootprint& f, std::size_t index) {
  return std::string(to_string(f.params.algorithm)) + " (query " + std::to_string(index) + ")";
}

// Reason a footprint cannot fit the profile even alone, or empty.
std::string alone_violation(const AlgorithmFootprint& f, std::size_t index, const SwitchProfile& p) {
  const std::string name = label(f, index);
  if (f.layout.empty() && f.total.stages > 0) return "layout: " + name + " has no stage program";
  if (f.layout.size() > p.stages - 1) {
    return "stages: " + name + " needs " + std::to_string(f.layout.size()) + " stages, profile offers " +
           std::to_string(p.stages - 1) + " plus the decision stage";
  }
  for (std::size_t i = 0; i < f.layout.size(); ++i) {
    const auto& s = f.layout[i];
    if (s.alus > p.alus_per_stage) {
      return "alus: " + name + " stage " + std::to_string(i) + " needs " + std::to_string(s.alus) +
             " ALUs, profile has " + std::to_string(p.alus_per_stage) + " per stage";
    }
    if (s.sram_bits > p.sram_bits_per_stage) {
      return "sram: " + name + " stage " + std::to_string(i) + " needs " + std::to_string(s.sram_bits) +
             " bits, profile has " + std::to_string(p.sram_bits_per_stage) + " per stage";
    }
  }
  if (f.total.tcam_entries > p.tcam_entries) {
    return "tcam: " + name + " needs " + std::to_string(f.total.tcam_entries) + " entries, profile has " +
           std::to_string(p.tcam_entries);
  }
  return {};
}

Placement infeasible(std::string why) {
  Placement out;
  out.diagnosis = std::move(why);
  return out;
}

}  // namespace

Placement pack_queries(const std::vector<AlgorithmFootprint>& fs, const SwitchProfile& p) {
  if (fs.empty()) return infeasible("no queries to place");
  if (p.stages == 0) return infeasible("stages: profile has no stages");
  for (std::size_t q = 0; q < fs.size(); ++q) {
    if (auto why = alone_violation(fs[q], q, p); !why.empty()) return infeasible(why);
  }

  std::size_t tcam = 0;
  for (const auto& f : fs) tcam += f.total.tcam_entries;
  if (tcam > p.tcam_entries) {
    return infeasible("tcam: queries need " + std::to_string(tcam) + " entries together, profile has " +
                      std::to_string(p.tcam_entries));
  }

  std::vector<std::size_t> order(fs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = fs[a].total;
    const auto& y = fs[b].total;
    if (fs[a].layout.size() != fs[b].layout.size()) return fs[a].layout.size() > fs[b].layout.size();
    if (x.alus != y.alus) return x.alus > y.alus;
    return x.sram_bits > y.sram_bits;
  });

  const std::size_t usable = p.stages - 1;
  std::vector<std::size_t> alus(usable, 0);
  std::vector<std::uint64_t> sram(usable, 0);
  Placement out;
  out.stages.resize(fs.size());
  out.decision_stage = usable;
  for (std::size_t q : order) {
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < fs[q].layout.size(); ++i) {
      const auto& s = fs[q].layout[i];
      std::size_t at = cursor;
      while (at < usable && (alus[at] + s.alus > p.alus_per_stage || sram[at] + s.sram_bits > p.sram_bits_per_stage)) {
        ++at;
      }
      if (at == usable) {
        return infeasible("stages: no stage after " + std::to_string(cursor) + " has room for " + label(fs[q], q) +
                          " stage " + std::to_string(i) + " (" + std::to_string(s.alus) + " ALUs, " +
                          std::to_string(s.sram_bits) + " bits)");
      }
      alus[at] += s.alus;
      sram[at] += s.sram_bits;
      out.stages[q].push_back(at);
      cursor = at + 1;
    }
  }
  out.feasible = true;
  return out;
}

std::optional<std::string> validate_placement(const std::vector<AlgorithmFootprint>& fs, const SwitchProfile& p,
                                              const Placement& pl) {
  if (!pl.feasible) return "placement is marked infeasible";
  if (p.stages == 0 || pl.decision_stage != p.stages - 1) return "decision stage is not the last stage";
  if (pl.stages.size() != fs.size()) return "placement covers a different number of queries";
  std::vector<std::size_t> alus(p.stages, 0);
  std::vector<std::uint64_t> sram(p.stages, 0);
  std::size_t tcam = 0;
  for (std::size_t q = 0; q < fs.size(); ++q) {
    if (pl.stages[q].size() != fs[q].layout.size()) return "query " + std::to_string(q) + " is partially placed";
    for (std::size_t i = 0; i < pl.stages[q].size(); ++i) {
      const std::size_t at = pl.stages[q][i];
      if (at >= pl.decision_stage) return "query " + std::to_string(q) + " uses the decision stage or beyond";
      if (i > 0 && at <= pl.stages[q][i - 1]) return "query " + std::to_string(q) + " stages out of order";
      alus[at] += fs[q].layout[i].alus;
      sram[at] += fs[q].layout[i].sram_bits;
      tcam += fs[q].layout[i].tcam_entries;
    }
  }
  for (std::size_t s = 0; s < p.stages; ++s) {
    if (alus[s] > p.alus_per_stage) return "stage " + std::to_string(s) + " exceeds its ALUs";
    if (sram[s] > p.sram_bits_per_stage) return "stage " + std::to_string(s) + " exceeds its SRAM";
  }
  if (tcam > p.tcam_entries) return "TCAM capacity exceeded";
  return std::nullopt;
}

}  // namespace netprune
