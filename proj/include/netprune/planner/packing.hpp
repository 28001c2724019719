#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netprune/planner/profile.hpp"
#include "netprune/planner/resources.hpp"

namespace netprune {

/// Stage assignment of several queries. stages[q][i] is the pipeline stage
/// holding layout stage i of query q; indices increase along each layout.
/// The last profile stage is the shared decision stage.
struct Placement {
  bool feasible = false;
  std::string diagnosis;  // binding constraint when infeasible
  std::vector<std::vector<std::size_t>> stages;
  std::size_t decision_stage = 0;
};

/// First-fit-decreasing packing: queries in decreasing order of stage count,
/// ALUs and SRAM; each layout stage goes to the earliest stage after its
/// predecessor with ALU and SRAM room. TCAM is checked against the switch
/// total. Infeasible results name the binding constraint.
Placement pack_queries(const std::vector<AlgorithmFootprint>& footprints, const SwitchProfile& profile);

/// Independent capacity check of a placement; the first violation found, or
/// nullopt when the placement is valid.
std::optional<std::string> validate_placement(const std::vector<AlgorithmFootprint>& footprints,
                                              const SwitchProfile& profile, const Placement& placement);

}  // namespace netprune
