#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netprune/algorithms/pruner.hpp"
#include "netprune/core/query.hpp"
#include "netprune/planner/packing.hpp"
#include "netprune/planner/profile.hpp"
#include "netprune/planner/resources.hpp"

namespace netprune {

/// Optional workload facts that sharpen the plan.
struct PlanHints {
  std::optional<double> distinct_keys;  // DISTINCT: D
  std::optional<double> stream_length;  // TOP N: m
};

struct QueryPlan {
  QuerySpec query;
  PrunerConfig config;
  AlgorithmFootprint footprint;
  /// Named analytic bounds (e.g. expected_unpruned).
  std::vector<std::pair<std::string, double>> bounds;
};

/// Chooses the algorithm and its parameters for q: resource-table defaults for
/// deterministic queries, the randomized TOP N matrix minimizing d*w (d capped
/// by a stage's SRAM) and fingerprint widths for probabilistic ones.
/// Throws ConfigError when the guarantee cannot be met on this profile.
QueryPlan plan_query(const QuerySpec& q, const SwitchProfile& profile, const PlanHints& hints = {});

/// Named analytic bounds for q run with config c.
std::vector<std::pair<std::string, double>> plan_bounds(const QuerySpec& q, const PrunerConfig& c,
                                                        const PlanHints& hints = {});

/// JSON document with the profile, every plan and the packing.
std::string plans_to_json(const std::vector<QueryPlan>& plans, const Placement& placement,
                          const SwitchProfile& profile);

/// Reads back the query and configuration of every plan in a document
/// produced by plans_to_json. Footprints are recomputed. Throws ParseError.
std::vector<QueryPlan> plans_from_json(std::string_view json);

}  // namespace netprune
