#include "netprune/planner/plan.hpp"

#include "json.hpp"

#include "netprune/core/errors.hpp"
#include "netprune/planner/bounds.hpp"

namespace netprune {

namespace {

using nlohmann::json;

json footprint_json(const AlgorithmFootprint& f) {
  json stages = json::array();
  for (const auto& s : f.layout) {
    stages.push_back({{"role", s.role}, {"alus", s.alus}, {"sram_bits", s.sram_bits}, {"tcam_entries", s.tcam_entries}});
  }
  return {{"algorithm", to_string(f.params.algorithm)},
          {"stages", f.total.stages},
          {"alus", f.total.alus},
          {"sram_bits", f.total.sram_bits},
          {"tcam_entries", f.total.tcam_entries},
          {"layout", stages}};
}

json config_json(const PrunerConfig& c) {
  return {{"d", c.d},
          {"w", c.w},
          {"policy", to_string(c.policy)},
          {"fingerprint_bits", c.fingerprint_bits},
          {"randomized_topn", c.randomized_topn},
          {"bloom_bits", c.bloom_bits},
          {"bloom_hashes", c.bloom_hashes},
          {"asymmetric_join", c.asymmetric_join},
          {"join_build_side", c.join_build_side == JoinSide::A ? "a" : "b"},
          {"alus_per_stage", c.alus_per_stage},
          {"seed", c.seed}};
}

PrunerConfig config_from(const json& j) {
  PrunerConfig c;
  c.d = j.at("d").get<std::size_t>();
  c.w = j.at("w").get<std::size_t>();
  const auto policy = j.at("policy").get<std::string>();
  if (policy != "lru" && policy != "fifo") throw ParseError("unknown policy '" + policy + "'", 1);
  c.policy = policy == "fifo" ? ReplacementPolicy::Fifo : ReplacementPolicy::Lru;
  c.fingerprint_bits = j.at("fingerprint_bits").get<unsigned>();
  c.randomized_topn = j.at("randomized_topn").get<bool>();
  c.bloom_bits = j.at("bloom_bits").get<std::uint64_t>();
  c.bloom_hashes = j.at("bloom_hashes").get<unsigned>();
  c.asymmetric_join = j.at("asymmetric_join").get<bool>();
  c.join_build_side = j.at("join_build_side").get<std::string>() == "b" ? JoinSide::B : JoinSide::A;
  c.alus_per_stage = j.at("alus_per_stage").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

std::vector<std::pair<std::string, double>> plan_bounds(const QuerySpec& q, const PrunerConfig& c,
                                                        const PlanHints& hints) {
  std::vector<std::pair<std::string, double>> bounds;
  switch (q.kind) {
    case QueryKind::TopN:
      if (c.randomized_topn && hints.stream_length) {
        bounds.emplace_back("expected_unpruned", topn_expected_unpruned(*hints.stream_length, c.w, c.d));
      }
      break;
    case QueryKind::Distinct:
      if (c.fingerprint_bits > 0 && q.guarantee.probabilistic) {
        bounds.emplace_back("max_distinct_keys",
                            static_cast<double>(max_distinct_for_bits(c.fingerprint_bits, c.d, q.guarantee.delta)));
      }
      if (hints.distinct_keys) {
        if (auto frac = distinct_expected_prune_fraction(*hints.distinct_keys, c.d, c.w)) {
          bounds.emplace_back("expected_duplicate_prune_fraction", *frac);
        }
      }
      break;
    case QueryKind::Join:
      bounds.emplace_back("bits_per_filter", static_cast<double>(c.bloom_bits / 2));
      break;
    default: break;
  }
  return bounds;
}

QueryPlan plan_query(const QuerySpec& q, const SwitchProfile& profile, const PlanHints& hints) {
  validate(q);
  QueryPlan plan;
  plan.query = q;
  PrunerConfig& c = plan.config;
  c = default_config(q);
  c.alus_per_stage = profile.alus_per_stage;
  const bool prob = q.guarantee.probabilistic;
  const double delta = q.guarantee.delta;

  if (q.kind == QueryKind::TopN && prob) {
    const auto shape = topn_optimize(q.top_n, delta, profile.sram_bits_per_stage / 64);
    c.randomized_topn = true;
    c.d = shape.d;
    c.w = shape.w;
  }
  if (q.kind == QueryKind::Distinct && prob) {
    if (hints.distinct_keys) {
      const unsigned f = fingerprint_bits(*hints.distinct_keys, c.d, delta);
      if (f > 64) throw ConfigError("DISTINCT needs " + std::to_string(f) + "-bit fingerprints; the switch holds 64");
      c.fingerprint_bits = f;
    } else {
      c.fingerprint_bits = 64;
    }
  }
  plan.bounds = plan_bounds(q, c, hints);
  plan.footprint = estimate_resources(algorithm_params(q, c));
  return plan;
}

std::string plans_to_json(const std::vector<QueryPlan>& plans, const Placement& placement,
                          const SwitchProfile& profile) {
  json doc;
  doc["profile"] = {{"stages", profile.stages},
                    {"alus_per_stage", profile.alus_per_stage},
                    {"sram_bits_per_stage", profile.sram_bits_per_stage},
                    {"tcam_entries", profile.tcam_entries}};
  json qs = json::array();
  for (const auto& p : plans) {
    json bounds = json::object();
    for (const auto& [name, value] : p.bounds) bounds[name] = value;
    json guarantee = p.query.guarantee.probabilistic ? json{{"probabilistic", true}, {"delta", p.query.guarantee.delta}}
                                                     : json{{"probabilistic", false}};
    qs.push_back({{"query", render_query(p.query)},
                  {"kind", to_string(p.query.kind)},
                  {"heuristic", to_string(p.query.heuristic)},
                  {"guarantee", guarantee},
                  {"config", config_json(p.config)},
                  {"footprint", footprint_json(p.footprint)},
                  {"bounds", bounds}});
  }
  doc["queries"] = qs;
  json pack = {{"feasible", placement.feasible}};
  if (placement.feasible) {
    pack["decision_stage"] = placement.decision_stage;
    pack["stages"] = placement.stages;
  } else {
    pack["diagnosis"] = placement.diagnosis;
  }
  doc["packing"] = pack;
  return doc.dump(2);
}

std::vector<QueryPlan> plans_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 1, e.byte);
  }
  std::vector<QueryPlan> out;
  try {
    for (const auto& j : doc.at("queries")) {
      QueryPlan p;
      p.query = parse_query(j.at("query").get<std::string>());
      p.query.heuristic = j.at("heuristic").get<std::string>() == "sum" ? ScoreHeuristic::Sum : ScoreHeuristic::Aph;
      const auto& g = j.at("guarantee");
      if (g.at("probabilistic").get<bool>()) p.query.guarantee = Guarantee::with_probability(g.at("delta").get<double>());
      p.config = config_from(j.at("config"));
      for (const auto& [name, value] : j.at("bounds").items()) p.bounds.emplace_back(name, value.get<double>());
      p.footprint = estimate_resources(algorithm_params(p.query, p.config));
      out.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("plan document: ") + e.what(), 1);
  }
  return out;
}

}  // namespace netprune
