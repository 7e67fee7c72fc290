#pragma once

#include "stktsp/cost_solver.hpp"
#include "stktsp/instance.hpp"
#include "stktsp/reward_solver.hpp"
#include "stktsp/simulation.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace stktsp {

using Json = nlohmann::ordered_json;

inline constexpr int format_version = 1;
inline constexpr const char* tool_version = "0.1.0";

/// Parses text; malformed JSON becomes InvalidInputError.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json instance_to_json(const Instance& inst);
/// Schema: {n, root, dist, mode, k, dists: [{support, probs}]}. Probabilities must
/// sum to 1 within 1e-9. Throws InvalidInputError on any schema or model violation.
Instance instance_from_json(const Json& j);

/// FNV-1a 64 over the canonical (compact) instance dump, as 16 hex digits.
std::string instance_digest(const Instance& inst);

Json params_to_json(const ParamSet& params);
/// Missing fields keep the value from `base`.
ParamSet params_from_json(const Json& j, const ParamSet& base = ParamSet{});

Json plan_to_json(const Plan& plan);
Plan plan_from_json(const Json& j);

Json debug_to_json(const RewardPlanDebug& debug);
Json debug_to_json(const CostPlanDebug& debug);

Json trace_to_json(const ProbeTrace& trace);
Json report_to_json(const SimReport& report);
Json exact_to_json(const ExactValue& value);
Json oracle_to_json(const OracleValue& value);

}  // namespace stktsp
