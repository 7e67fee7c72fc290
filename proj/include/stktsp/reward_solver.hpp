#pragma once

#include "stktsp/instance.hpp"
#include "stktsp/probe.hpp"
#include "stktsp/repetition.hpp"

#include <span>
#include <vector>

namespace stktsp {

struct RewardScaleDebug {
    int scale = 0;
    RepResult rep;
    /// Profit left for one more orienteering solve after the repetitions.
    double richness = 0.0;
};

struct RewardPhaseDebug {
    std::uint32_t phase = 0;
    std::vector<RewardScaleDebug> scales;
    int critical = 0;
};

struct RewardPlanDebug {
    std::vector<RewardPhaseDebug> phases;
};

struct RewardPlanResult {
    Plan plan;
    RewardPlanDebug debug;
};

/// floor(log2 k); the last truncation scale.
int reward_scale_count(std::uint64_t k);

/// Pre-processing stage for Stoch-Reward k-TSP. Per phase, scales j = 0, 1, ...
/// run C repetitions on rewards truncated at k / 2^j; the first scale whose
/// residual orienteering profit reaches the richness threshold (or the last
/// scale) is critical, and its tours plus the previous scale's are appended.
RewardPlanResult build_reward_plan(const Instance& inst, const ParamSet& params);

/// Walks the plan collecting every visited reward; stops once the total reaches k.
ProbeTrace probe_reward(const Plan& plan, const Instance& inst, const OutcomeSource& outcomes);
ProbeTrace probe_reward(const Plan& plan, const Instance& inst, std::span<const double> outcomes);

}  // namespace stktsp
