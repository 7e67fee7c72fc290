#pragma once

#include "stktsp/instance.hpp"
#include "stktsp/probe.hpp"
#include "stktsp/repetition.hpp"

#include <span>
#include <vector>

namespace stktsp {

struct CostScaleDebug {
    int scale = 0;
    RepResult rep;
    /// Vertices of this scale's tours followed by the previous scale's, deduplicated.
    Tour pair_union;
    /// Largest target the selection DP certifies with probability >= dp_prob.
    std::size_t y_tilde = 0;
};

struct CostPhaseDebug {
    std::uint32_t phase = 0;
    int last_scale = 0;
    std::vector<CostScaleDebug> scales;
    int critical = 0;
};

struct CostPlanDebug {
    std::vector<CostPhaseDebug> phases;
};

struct CostPlanResult {
    Plan plan;
    CostPlanDebug debug;
};

/// floor(phase * log2(gamma) + log2(n)).
int cost_last_scale(std::uint32_t phase, double gamma, std::size_t n);

/// Largest T <= costs.size() with alg_dp(T, budget) >= threshold.
std::size_t dp_target(std::span<const DiscreteDist> costs, double budget, double threshold);

/// Pre-processing stage for Stoch-Cost k-TSP: every scale j = 0..l_i runs C
/// repetitions on qualification probabilities P[C_v <= gamma^i / 2^j]; the scale
/// maximizing the DP-certified target (smallest j on ties) is critical.
CostPlanResult build_cost_plan(const Instance& inst, const ParamSet& params);

/// Probing stage: per phase, Selection-Process 1 over earlier phases' unselected
/// vertices (budget gamma^i), then traversal of the phase tour with Selection-Process 2
/// (budget 6 gamma^i). Stops as soon as k vertices are selected.
ProbeTrace probe_cost(const Plan& plan, const Instance& inst, const OutcomeSource& outcomes);
ProbeTrace probe_cost(const Plan& plan, const Instance& inst, std::span<const double> outcomes);

}  // namespace stktsp
