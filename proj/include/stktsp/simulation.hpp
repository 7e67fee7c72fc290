#pragma once

#include "stktsp/instance.hpp"
#include "stktsp/probe.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace stktsp {

/// Runs the plan's probing stage for the instance's mode.
ProbeTrace probe(const Plan& plan, const Instance& inst, const OutcomeSource& outcomes);

/// Naive adaptive comparison policy. Reward mode: next vertex maximizes
/// E[min{R_v, remaining target}] / distance. Cost mode: next vertex maximizes
/// P[C_v <= max(1, traveled) / remaining] / distance, stopping once k vertices
/// are observed and selecting all of them. Ties go to the nearer, then lower-index vertex.
struct GreedyBaseline {
    bool include_return_leg = true;
};

GreedyBaseline greedy_adaptive_baseline(const Instance& inst, bool include_return_leg = true);
ProbeTrace run_baseline(const GreedyBaseline& policy, const Instance& inst, const OutcomeSource& outcomes);

using Policy = std::variant<std::reference_wrapper<const Plan>, GreedyBaseline>;

ProbeTrace run_policy(const Policy& policy, const Instance& inst, const OutcomeSource& outcomes);

struct SimReport {
    double mean_objective = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    double success_rate = 0.0;
    /// Fraction of trials that entered plan phase i; empty for baselines.
    std::vector<double> phase_entry_freq;
    std::uint64_t seed = 0;

    bool operator==(const SimReport&) const = default;
};

/// Monte Carlo estimate over `trials` independent outcome vectors. Trial s draws from
/// stream s of `seed`, and the reduction order is fixed, so the report is bit-identical
/// for any worker count.
SimReport simulate(const Policy& policy, const Instance& inst, std::uint64_t trials, std::uint64_t seed,
                   unsigned workers = 1);

struct ExactValue {
    double value = 0.0;
    double success_prob = 0.0;
    std::size_t leaves = 0;
};

/// Exact expectation by enumerating outcomes only for vertices the policy actually
/// visits (later outcomes integrate out). Throws GuardError past `max_leaves`.
ExactValue evaluate_exact(const Policy& policy, const Instance& inst, std::size_t max_leaves = 1'000'000);

struct OracleValue {
    double value = 0.0;
    std::size_t policy_size = 0;
};

/// Optimal adaptive expected travel for Stoch-Reward k-TSP by memoized backward
/// induction on (current vertex, visited set, min{reward so far, k}).
/// Guards: n <= 6, support <= 3, k <= 64; the instance must be almost surely feasible
/// (the minimum rewards alone must reach k).
OracleValue adaptive_opt_reward(const Instance& inst, bool include_return_leg = true);

/// Optimal adaptive expected travel plus selected cost for Stoch-Cost k-TSP with
/// selection deferred to stopping time (any visited vertex may be selected).
/// Guards: n <= 5, support <= 2.
OracleValue adaptive_opt_cost(const Instance& inst, bool include_return_leg = true);

OracleValue adaptive_opt(const Instance& inst, bool include_return_leg = true);

/// Pairwise sum with a fixed split, independent of how the values were produced.
double pairwise_sum(std::span<const double> values);

}  // namespace stktsp
