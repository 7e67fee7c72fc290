#pragma once

#include "stktsp/instance.hpp"
#include "stktsp/metric.hpp"

#include <optional>
#include <span>
#include <vector>

namespace stktsp {

/// Rooted orienteering instance. Vertices with zero profit (including the root
/// and anything excluded) are never placed on a returned tour.
struct OrientInstance {
    const Metric& metric;
    std::vector<double> profit;
    double budget = 0.0;

    /// Forces the profit of every listed vertex to zero.
    void exclude(std::span<const Vertex> vertices);
};

struct OrientSolution {
    Tour tour;
    double profit = 0.0;
    /// Closed length, including the return leg.
    double length = 0.0;
};

struct OrientConfig {
    OrientBackend backend = OrientBackend::automatic;
    std::size_t exact_limit = 14;
};

/// Budget comparison with a relative slack of 1e-9.
bool within_budget(double length, double budget);

/// Maximum-profit tour of closed length <= budget; ties go to the shorter tour.
/// Throws GuardError when more than `exact_limit` positive-profit vertices are reachable.
OrientSolution solve_exact(const OrientInstance& inst, std::size_t exact_limit = 14);

/// Greedy best-ratio insertion with 2-opt; always budget-feasible, deterministic.
OrientSolution solve_heuristic(const OrientInstance& inst);

/// Dispatches to the configured backend (automatic: exact when the candidate set fits).
OrientSolution solve_orient(const OrientInstance& inst, const OrientConfig& config);

/// Shortest closed tour (exact backend) or a feasible one (heuristic) collecting at
/// least `target` profit; std::nullopt when the total profit falls short of the target.
std::optional<OrientSolution> solve_ktsp(const Metric& metric, std::span<const double> profit, double target,
                                         const OrientConfig& config);

/// Bi-criteria orienteering: binary search on the profit target over k-TSP solves.
/// Returns a tour of closed length <= rho * budget whose profit is at least the
/// orienteering optimum minus epsilon (exactly the optimum with the exact backend).
OrientSolution bicrit_orient(const OrientInstance& inst, double epsilon, double rho, const OrientConfig& config);

}  // namespace stktsp
