#pragma once

#include "stktsp/distribution.hpp"
#include "stktsp/metric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stktsp {

enum class Mode { reward, cost };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& s);

/// A Stoch-Reward or Stoch-Cost k-TSP instance. Immutable after construction.
class Instance {
public:
    /// Validates the metric axioms, distribution count, and mode-specific support rules.
    /// Reward supports must be integers; values above k are clamped to k.
    /// The root's distribution is forced to a point mass at 0.
    Instance(Metric metric, Mode mode, std::uint64_t k, std::vector<DiscreteDist> dists);

    const Metric& metric() const noexcept { return metric_; }
    Mode mode() const noexcept { return mode_; }
    std::uint64_t k() const noexcept { return k_; }
    std::size_t size() const noexcept { return metric_.size(); }
    Vertex root() const noexcept { return metric_.root(); }
    const DiscreteDist& dist(Vertex v) const noexcept { return dists_[v]; }
    const std::vector<DiscreteDist>& dists() const noexcept { return dists_; }

    /// Number of vertices other than the root.
    std::size_t num_sites() const noexcept { return metric_.size() - 1; }

private:
    Metric metric_;
    Mode mode_;
    std::uint64_t k_;
    std::vector<DiscreteDist> dists_;
};

/// Rescales so the minimum off-diagonal distance is at least 1. In cost mode the
/// cost distributions are scaled by the same factor.
std::pair<Instance, double> rescale_instance(const Instance& inst);

enum class OrientBackend { exact, heuristic, automatic };

std::string to_string(OrientBackend backend);
OrientBackend backend_from_string(const std::string& s);

struct ParamSet {
    double gamma = 1.1;
    double epsilon = 1e-5;
    std::uint32_t reps = 6000;
    double rich_threshold = 1.0 / 300.0;
    double dp_prob = 0.2;
    double cost_budget_mult_dp = 3.0;
    double cost_budget_mult_select = 6.0;
    bool include_return_leg = true;
    /// 0 selects ceil(log_gamma(2 * n * max_distance)) + 4.
    std::uint32_t max_phases = 0;
    OrientBackend backend = OrientBackend::automatic;
    /// Largest candidate set the exact orienteering backend accepts.
    std::uint32_t exact_limit = 14;
    /// Length factor of the k-TSP backend. Both shipped backends return budget-feasible tours.
    double rho = 1.0;

    static ParamSet paper();
    /// gamma = 2, C = 8, richness 1/4: small enough to keep desk-scale plans short.
    static ParamSet desk();
    static ParamSet preset(const std::string& name);

    /// Throws InvalidInputError when a field is out of its domain.
    void validate() const;

    double phase_budget(std::uint32_t phase) const;
    std::uint32_t phase_cap(const Instance& inst) const;

    bool operator==(const ParamSet&) const = default;
};

struct PlanPhase {
    std::uint32_t index = 0;
    Tour tour;
    /// Closed length in the solver's (rescaled) distance units.
    double closed_length = 0.0;
};

/// Non-adaptive plan: phase-indexed closed tours from the root, probed in order.
struct Plan {
    Mode mode = Mode::reward;
    ParamSet params;
    /// Rescaling factor applied before planning; phase budgets are in rescaled units.
    double scale = 1.0;
    std::vector<PlanPhase> phases;
    bool truncated = false;

    /// Concatenated visit order.
    std::vector<Vertex> order() const;
    /// Throws InvalidInputError unless every vertex is a valid non-root index and
    /// vertex sets are pairwise disjoint across phases.
    void check(const Instance& inst) const;
};

}  // namespace stktsp
