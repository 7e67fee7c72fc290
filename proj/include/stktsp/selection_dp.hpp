#pragma once

#include "stktsp/distribution.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace stktsp {

/// Maps every support value c to min{floor(c * n / budget), n + 1}, n = costs.size().
std::vector<DiscreteDist> discretize(std::span<const DiscreteDist> costs, double budget);

/// Order-statistics table over discretized costs: at(i, j, l, m) is the probability
/// that the j smallest of the first i costs sum to l and the j-th smallest equals m.
class DpTable {
public:
    DpTable(std::size_t n, std::size_t target);

    std::size_t n() const noexcept { return n_; }
    std::size_t target() const noexcept { return target_; }
    /// i in 1..n, j in 1..target, l and m in 0..n.
    double at(std::size_t i, std::size_t j, std::size_t l, std::size_t m) const noexcept;
    double& at(std::size_t i, std::size_t j, std::size_t l, std::size_t m) noexcept;

    /// Sum over l <= n, m <= l of at(n, target, l, m).
    double output() const noexcept;

private:
    std::size_t index(std::size_t i, std::size_t j, std::size_t l, std::size_t m) const noexcept;
    std::size_t n_;
    std::size_t target_;
    std::vector<double> p_;
};

/// Full table for costs discretized against `budget`; target must be in 1..n.
/// Throws GuardError for n > 40 (the table holds n * target * (n + 1)^2 entries).
DpTable build_dp_table(std::span<const DiscreteDist> costs, double budget, std::size_t target);

/// Probability that the `target` cheapest discretized costs sum to at most n.
/// Sandwiched between P[some target-subset fits in budget] and the same with 2 * budget.
/// target = 0 gives 1 and target > n gives 0. Throws InvalidInputError when budget <= 0.
double alg_dp(std::span<const DiscreteDist> costs, std::size_t target, double budget);

/// alg_dp for every target 0..n from a single table pass.
std::vector<double> alg_dp_profile(std::span<const DiscreteDist> costs, double budget);

/// Exact P[the `target` cheapest costs sum to <= budget] by enumerating every outcome
/// combination. Throws GuardError past `max_combinations`.
double brute_force_prob(std::span<const DiscreteDist> costs, std::size_t target, double budget,
                        std::size_t max_combinations = 1'000'000);

}  // namespace stktsp
