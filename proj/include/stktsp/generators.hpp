#pragma once

#include "stktsp/instance.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace stktsp {

enum class Family { star, line, euclid, heavy_tail_reward, pandora_cost };

std::string to_string(Family family);
Family family_from_string(const std::string& s);

/// Instance family description. `n` counts every vertex, root included; the root is vertex 0.
struct GenSpec {
    Family family = Family::star;
    std::size_t n = 5;
    std::uint64_t k = 3;
    std::uint64_t seed = 0;
    Mode mode = Mode::reward;
    /// Reward families: make the last vertex a deterministic reward-k fallback.
    bool oracle_safe = false;

    double min_spoke = 1.0;
    double max_spoke = 4.0;
    std::size_t max_support = 3;
    /// Atom weights are integers in 1..prob_grid before normalization.
    std::uint32_t prob_grid = 4;
    double max_cost = 4.0;

    /// heavy_tail_reward: jackpot pays k with probability min{1, jackpot_c / sqrt(k)}.
    double jackpot_c = 10.0;
    /// heavy_tail_reward: spoke of the jackpot and of the deterministic ceil(sqrt(k)) vertex.
    double far_spoke = 1.0;

    /// Explicit star spokes for vertices 1..n-1 (overrides sampling).
    std::vector<double> spokes;
    /// Explicit euclid coordinates for all n vertices (overrides sampling).
    std::vector<std::pair<double, double>> points;
};

/// Deterministic in the spec. Throws UsageError on invalid family parameters and
/// InvalidInputError on a degenerate metric.
Instance generate(const GenSpec& spec);

}  // namespace stktsp
