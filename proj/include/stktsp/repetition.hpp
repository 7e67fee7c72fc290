#pragma once

#include "stktsp/instance.hpp"
#include "stktsp/orienteering.hpp"

#include <span>
#include <vector>

namespace stktsp {

struct RepResult {
    std::vector<Tour> tours;
    std::vector<double> per_rep_profit;
    /// tours[0] followed by tours[1], ...
    Tour combined() const;
};

OrientConfig orient_config(const ParamSet& params);

/// C = params.reps rounds of bi-criteria orienteering with budget gamma^phase on a
/// shared profit vector; vertices on each returned tour have their profit reset to
/// zero before the next round, so the rounds are vertex-disjoint. Stops calling
/// the solver once every profit is zero and records the remaining rounds as empty.
RepResult alg_rep(std::span<const double> profits, const Metric& metric, std::uint32_t phase, const ParamSet& params);

}  // namespace stktsp
