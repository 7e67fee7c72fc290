#include "stktsp/repetition.hpp"

#include <algorithm>

namespace stktsp {

Tour RepResult::combined() const {
    Tour out;
    for (const auto& t : tours) out.insert(out.end(), t.begin(), t.end());
    return out;
}

OrientConfig orient_config(const ParamSet& params) { return {params.backend, params.exact_limit}; }

RepResult alg_rep(std::span<const double> profits, const Metric& metric, std::uint32_t phase, const ParamSet& params) {
    OrientInstance inst{metric, std::vector<double>(profits.begin(), profits.end()), params.phase_budget(phase)};
    const OrientConfig config = orient_config(params);
    RepResult out;
    out.tours.reserve(params.reps);
    out.per_rep_profit.reserve(params.reps);
    bool stalled = false;  // an empty round leaves the profits unchanged, so every later round is empty too
    for (std::uint32_t s = 0; s < params.reps; ++s) {
        const bool exhausted = std::none_of(inst.profit.begin(), inst.profit.end(), [](double p) { return p > 0.0; });
        if (exhausted || stalled) {
            out.tours.emplace_back();
            out.per_rep_profit.push_back(0.0);
            continue;
        }
        OrientSolution sol = bicrit_orient(inst, params.epsilon, params.rho, config);
        inst.exclude(sol.tour);
        stalled = sol.tour.empty();
        out.per_rep_profit.push_back(sol.profit);
        out.tours.push_back(std::move(sol.tour));
    }
    return out;
}

}  // namespace stktsp
