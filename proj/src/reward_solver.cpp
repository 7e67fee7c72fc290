#include "stktsp/reward_solver.hpp"

#include "plan_util.hpp"
#include "stktsp/error.hpp"
#include "stktsp/orienteering.hpp"

#include <algorithm>
#include <bit>

namespace stktsp {

int reward_scale_count(std::uint64_t k) { return k == 0 ? 0 : static_cast<int>(std::bit_width(k)) - 1; }

RewardPlanResult build_reward_plan(const Instance& inst, const ParamSet& params) {
    if (inst.mode() != Mode::reward) throw InvalidInputError("build_reward_plan needs a reward-mode instance");
    params.validate();
    RewardPlanResult out;
    out.plan.mode = Mode::reward;
    out.plan.params = params;
    if (inst.k() == 0) return out;

    const auto [scaled, scale] = rescale_instance(inst);
    out.plan.scale = scale;
    const Metric& metric = scaled.metric();
    const std::size_t n = scaled.size();
    const int last_scale = reward_scale_count(scaled.k());
    const OrientConfig config = orient_config(params);

    // Vertices that can never contribute reward are never planned.
    std::vector<bool> planned(n, false);
    planned[scaled.root()] = true;
    for (Vertex v = 0; v < n; ++v) {
        if (scaled.dist(v).max() <= 0.0) planned[v] = true;
    }

    const std::uint32_t cap = params.phase_cap(scaled);
    for (std::uint32_t phase = 0; phase < cap; ++phase) {
        if (std::all_of(planned.begin(), planned.end(), [](bool b) { return b; })) break;
        RewardPhaseDebug dbg;
        dbg.phase = phase;
        Tour previous;  // the previous scale's tours; empty below scale 0
        Tour chosen;
        for (int j = 0; j <= last_scale; ++j) {
            std::vector<double> profit(n, 0.0);
            for (Vertex v = 0; v < n; ++v) {
                if (!planned[v]) profit[v] = reward_profit(scaled.dist(v), scaled.k(), j);
            }
            RewardScaleDebug sd;
            sd.scale = j;
            sd.rep = alg_rep(profit, metric, phase, params);
            const Tour tours = sd.rep.combined();

            OrientInstance residual{metric, std::move(profit), params.phase_budget(phase)};
            residual.exclude(tours);
            sd.richness = solve_orient(residual, config).profit;
            const bool critical = sd.richness >= params.rich_threshold || j == last_scale;
            dbg.scales.push_back(std::move(sd));
            if (critical) {
                dbg.critical = j;
                chosen = detail::ordered_union(tours, previous, n);
                break;
            }
            previous = tours;
        }
        detail::append_phase(out.plan, metric, phase, std::move(chosen), planned);
        out.debug.phases.push_back(std::move(dbg));
    }
    out.plan.truncated = !std::all_of(planned.begin(), planned.end(), [](bool b) { return b; });
    return out;
}

ProbeTrace probe_reward(const Plan& plan, const Instance& inst, const OutcomeSource& outcomes) {
    const Metric& metric = inst.metric();
    const Vertex root = inst.root();
    const bool ret = plan.params.include_return_leg;
    const double target = static_cast<double>(inst.k());
    ProbeTrace tr;
    if (inst.k() == 0) {
        tr.success = true;
        return tr;
    }
    for (const auto& ph : plan.phases) {
        ++tr.phases_entered;
        tr.stop_phase = ph.index;
        Vertex at = root;
        for (Vertex v : ph.tour) {
            tr.traveled += metric(at, v);
            at = v;
            tr.visited.push_back(v);
            tr.collected += outcomes(v);
            if (tr.collected >= target) {
                if (ret) tr.traveled += metric(at, root);
                tr.success = true;
                tr.objective = tr.traveled;
                return tr;
            }
        }
        tr.traveled += metric(at, root);
    }
    tr.objective = tr.traveled;
    return tr;
}

ProbeTrace probe_reward(const Plan& plan, const Instance& inst, std::span<const double> outcomes) {
    return probe_reward(plan, inst, [outcomes](Vertex v) { return outcomes[v]; });
}

}  // namespace stktsp
