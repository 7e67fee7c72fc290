#include "stktsp/cost_solver.hpp"

#include "plan_util.hpp"
#include "stktsp/error.hpp"
#include "stktsp/selection_dp.hpp"

#include <algorithm>
#include <cmath>

namespace stktsp {

SelectionStep select_cheapest(std::vector<SelectedVertex> pool, double budget, std::size_t need) {
    std::sort(pool.begin(), pool.end(), [](const SelectedVertex& a, const SelectedVertex& b) {
        return a.cost < b.cost || (a.cost == b.cost && a.vertex < b.vertex);
    });
    SelectionStep step;
    step.budget = budget;
    step.need = need;
    for (const auto& cand : pool) {
        if (step.chosen.size() >= need || step.spent + cand.cost > budget) break;
        step.spent += cand.cost;
        step.chosen.push_back(cand);
    }
    step.pool = std::move(pool);
    return step;
}

int cost_last_scale(std::uint32_t phase, double gamma, std::size_t n) {
    const double x = static_cast<double>(phase) * std::log2(gamma) + std::log2(static_cast<double>(n));
    // Guard against log2 landing a hair below an exact integer.
    return static_cast<int>(std::floor(x + 1e-12));
}

std::size_t dp_target(std::span<const DiscreteDist> costs, double budget, double threshold) {
    if (costs.empty()) return 0;
    const auto profile = alg_dp_profile(costs, budget);
    const double floor = threshold - 1e-12;
    std::size_t best = 0;
    for (std::size_t t = 0; t < profile.size(); ++t) {
        if (profile[t] >= floor) best = t;
    }
    return best;
}

CostPlanResult build_cost_plan(const Instance& inst, const ParamSet& params) {
    if (inst.mode() != Mode::cost) throw InvalidInputError("build_cost_plan needs a cost-mode instance");
    params.validate();
    CostPlanResult out;
    out.plan.mode = Mode::cost;
    out.plan.params = params;
    if (inst.k() == 0) return out;

    const auto [scaled, scale] = rescale_instance(inst);
    out.plan.scale = scale;
    const Metric& metric = scaled.metric();
    const std::size_t n = scaled.size();

    std::vector<bool> planned(n, false);
    planned[scaled.root()] = true;

    const std::uint32_t cap = params.phase_cap(scaled);
    for (std::uint32_t phase = 0; phase < cap; ++phase) {
        if (std::all_of(planned.begin(), planned.end(), [](bool b) { return b; })) break;
        const double budget = params.phase_budget(phase);
        CostPhaseDebug dbg;
        dbg.phase = phase;
        dbg.last_scale = cost_last_scale(phase, params.gamma, n);

        Tour previous;
        std::size_t best_y = 0;
        Tour chosen;
        for (int j = 0; j <= dbg.last_scale; ++j) {
            const double threshold = std::ldexp(budget, -j);
            std::vector<double> profit(n, 0.0);
            for (Vertex v = 0; v < n; ++v) {
                if (!planned[v]) profit[v] = qualify_prob(scaled.dist(v), threshold);
            }
            CostScaleDebug sd;
            sd.scale = j;
            sd.rep = alg_rep(profit, metric, phase, params);
            const Tour tours = sd.rep.combined();
            sd.pair_union = detail::ordered_union(tours, previous, n);

            std::vector<DiscreteDist> costs;
            costs.reserve(sd.pair_union.size());
            for (Vertex v : sd.pair_union) costs.push_back(scaled.dist(v));
            sd.y_tilde = dp_target(costs, params.cost_budget_mult_dp * budget, params.dp_prob);

            if (j == 0 || sd.y_tilde > best_y) {
                best_y = sd.y_tilde;
                dbg.critical = j;
                chosen = sd.pair_union;
            }
            previous = tours;
            dbg.scales.push_back(std::move(sd));
        }
        detail::append_phase(out.plan, metric, phase, std::move(chosen), planned);
        out.debug.phases.push_back(std::move(dbg));
    }
    out.plan.truncated = !std::all_of(planned.begin(), planned.end(), [](bool b) { return b; });
    return out;
}

ProbeTrace probe_cost(const Plan& plan, const Instance& inst, const OutcomeSource& outcomes) {
    const Metric& metric = inst.metric();
    const Vertex root = inst.root();
    const bool ret = plan.params.include_return_leg;
    const std::size_t k = inst.k();
    // Budgets are stated in the planner's rescaled units; costs here are original.
    const double unit = 1.0 / plan.scale;
    ProbeTrace tr;

    std::vector<SelectedVertex> earlier;  // observed in completed phases, not yet selected
    auto commit = [&](const SelectionStep& step) {
        for (const auto& c : step.chosen) {
            tr.selected.push_back(c);
            tr.collected += c.cost;
        }
    };
    auto finish = [&](bool success) {
        tr.success = success;
        tr.objective = tr.traveled + tr.collected;
        return tr;
    };
    auto drop_chosen = [](std::vector<SelectedVertex>& from, const SelectionStep& step) {
        std::erase_if(from, [&](const SelectedVertex& x) {
            return std::any_of(step.chosen.begin(), step.chosen.end(),
                               [&](const SelectedVertex& c) { return c.vertex == x.vertex; });
        });
    };

    if (k == 0) return finish(true);

    std::uint32_t next_phase = 0;
    for (const auto& ph : plan.phases) {
        ++tr.phases_entered;
        tr.stop_phase = ph.index;
        next_phase = ph.index + 1;
        const double gamma_i = plan.params.phase_budget(ph.index) * unit;
        PhaseSelectionLog log;
        log.phase = ph.index;

        log.process1 = select_cheapest(earlier, gamma_i, k - tr.selected.size());
        commit(log.process1);
        drop_chosen(earlier, log.process1);
        if (tr.selected.size() == k) {
            tr.selection_log.push_back(std::move(log));
            return finish(true);
        }

        const double budget2 = plan.params.cost_budget_mult_select * gamma_i;
        const std::size_t need = k - tr.selected.size();
        std::vector<SelectedVertex> current;
        Vertex at = root;
        bool done = false;
        for (Vertex v : ph.tour) {
            tr.traveled += metric(at, v);
            at = v;
            tr.visited.push_back(v);
            current.push_back({v, outcomes(v)});
            // The pool only grows, so the first prefix that can cover the need is where we stop.
            SelectionStep trial = select_cheapest(current, budget2, need);
            if (trial.chosen.size() == need) {
                log.process2 = std::move(trial);
                done = true;
                break;
            }
        }
        if (done) {
            if (ret) tr.traveled += metric(at, root);
            commit(log.process2);
            tr.selection_log.push_back(std::move(log));
            return finish(true);
        }
        tr.traveled += metric(at, root);
        log.process2 = select_cheapest(current, budget2, need);
        commit(log.process2);
        drop_chosen(current, log.process2);
        earlier.insert(earlier.end(), current.begin(), current.end());
        tr.selection_log.push_back(std::move(log));
    }

    // Past the plan: later phases have empty tours and only run Selection-Process 1.
    while (tr.selected.size() < k && earlier.size() >= k - tr.selected.size()) {
        PhaseSelectionLog log;
        log.phase = next_phase;
        log.virtual_phase = true;
        log.process1 = select_cheapest(earlier, plan.params.phase_budget(next_phase) * unit, k - tr.selected.size());
        commit(log.process1);
        drop_chosen(earlier, log.process1);
        tr.selection_log.push_back(std::move(log));
        ++next_phase;
    }
    return finish(tr.selected.size() == k);
}

ProbeTrace probe_cost(const Plan& plan, const Instance& inst, std::span<const double> outcomes) {
    return probe_cost(plan, inst, [outcomes](Vertex v) { return outcomes[v]; });
}

}  // namespace stktsp
