#include "fixtures.hpp"

#include "stktsp/cost_solver.hpp"
#include "stktsp/generators.hpp"
#include "stktsp/selection_dp.hpp"
#include "stktsp/simulation.hpp"

#include <doctest.h>

#include <set>

using namespace stktsp;

TEST_CASE("last scale formula") {
    CHECK(cost_last_scale(3, 2.0, 8) == 6);
    CHECK(cost_last_scale(0, 1.1, 1) == 0);
    CHECK(cost_last_scale(0, 2.0, 5) == 2);
}

TEST_CASE("Y-tilde of three unit costs at budget 3 is 3") {
    std::vector<DiscreteDist> three(3, DiscreteDist::point(1));
    CHECK(dp_target(three, 3.0, 0.2) == 3);
    CHECK(dp_target(std::vector<DiscreteDist>{}, 3.0, 0.2) == 0);
}

TEST_CASE("Y-tilde keeps a target whose probability ties the threshold") {
    const std::vector<DiscreteDist> costs{DiscreteDist::point(2.74), DiscreteDist({0.09, 3.45}, {0.2, 0.8}),
                                          DiscreteDist::point(1.6), DiscreteDist::point(3.27),
                                          DiscreteDist::point(3.56)};
    CHECK(brute_force_prob(costs, 2, 3.0) == doctest::Approx(0.2));
    CHECK(dp_target(costs, 3.0, 0.2) == 2);
}

TEST_CASE("constant Y-tilde picks scale 0") {
    std::vector<DiscreteDist> d(4, DiscreteDist::point(1000));
    d[0] = DiscreteDist();
    Instance inst(fx::star({1, 1, 1}), Mode::cost, 2, d);
    ParamSet p = ParamSet::desk();
    p.max_phases = 4;
    auto r = build_cost_plan(inst, p);
    REQUIRE(r.debug.phases.size() == r.plan.phases.size());
    for (std::size_t i = 0; i < r.debug.phases.size(); ++i) {
        const auto& ph = r.debug.phases[i];
        for (const auto& s : ph.scales) CHECK(s.y_tilde == 0);
        CHECK(ph.critical == 0);
        CHECK(r.plan.phases[i].tour == ph.scales[0].pair_union);
    }
}

TEST_CASE("probe_cost examples") {
    const Metric m({{0, 1}, {1, 0}}, 0);
    Instance one(m, Mode::cost, 1, {DiscreteDist(), DiscreteDist::point(0)});
    Plan plan;
    plan.mode = Mode::cost;
    plan.params = ParamSet::desk();
    plan.phases = {{0, {1}, 2.0}};
    auto tr = probe_cost(plan, one, std::vector<double>{0, 0});
    CHECK(tr.objective == 2.0);
    CHECK(tr.success);

    auto step = select_cheapest({{1, 0.9}, {2, 0.4}, {3, 0.5}}, 1.0, 3);
    REQUIRE(step.chosen.size() == 2);
    CHECK(step.chosen[0].vertex == 2);
    CHECK(step.chosen[1].vertex == 3);
    CHECK(fx::max_cardinality({0.4, 0.5, 0.9}, 1.0) == 2);

    // Cost 7 exceeds the phase-0 budget 6; Process 1 budgets 2, 4, 8 admit it at phase 3.
    Instance big(m, Mode::cost, 1, {DiscreteDist(), DiscreteDist::point(7)});
    auto far = probe_cost(plan, big, std::vector<double>{0, 7});
    REQUIRE_FALSE(far.selection_log.empty());
    CHECK(far.selection_log[0].process2.chosen.empty());
    CHECK(far.success);
    CHECK(far.selection_log.back().phase == 3);
    CHECK(far.objective == doctest::Approx(2.0 + 7.0));
}

TEST_CASE("selection is cheapest-first optimal and within budget") {
    Rng rng(41);
    for (int t = 0; t < 300; ++t) {
        const std::size_t size = rng.below(13);
        std::vector<SelectedVertex> pool;
        std::vector<double> costs;
        for (std::size_t i = 0; i < size; ++i) {
            const double c = std::round(rng.uniform(0, 3) * 100) / 100;
            pool.push_back({i + 1, c});
            costs.push_back(c);
        }
        const double budget = rng.uniform(0, 8);
        auto step = select_cheapest(pool, budget, size);
        CHECK(step.chosen.size() == fx::max_cardinality(costs, budget));
        CHECK(step.spent <= budget + 1e-12);
    }
}

TEST_CASE("cost plans and traces respect budgets and the selection count") {
    for (Family fam : {Family::pandora_cost, Family::star, Family::euclid}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            GenSpec spec;
            spec.family = fam;
            spec.mode = Mode::cost;
            spec.n = 5 + seed * 2;
            spec.k = 1 + seed;
            spec.seed = seed;
            const Instance inst = generate(spec);
            const ParamSet p = ParamSet::desk();
            auto r = build_cost_plan(inst, p);
            std::set<Vertex> seen;
            for (const auto& ph : r.plan.phases) {
                CHECK(ph.closed_length <= 2.0 * p.reps * p.rho * p.phase_budget(ph.index) * (1 + 1e-9));
                for (Vertex v : ph.tour) CHECK(seen.insert(v).second);
            }
            for (const auto& ph : r.debug.phases) {
                CHECK(static_cast<int>(ph.scales.size()) == ph.last_scale + 1);
            }

            Rng rng(seed);
            for (int t = 0; t < 200; ++t) {
                std::vector<double> out(inst.size());
                for (Vertex v = 0; v < inst.size(); ++v) out[v] = sample(inst.dist(v), rng);
                auto tr = probe_cost(r.plan, inst, out);
                CHECK(tr.selected.size() <= inst.k());
                for (const auto& log : tr.selection_log) {
                    const double gi = p.phase_budget(log.phase) / r.plan.scale;
                    CHECK(log.process1.spent <= gi * (1 + 1e-12));
                    CHECK(log.process2.spent <= 6 * gi * (1 + 1e-12));
                }
                std::set<Vertex> sel;
                for (const auto& s : tr.selected) {
                    CHECK(sel.insert(s.vertex).second);
                    CHECK(std::find(tr.visited.begin(), tr.visited.end(), s.vertex) != tr.visited.end());
                }
            }
        }
    }
}

TEST_CASE("probing stops travelling once k vertices are selected") {
    const Metric m = fx::star({1, 1, 1});
    Instance inst(m, Mode::cost, 1, {DiscreteDist(), DiscreteDist::point(0), DiscreteDist::point(0),
                                     DiscreteDist::point(0)});
    Plan plan;
    plan.mode = Mode::cost;
    plan.params = ParamSet::desk();
    plan.phases = {{1, {1, 2, 3}, 6.0}};
    auto tr = probe_cost(plan, inst, std::vector<double>{0, 0, 0, 0});
    CHECK(tr.visited == std::vector<Vertex>{1});
    CHECK(tr.objective == 2.0);
}
