#include "fixtures.hpp"

#include "stktsp/error.hpp"
#include "stktsp/generators.hpp"
#include "stktsp/reward_solver.hpp"
#include "stktsp/simulation.hpp"

#include <doctest.h>

using namespace stktsp;

namespace {

Plan one_phase(Mode mode, Tour order, const Metric& m) {
    Plan p;
    p.mode = mode;
    p.params = ParamSet::desk();
    p.phases.push_back({0, order, tour_length(m, order)});
    return p;
}

}  // namespace

TEST_CASE("simulate examples") {
    const Instance line = fx::forced_line(3);
    const Plan det = one_phase(Mode::reward, {1}, line.metric());
    auto r = simulate(std::cref(det), line, 500, 9);
    CHECK(r.std_error == 0.0);
    CHECK(r.mean_objective == 2.0);
    CHECK(r.success_rate == 1.0);

    const Instance tri = fx::triangle_instance();
    const Plan plan = one_phase(Mode::reward, {1, 2}, tri.metric());
    auto s = simulate(std::cref(plan), tri, 100000, 1);
    CHECK(std::abs(s.mean_objective - 2.5) <= 3 * s.std_error);
    CHECK(s.std_error > 0.0);
    CHECK(simulate(std::cref(plan), tri, 100000, 1) == s);
    CHECK(simulate(std::cref(plan), tri, 100000, 1, 4) == s);
}

TEST_CASE("evaluate_exact examples") {
    const Instance tri = fx::triangle_instance();
    const Plan both = one_phase(Mode::reward, {1, 2}, tri.metric());
    CHECK(evaluate_exact(std::cref(both), tri).value == 2.5);

    const Instance line = fx::forced_line(3);
    const Plan single = one_phase(Mode::reward, {1}, line.metric());
    CHECK(evaluate_exact(std::cref(single), line).value == 2.0);

    Plan empty;
    auto e = evaluate_exact(std::cref(empty), line);
    CHECK(e.value == 0.0);
    CHECK(e.success_prob == 0.0);
}

TEST_CASE("reward oracle examples") {
    CHECK(adaptive_opt_reward(fx::forced_line(3)).value == doctest::Approx(2.0));
    // Heading straight for the sure vertex costs 2, below the fixed order's 2.5.
    CHECK(adaptive_opt_reward(fx::triangle_instance()).value == doctest::Approx(2.0));

    Instance risky(fx::star({1}), Mode::reward, 2, {DiscreteDist(), DiscreteDist({0, 2}, {0.5, 0.5})});
    CHECK_THROWS_AS(adaptive_opt_reward(risky), InvalidInputError);
    Instance big(fx::star(std::vector<double>(7, 1.0)), Mode::reward, 1, std::vector<DiscreteDist>(8));
    CHECK_THROWS_AS(adaptive_opt_reward(big), GuardError);
}

TEST_CASE("cost oracle examples") {
    Instance one(Metric({{0, 1}, {1, 0}}, 0), Mode::cost, 1, {DiscreteDist(), DiscreteDist::point(0)});
    CHECK(adaptive_opt_cost(one).value == doctest::Approx(2.0));

    // Visit v1; stop at cost 0 (total 2), otherwise go on to v2 and take it (1 + 1 + 1 + 1).
    Instance two(fx::equilateral(3), Mode::cost, 1,
                 {DiscreteDist(), DiscreteDist({0, 10}, {0.5, 0.5}), DiscreteDist::point(1)});
    CHECK(adaptive_opt_cost(two).value == doctest::Approx(3.0));
    CHECK(adaptive_opt(two).value == doctest::Approx(3.0));
}

TEST_CASE("oracle dominates every fixed order") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        GenSpec spec;
        spec.n = 5;
        spec.k = 3;
        spec.seed = seed;
        spec.oracle_safe = true;
        spec.mode = seed % 2 ? Mode::reward : Mode::cost;
        spec.max_support = 2;
        const Instance inst = generate(spec);
        const double opt = adaptive_opt(inst).value;
        Tour order{1, 2, 3, 4};
        do {
            const Plan p = one_phase(inst.mode(), order, inst.metric());
            CHECK(opt <= evaluate_exact(std::cref(p), inst).value + 1e-9);
        } while (std::next_permutation(order.begin(), order.end()));
    }
}

TEST_CASE("greedy baseline examples") {
    const Instance line = fx::forced_line(3);
    auto only = evaluate_exact(GreedyBaseline{}, line);
    CHECK(only.value == 2.0);

    // Unit rewards on a line: the nearest unvisited vertex always has the best ratio.
    Metric path({{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}}, 0);
    Instance unit(path, Mode::reward, 3, {DiscreteDist(), DiscreteDist::point(1), DiscreteDist::point(1), DiscreteDist::point(1)});
    auto tr = run_baseline(GreedyBaseline{}, unit, [](Vertex) { return 1.0; });
    CHECK(tr.visited == std::vector<Vertex>{1, 2, 3});
    CHECK(tr.objective == 6.0);
}

TEST_CASE("greedy baseline takes the jackpot on heavy-tail instances") {
    GenSpec spec;
    spec.family = Family::heavy_tail_reward;
    spec.n = 6;
    spec.k = 100;
    spec.jackpot_c = 5.0;  // P[jackpot] = 1/2
    const Instance inst = generate(spec);
    const Vertex jackpot = inst.size() - 2;
    CHECK(inst.dist(jackpot).probs()[1] == doctest::Approx(0.5));
    auto tr = run_baseline(GreedyBaseline{}, inst, [](Vertex) { return 0.0; });
    REQUIRE_FALSE(tr.visited.empty());
    CHECK(tr.visited.front() == jackpot);
}

TEST_CASE("phase entry frequencies start at 1 and never increase") {
    GenSpec spec;
    spec.n = 8;
    spec.k = 5;
    spec.seed = 2;
    spec.oracle_safe = true;
    const Instance inst = generate(spec);
    const Plan plan = build_reward_plan(inst, ParamSet::desk()).plan;
    auto r = simulate(std::cref(plan), inst, 20000, 3, 2);
    REQUIRE_FALSE(r.phase_entry_freq.empty());
    CHECK(r.phase_entry_freq[0] == 1.0);
    for (std::size_t i = 1; i < r.phase_entry_freq.size(); ++i) {
        CHECK(r.phase_entry_freq[i] <= r.phase_entry_freq[i - 1]);
    }
}

TEST_CASE("pairwise_sum is exact on small integers") {
    std::vector<double> xs(1001);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = double(i);
    CHECK(pairwise_sum(xs) == 500500.0);
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}
