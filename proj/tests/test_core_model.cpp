#include "fixtures.hpp"

#include "stktsp/error.hpp"
#include "stktsp/instance.hpp"
#include "stktsp/metric.hpp"

#include <doctest.h>

using namespace stktsp;

TEST_CASE("validate_metric examples") {
    CHECK(validate_metric(Metric({{0, 1}, {1, 0}}, 0)).ok());

    auto asym = validate_metric(Metric({{0, 1}, {2, 0}}, 0));
    REQUIRE(asym.violations.size() == 1);
    CHECK(asym.violations[0].kind == ViolationKind::asymmetry);
    CHECK(asym.violations[0].u == 0);
    CHECK(asym.violations[0].v == 1);

    auto tri = validate_metric(Metric({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, 0));
    REQUIRE(tri.violations.size() == 1);
    CHECK(tri.violations[0].kind == ViolationKind::triangle);
    CHECK(tri.violations[0].u == 0);
    CHECK(tri.violations[0].v == 1);
    CHECK(tri.violations[0].w == 2);
}

TEST_CASE("validate_metric other axioms") {
    auto diag = validate_metric(Metric({{1, 1}, {1, 0}}, 0));
    REQUIRE_FALSE(diag.ok());
    CHECK(diag.violations[0].kind == ViolationKind::nonzero_diagonal);
    auto neg = validate_metric(Metric({{0, -1}, {-1, 0}}, 0));
    REQUIRE_FALSE(neg.ok());
    CHECK(neg.violations[0].kind == ViolationKind::negative);
    CHECK_FALSE(neg.violations[0].describe().empty());
}

TEST_CASE("metric construction rejects malformed matrices") {
    CHECK_THROWS_AS(Metric({}, 0), InvalidInputError);
    CHECK_THROWS_AS(Metric({{0, 1}, {1}}, 0), InvalidInputError);
    CHECK_THROWS_AS(Metric({{0, 1}, {1, 0}}, 2), InvalidInputError);
}

TEST_CASE("rescale_metric examples") {
    auto [half, s1] = rescale_metric(Metric({{0, 0.5, 1}, {0.5, 0, 1}, {1, 1, 0}}, 0));
    CHECK(s1 == doctest::Approx(2.0));
    CHECK(half(0, 1) == doctest::Approx(1.0));
    CHECK(half(0, 2) == doctest::Approx(2.0));

    auto [one, s2] = rescale_metric(Metric({{0, 1}, {1, 0}}, 0));
    CHECK(s2 == 1.0);
    CHECK(one(0, 1) == 1.0);

    auto [four, s3] = rescale_metric(Metric({{0, 4}, {4, 0}}, 0));
    CHECK(s3 == 1.0);
    CHECK(four(0, 1) == 4.0);

    CHECK_THROWS_AS(rescale_metric(Metric({{0, 0}, {0, 0}}, 0)), InvalidInputError);
}

TEST_CASE("rescale_metric is idempotent") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const Metric m = fx::random_metric(5, rng).scaled(rng.uniform(0.05, 3.0));
        auto [once, s] = rescale_metric(m);
        auto [twice, s2] = rescale_metric(once);
        CHECK(s2 == 1.0);
        CHECK(once.rows() == twice.rows());
        CHECK(once.min_distance() >= 1.0);
    }
}

TEST_CASE("tour_length examples") {
    const Metric leaf({{0, 1}, {1, 0}}, 0);
    CHECK(tour_length(leaf, Tour{}) == 0.0);
    CHECK(tour_length(leaf, Tour{1}) == 2.0);
    CHECK(tour_length(leaf, Tour{1}, false) == 1.0);

    const Metric path({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, 0);
    CHECK(tour_length(path, Tour{1, 2}) == 4.0);
}

TEST_CASE("tour_length reversal and concatenation") {
    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        const Metric m = fx::random_metric(6, rng);
        Tour a{1, 2, 3}, b{4, 5};
        Tour ra(a.rbegin(), a.rend());
        CHECK(tour_length(m, a) == doctest::Approx(tour_length(m, ra)));
        // Concatenating closed tours means walking both loops through the root.
        CHECK(tour_length(m, a) + tour_length(m, b) ==
              doctest::Approx(fx::closed_length(m, a) + fx::closed_length(m, b)));
    }
}

TEST_CASE("check_tour rejects bad tours") {
    const Metric m = fx::equilateral(3);
    CHECK_THROWS_AS(check_tour(m, Tour{1, 1}), InvalidInputError);
    CHECK_THROWS_AS(check_tour(m, Tour{0}), InvalidInputError);
    CHECK_THROWS_AS(check_tour(m, Tour{3}), InvalidInputError);
    CHECK_NOTHROW(check_tour(m, Tour{2, 1}));
}

TEST_CASE("instance validation") {
    const Metric m = fx::equilateral(3);
    CHECK_THROWS_AS(Instance(m, Mode::reward, 2, {DiscreteDist(), DiscreteDist()}), InvalidInputError);
    CHECK_THROWS_AS(Instance(Metric({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, 0), Mode::reward, 1,
                             {DiscreteDist(), DiscreteDist(), DiscreteDist()}),
                    InvalidInputError);
    // Rewards must be integers.
    CHECK_THROWS_AS(Instance(m, Mode::reward, 2, {DiscreteDist(), DiscreteDist::point(0.5), DiscreteDist()}),
                    InvalidInputError);
    // Cost mode cannot ask for more vertices than exist.
    CHECK_THROWS_AS(Instance(m, Mode::cost, 3, {DiscreteDist(), DiscreteDist(), DiscreteDist()}), InvalidInputError);

    // Rewards above k clamp to k; the root's distribution is a point mass at 0.
    Instance inst(m, Mode::reward, 2, {DiscreteDist::point(5), DiscreteDist::point(7), DiscreteDist()});
    CHECK(inst.dist(1).max() == 2.0);
    CHECK(inst.dist(0).max() == 0.0);
    CHECK(inst.num_sites() == 2);
}

TEST_CASE("rescale_instance scales costs with the metric") {
    const Metric m({{0, 0.5, 0.5}, {0.5, 0, 0.5}, {0.5, 0.5, 0}}, 0);
    Instance inst(m, Mode::cost, 1, {DiscreteDist(), DiscreteDist({1, 2}, {0.5, 0.5}), DiscreteDist::point(3)});
    auto [r, s] = rescale_instance(inst);
    CHECK(s == doctest::Approx(2.0));
    CHECK(r.metric()(0, 1) == doctest::Approx(1.0));
    CHECK(r.dist(1).max() == doctest::Approx(4.0));
    CHECK(r.dist(2).min() == doctest::Approx(6.0));
}

TEST_CASE("parameter presets") {
    const ParamSet paper = ParamSet::preset("paper");
    CHECK(paper.gamma == 1.1);
    CHECK(paper.reps == 6000);
    CHECK(paper.epsilon == 1e-5);
    CHECK(paper.rich_threshold == doctest::Approx(1.0 / 300));
    CHECK(paper.dp_prob == 0.2);
    CHECK(paper.cost_budget_mult_dp == 3.0);
    CHECK(paper.cost_budget_mult_select == 6.0);
    CHECK(paper == ParamSet{});

    const ParamSet desk = ParamSet::preset("desk");
    CHECK(desk.gamma == 2.0);
    CHECK(desk.reps == 8);
    CHECK(desk.rich_threshold == 0.25);
    CHECK_THROWS_AS(ParamSet::preset("fast"), UsageError);

    ParamSet bad = desk;
    bad.gamma = 1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);
    CHECK(desk.phase_budget(3) == 8.0);
}

TEST_CASE("plan check enforces disjoint non-root phases") {
    const Instance inst = fx::triangle_instance();
    Plan plan;
    plan.phases = {{0, {1}, 2.0}, {1, {2}, 2.0}};
    CHECK_NOTHROW(plan.check(inst));
    CHECK(plan.order() == std::vector<Vertex>{1, 2});
    plan.phases[1].tour = {1};
    CHECK_THROWS_AS(plan.check(inst), InvalidInputError);
    plan.phases[1].tour = {0};
    CHECK_THROWS_AS(plan.check(inst), InvalidInputError);
}
