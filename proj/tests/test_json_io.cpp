#include "fixtures.hpp"

#include "stktsp/cost_solver.hpp"
#include "stktsp/error.hpp"
#include "stktsp/generators.hpp"
#include "stktsp/json_io.hpp"
#include "stktsp/reward_solver.hpp"
#include "stktsp/simulation.hpp"

#include <doctest.h>

using namespace stktsp;

TEST_CASE("instance round trip keeps the schema field names") {
    GenSpec spec;
    spec.seed = 5;
    const Instance inst = generate(spec);
    const Json j = instance_to_json(inst);
    for (const char* key : {"version", "n", "root", "dist", "mode", "k", "dists"}) CHECK(j.contains(key));
    const Instance back = instance_from_json(parse_json(j.dump()));
    CHECK(instance_to_json(back).dump() == j.dump());
    CHECK(instance_digest(back) == instance_digest(inst));
    CHECK(instance_digest(inst).size() == 16);
}

TEST_CASE("instance parsing rejects bad input") {
    CHECK_THROWS_AS(parse_json("{not json"), InvalidInputError);
    Json j = instance_to_json(fx::triangle_instance());
    Json bad = j;
    bad["dists"][1]["probs"] = {0.5, 0.4};
    CHECK_THROWS_AS(instance_from_json(bad), InvalidInputError);
    bad = j;
    bad["mode"] = "profit";
    CHECK_THROWS_AS(instance_from_json(bad), InvalidInputError);
    bad = j;
    bad.erase("k");
    CHECK_THROWS_AS(instance_from_json(bad), InvalidInputError);
    bad = j;
    bad["dist"][0][1] = 7;
    CHECK_THROWS_AS(instance_from_json(bad), InvalidInputError);
    // Within the 1e-9 tolerance is fine.
    Json ok = j;
    ok["dists"][1]["probs"] = {0.5, 0.5 + 5e-10};
    CHECK_NOTHROW(instance_from_json(ok));
}

TEST_CASE("plan round trip gives identical traces") {
    GenSpec spec;
    spec.n = 8;
    spec.k = 5;
    spec.seed = 2;
    const Instance inst = generate(spec);
    const Plan plan = build_reward_plan(inst, ParamSet::desk()).plan;
    const Plan back = plan_from_json(parse_json(plan_to_json(plan).dump()));
    CHECK(back.params == plan.params);
    CHECK(back.order() == plan.order());
    CHECK(back.scale == plan.scale);
    CHECK(simulate(std::cref(back), inst, 5000, 7) == simulate(std::cref(plan), inst, 5000, 7));

    GenSpec cs = spec;
    cs.family = Family::pandora_cost;
    const Instance cinst = generate(cs);
    const Plan cplan = build_cost_plan(cinst, ParamSet::desk()).plan;
    const Plan cback = plan_from_json(parse_json(plan_to_json(cplan).dump()));
    CHECK(simulate(std::cref(cback), cinst, 5000, 7) == simulate(std::cref(cplan), cinst, 5000, 7));
}

TEST_CASE("params round trip and partial overrides") {
    const ParamSet desk = ParamSet::desk();
    CHECK(params_from_json(params_to_json(desk)) == desk);
    const ParamSet g = params_from_json(parse_json(R"({"gamma": 3})"), desk);
    CHECK(g.gamma == 3.0);
    CHECK(g.reps == desk.reps);
    CHECK_THROWS_AS(params_from_json(parse_json(R"({"gamma": 0.5})")), InvalidInputError);
    CHECK_THROWS_AS(params_from_json(parse_json(R"({"backend": "lp"})")), InvalidInputError);
}

TEST_CASE("debug reports carry the per-scale tables") {
    GenSpec spec;
    spec.family = Family::pandora_cost;
    spec.n = 6;
    spec.k = 2;
    const auto r = build_cost_plan(generate(spec), ParamSet::desk());
    const Json d = debug_to_json(r.debug);
    REQUIRE_FALSE(d["phases"].empty());
    CHECK(d["phases"][0].contains("critical"));
    CHECK(d["phases"][0]["scales"][0].contains("y_tilde"));

    const Json rep = report_to_json(SimReport{1.0, 0.1, 10, 1.0, {1.0}, 3});
    CHECK(rep["stderr"] == 0.1);
    CHECK(rep["version"] == format_version);
}
