#include "stktsp/stktsp.h"

#include <doctest.h>
#include <json.hpp>

#include <string>

using Json = nlohmann::json;

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    stk_string_free(s);
    return out;
}

const char* forced_line = R"({"n": 2, "root": 0, "dist": [[0, 1], [1, 0]], "mode": "reward", "k": 3,
  "dists": [{"support": [0], "probs": [1]}, {"support": [3], "probs": [1]}]})";

}  // namespace

TEST_CASE("instance handles round trip") {
    stk_instance* inst = nullptr;
    REQUIRE(stk_instance_from_json(forced_line, &inst) == STK_OK);
    char* text = nullptr;
    REQUIRE(stk_instance_to_json(inst, &text) == STK_OK);
    const Json j = Json::parse(take(text));
    CHECK(j["k"] == 3);
    CHECK(j["version"] == 1);
    char* digest = nullptr;
    REQUIRE(stk_instance_digest(inst, &digest) == STK_OK);
    CHECK(take(digest).size() == 16);
    stk_instance_free(inst);
}

TEST_CASE("errors map to status codes") {
    stk_instance* inst = nullptr;
    CHECK(stk_instance_from_json("{", &inst) == STK_ERR_INVALID);
    CHECK(std::string(stk_last_error()).size() > 0);
    CHECK(stk_generate(R"({"family": "euclid", "n": 0})", &inst) == STK_ERR_USAGE);
    CHECK(stk_generate(R"({"family": "star", "n": 8, "k": 2, "oracle_safe": true})", &inst) == STK_OK);
    char* out = nullptr;
    CHECK(stk_oracle(inst, 1, &out) == STK_ERR_GUARD);
    CHECK(std::string(stk_last_error()).find("n <= 6") != std::string::npos);
    stk_instance_free(inst);
    stk_params* p = nullptr;
    CHECK(stk_params_preset("fast", &p) == STK_ERR_USAGE);
    CHECK(stk_instance_to_json(nullptr, &out) == STK_ERR_USAGE);
}

TEST_CASE("solve, simulate and oracle through the C interface") {
    stk_instance* inst = nullptr;
    REQUIRE(stk_instance_from_json(forced_line, &inst) == STK_OK);
    stk_params* params = nullptr;
    REQUIRE(stk_params_preset("desk", &params) == STK_OK);
    REQUIRE(stk_params_update(params, R"({"reps": 4})") == STK_OK);
    char* pj = nullptr;
    REQUIRE(stk_params_to_json(params, &pj) == STK_OK);
    CHECK(Json::parse(take(pj))["reps"] == 4);

    stk_plan* plan = nullptr;
    char* debug = nullptr;
    REQUIRE(stk_solve(inst, params, &plan, &debug) == STK_OK);
    CHECK(Json::parse(take(debug))["mode"] == "reward");

    char* text = nullptr;
    REQUIRE(stk_plan_to_json(plan, &text) == STK_OK);
    const std::string plan_text = take(text);
    stk_plan* reloaded = nullptr;
    REQUIRE(stk_plan_from_json(plan_text.c_str(), &reloaded) == STK_OK);
    CHECK(stk_plan_check(reloaded, inst) == STK_OK);

    char* r1 = nullptr;
    char* r4 = nullptr;
    REQUIRE(stk_simulate(inst, plan, 1, 2000, 5, 1, &r1) == STK_OK);
    REQUIRE(stk_simulate(inst, reloaded, 1, 2000, 5, 4, &r4) == STK_OK);
    const std::string s1 = take(r1);
    CHECK(s1 == take(r4));
    CHECK(Json::parse(s1)["mean_objective"] == 2.0);

    REQUIRE(stk_evaluate_exact(inst, plan, 1, &text) == STK_OK);
    CHECK(Json::parse(take(text))["value"] == 2.0);
    REQUIRE(stk_evaluate_exact(inst, nullptr, 1, &text) == STK_OK);
    CHECK(Json::parse(take(text))["value"] == 2.0);
    REQUIRE(stk_oracle(inst, 1, &text) == STK_OK);
    CHECK(Json::parse(take(text))["value"] == 2.0);

    const double outcomes[] = {0.0, 3.0};
    REQUIRE(stk_probe(inst, plan, 1, outcomes, 2, &text) == STK_OK);
    CHECK(Json::parse(take(text))["objective"] == 2.0);

    stk_plan_free(reloaded);
    stk_plan_free(plan);
    stk_params_free(params);
    stk_instance_free(inst);
}

TEST_CASE("plan and instance modes must agree") {
    stk_instance* reward = nullptr;
    stk_instance* cost = nullptr;
    REQUIRE(stk_instance_from_json(forced_line, &reward) == STK_OK);
    REQUIRE(stk_generate(R"({"family": "pandora_cost", "n": 3, "k": 1})", &cost) == STK_OK);
    stk_params* params = nullptr;
    REQUIRE(stk_params_preset("desk", &params) == STK_OK);
    stk_plan* plan = nullptr;
    REQUIRE(stk_solve(cost, params, &plan, nullptr) == STK_OK);
    char* out = nullptr;
    CHECK(stk_simulate(reward, plan, 1, 10, 1, 1, &out) == STK_ERR_USAGE);
    stk_plan_free(plan);
    stk_params_free(params);
    stk_instance_free(cost);
    stk_instance_free(reward);
}

TEST_CASE("dp, orient and bench") {
    char* out = nullptr;
    REQUIRE(stk_dp(R"([{"support": [1], "probs": [1]}, {"support": [1, 3], "probs": [0.5, 0.5]}])", 2, 2.0, 1, &out) ==
            STK_OK);
    const Json dp = Json::parse(take(out));
    CHECK(dp["value"].get<double>() == doctest::Approx(0.5));
    CHECK(dp["table"].size() == 1);

    REQUIRE(stk_orient(R"({"dist": [[0, 1, 1], [1, 0, 2], [1, 2, 0]], "root": 0, "profit": [0, 5, 3]})", 2.0, "exact",
                       1e-5, &out) == STK_OK);
    const Json o = Json::parse(take(out));
    CHECK(o["orienteering"]["profit"] == 5.0);
    CHECK(o["bicriteria"]["tour"] == Json::array({1}));

    char* csv = nullptr;
    char* summary = nullptr;
    REQUIRE(stk_bench(R"({"families": ["star"], "seeds": [1], "n": 4, "k": 2, "trials": 500})", &csv, &summary) ==
            STK_OK);
    const std::string table = take(csv);
    CHECK(table.rfind("instance_digest,family,n,k,alg_mean,alg_stderr,baseline_mean,oracle_value,ratio_alg_over_oracle\n",
                      0) == 0);
    CHECK(Json::parse(take(summary))["rows"].size() == 1);
}
