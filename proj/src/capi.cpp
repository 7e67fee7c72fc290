#include "stktsp/stktsp.h"

#include "stktsp/cost_solver.hpp"
#include "stktsp/error.hpp"
#include "stktsp/generators.hpp"
#include "stktsp/json_io.hpp"
#include "stktsp/orienteering.hpp"
#include "stktsp/reward_solver.hpp"
#include "stktsp/selection_dp.hpp"
#include "stktsp/simulation.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

struct stk_instance {
    stktsp::Instance inst;
};

struct stk_params {
    stktsp::ParamSet params;
};

struct stk_plan {
    stktsp::Plan plan;
};

namespace {

using namespace stktsp;

thread_local std::string last_error;

template <typename F>
stk_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return STK_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return static_cast<stk_status>(e.kind());
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return STK_ERR_INVALID;
    } catch (const std::exception& e) {
        last_error = e.what();
        return STK_ERR_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void put(char** out, const std::string& s) {
    if (!out) throw UsageError("output pointer is null");
    *out = dup(s);
}

template <typename T>
const T& need(const T* p, const char* what) {
    if (!p) throw UsageError(std::string(what) + " is null");
    return *p;
}

std::string text(const char* s, const char* what) {
    if (!s) throw UsageError(std::string(what) + " is null");
    return s;
}

Policy policy_for(const stk_plan* plan, int include_return_leg) {
    if (plan) return std::cref(plan->plan);
    return GreedyBaseline{include_return_leg != 0};
}

void check_plan(const stk_plan* plan, const stk_instance* inst) {
    if (!plan) return;
    const Plan& p = plan->plan;
    const Instance& in = need(inst, "instance").inst;
    if (p.mode != in.mode()) {
        throw UsageError("plan mode '" + to_string(p.mode) + "' does not match instance mode '" +
                         to_string(in.mode()) + "'");
    }
    p.check(in);
}

GenSpec gen_spec_from_json(const Json& j) {
    if (!j.is_object()) throw UsageError("generator spec must be a JSON object");
    GenSpec s;
    auto get = [&](const char* key, auto& out) {
        if (!j.contains(key)) return;
        try {
            out = j.at(key).get<std::decay_t<decltype(out)>>();
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("bad generator field '") + key + "': " + e.what());
        }
    };
    std::string family = to_string(s.family), mode = to_string(s.mode);
    get("family", family);
    get("mode", mode);
    s.family = family_from_string(family);
    s.mode = mode_from_string(mode);
    get("n", s.n);
    get("k", s.k);
    get("seed", s.seed);
    get("oracle_safe", s.oracle_safe);
    get("min_spoke", s.min_spoke);
    get("max_spoke", s.max_spoke);
    get("max_support", s.max_support);
    get("prob_grid", s.prob_grid);
    get("max_cost", s.max_cost);
    get("jackpot_c", s.jackpot_c);
    get("far_spoke", s.far_spoke);
    get("spokes", s.spokes);
    get("points", s.points);
    return s;
}

std::vector<DiscreteDist> costs_from_json(const Json& j) {
    const Json& arr = j.is_object() && j.contains("costs") ? j.at("costs") : j;
    if (!arr.is_array()) throw InvalidInputError("costs must be an array of {support, probs}");
    std::vector<DiscreteDist> out;
    for (const auto& d : arr) {
        out.emplace_back(d.at("support").get<std::vector<double>>(), d.at("probs").get<std::vector<double>>());
    }
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

}  // namespace

extern "C" {

const char* stk_version(void) { return tool_version; }

const char* stk_last_error(void) { return last_error.c_str(); }

void stk_string_free(char* s) { std::free(s); }

stk_status stk_instance_from_json(const char* json, stk_instance** out) {
    return guarded([&] {
        auto inst = instance_from_json(parse_json(text(json, "json")));
        need(out, "out");
        *out = new stk_instance{std::move(inst)};
    });
}

stk_status stk_instance_to_json(const stk_instance* inst, char** out) {
    return guarded([&] { put(out, instance_to_json(need(inst, "instance").inst).dump(2)); });
}

stk_status stk_instance_digest(const stk_instance* inst, char** out) {
    return guarded([&] { put(out, instance_digest(need(inst, "instance").inst)); });
}

stk_status stk_instance_mode(const stk_instance* inst, char** out) {
    return guarded([&] { put(out, to_string(need(inst, "instance").inst.mode())); });
}

void stk_instance_free(stk_instance* inst) { delete inst; }

stk_status stk_generate(const char* spec_json, stk_instance** out) {
    return guarded([&] {
        auto inst = generate(gen_spec_from_json(parse_json(text(spec_json, "spec"))));
        need(out, "out");
        *out = new stk_instance{std::move(inst)};
    });
}

stk_status stk_params_preset(const char* name, stk_params** out) {
    return guarded([&] {
        auto p = ParamSet::preset(text(name, "preset"));
        need(out, "out");
        *out = new stk_params{p};
    });
}

stk_status stk_params_update(stk_params* params, const char* json) {
    return guarded([&] {
        if (!params) throw UsageError("params is null");
        params->params = params_from_json(parse_json(text(json, "json")), params->params);
    });
}

stk_status stk_params_to_json(const stk_params* params, char** out) {
    return guarded([&] { put(out, params_to_json(need(params, "params").params).dump(2)); });
}

void stk_params_free(stk_params* params) { delete params; }

stk_status stk_solve(const stk_instance* inst, const stk_params* params, stk_plan** out, char** debug_json) {
    return guarded([&] {
        const Instance& in = need(inst, "instance").inst;
        const ParamSet& p = need(params, "params").params;
        need(out, "out");
        if (in.mode() == Mode::reward) {
            auto r = build_reward_plan(in, p);
            if (debug_json) *debug_json = dup(debug_to_json(r.debug).dump(2));
            *out = new stk_plan{std::move(r.plan)};
        } else {
            auto r = build_cost_plan(in, p);
            if (debug_json) *debug_json = dup(debug_to_json(r.debug).dump(2));
            *out = new stk_plan{std::move(r.plan)};
        }
    });
}

stk_status stk_plan_to_json(const stk_plan* plan, char** out) {
    return guarded([&] { put(out, plan_to_json(need(plan, "plan").plan).dump(2)); });
}

stk_status stk_plan_from_json(const char* json, stk_plan** out) {
    return guarded([&] {
        auto plan = plan_from_json(parse_json(text(json, "json")));
        need(out, "out");
        *out = new stk_plan{std::move(plan)};
    });
}

stk_status stk_plan_check(const stk_plan* plan, const stk_instance* inst) {
    return guarded([&] { check_plan(&need(plan, "plan"), inst); });
}

void stk_plan_free(stk_plan* plan) { delete plan; }

stk_status stk_probe(const stk_instance* inst, const stk_plan* plan, int include_return_leg, const double* outcomes,
                     size_t count, char** trace_json) {
    return guarded([&] {
        const Instance& in = need(inst, "instance").inst;
        if (count != in.size() || (!outcomes && count > 0)) throw UsageError("outcomes must list one value per vertex");
        check_plan(plan, inst);
        std::vector<double> xs(outcomes, outcomes + count);
        auto src = [&xs](Vertex v) { return xs[v]; };
        put(trace_json, trace_to_json(run_policy(policy_for(plan, include_return_leg), in, src)).dump(2));
    });
}

stk_status stk_simulate(const stk_instance* inst, const stk_plan* plan, int include_return_leg, uint64_t trials,
                        uint64_t seed, unsigned workers, char** report_json) {
    return guarded([&] {
        const Instance& in = need(inst, "instance").inst;
        check_plan(plan, inst);
        auto r = simulate(policy_for(plan, include_return_leg), in, trials, seed, workers);
        put(report_json, report_to_json(r).dump(2));
    });
}

stk_status stk_evaluate_exact(const stk_instance* inst, const stk_plan* plan, int include_return_leg, char** out) {
    return guarded([&] {
        const Instance& in = need(inst, "instance").inst;
        check_plan(plan, inst);
        put(out, exact_to_json(evaluate_exact(policy_for(plan, include_return_leg), in)).dump(2));
    });
}

stk_status stk_oracle(const stk_instance* inst, int include_return_leg, char** out) {
    return guarded([&] {
        put(out, oracle_to_json(adaptive_opt(need(inst, "instance").inst, include_return_leg != 0)).dump(2));
    });
}

stk_status stk_dp(const char* costs_json, size_t target, double budget, int verbose, char** out) {
    return guarded([&] {
        auto costs = costs_from_json(parse_json(text(costs_json, "costs")));
        Json j = {{"version", format_version}, {"target", target}, {"budget", budget},
                  {"value", alg_dp(costs, target, budget)}};
        if (verbose && target >= 1 && target <= costs.size()) {
            const DpTable table = build_dp_table(costs, budget, target);
            const std::size_t n = costs.size();
            Json rows = Json::array();
            for (std::size_t l = 0; l <= n; ++l) {
                for (std::size_t m = 0; m <= l; ++m) {
                    const double v = table.at(n, target, l, m);
                    if (v != 0.0) rows.push_back({{"i", n}, {"j", target}, {"l", l}, {"m", m}, {"p", v}});
                }
            }
            j["table"] = rows;
        }
        put(out, j.dump(2));
    });
}

stk_status stk_orient(const char* problem_json, double budget, const char* backend, double epsilon, char** out) {
    return guarded([&] {
        const Json j = parse_json(text(problem_json, "problem"));
        Metric metric(j.at("dist").get<std::vector<std::vector<double>>>(), j.value("root", std::size_t{0}));
        OrientInstance oi{metric, j.at("profit").get<std::vector<double>>(), budget};
        if (oi.profit.size() != metric.size()) throw InvalidInputError("'profit' must list one value per vertex");
        OrientConfig cfg;
        cfg.backend = backend ? backend_from_string(backend) : OrientBackend::automatic;
        const OrientSolution best = solve_orient(oi, cfg);
        const OrientSolution bi = bicrit_orient(oi, epsilon, 1.0, cfg);
        auto sol = [](const OrientSolution& s) {
            return Json{{"tour", s.tour}, {"profit", s.profit}, {"length", s.length}};
        };
        put(out, Json{{"version", format_version}, {"budget", budget}, {"orienteering", sol(best)},
                      {"bicriteria", sol(bi)}}
                     .dump(2));
    });
}

stk_status stk_bench(const char* spec_json, char** csv_out, char** summary_json) {
    return guarded([&] {
        const Json j = parse_json(text(spec_json, "spec"));
        const auto families = j.value("families", std::vector<std::string>{"star", "line", "euclid"});
        const auto seeds = j.value("seeds", std::vector<std::uint64_t>{1, 2, 3});
        const auto trials = j.value("trials", std::uint64_t{20000});
        const auto workers = j.value("workers", 1u);
        ParamSet params = ParamSet::preset(j.value("preset", std::string("desk")));
        if (j.contains("params")) params = params_from_json(j.at("params"), params);

        std::ostringstream csv;
        csv << "instance_digest,family,n,k,alg_mean,alg_stderr,baseline_mean,oracle_value,ratio_alg_over_oracle\n";
        Json rows = Json::array();
        for (const auto& fam : families) {
            for (auto seed : seeds) {
                Json spec = j;
                spec.erase("families");
                spec.erase("seeds");
                spec.erase("params");
                spec["family"] = fam;
                spec["seed"] = seed;
                if (!spec.contains("oracle_safe")) spec["oracle_safe"] = true;
                const Instance inst = generate(gen_spec_from_json(spec));
                const Plan plan = inst.mode() == Mode::reward ? build_reward_plan(inst, params).plan
                                                              : build_cost_plan(inst, params).plan;
                const SimReport alg = simulate(std::cref(plan), inst, trials, seed, workers);
                const SimReport base =
                    simulate(GreedyBaseline{params.include_return_leg}, inst, trials, seed, workers);
                std::optional<double> oracle;
                try {
                    oracle = adaptive_opt(inst, params.include_return_leg).value;
                } catch (const GuardError&) {
                } catch (const InvalidInputError&) {
                }
                const std::string digest = instance_digest(inst);
                csv << digest << ',' << fam << ',' << inst.size() << ',' << inst.k() << ',' << fmt(alg.mean_objective)
                    << ',' << fmt(alg.std_error) << ',' << fmt(base.mean_objective) << ','
                    << (oracle ? fmt(*oracle) : "") << ','
                    << (oracle && *oracle > 0 ? fmt(alg.mean_objective / *oracle) : "") << '\n';
                Json row = {{"instance_digest", digest}, {"family", fam},      {"n", inst.size()},
                            {"k", inst.k()},             {"alg_mean", alg.mean_objective},
                            {"alg_stderr", alg.std_error}, {"baseline_mean", base.mean_objective}};
                row["oracle_value"] = oracle ? Json(*oracle) : Json(nullptr);
                row["ratio_alg_over_oracle"] =
                    oracle && *oracle > 0 ? Json(alg.mean_objective / *oracle) : Json(nullptr);
                rows.push_back(row);
            }
        }
        put(csv_out, csv.str());
        if (summary_json) {
            *summary_json = dup(Json{{"version", format_version}, {"params", params_to_json(params)},
                                     {"trials", trials}, {"rows", rows}}
                                    .dump(2));
        }
    });
}

}  // extern "C"
