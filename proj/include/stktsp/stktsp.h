#pragma once

/* C interface to the stochastic k-TSP solver. Objects are opaque handles; strings
 * returned through `char**` are owned by the caller and released with stk_string_free.
 * On a non-OK status, stk_last_error() describes the failure for the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(STK_BUILDING_LIBRARY)
#define STK_API __attribute__((visibility("default")))
#else
#define STK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stk_status {
    STK_OK = 0,
    STK_ERR_USAGE = 2,
    STK_ERR_GUARD = 3,
    STK_ERR_INVALID = 4,
    STK_ERR_INTERNAL = 5
} stk_status;

typedef struct stk_instance stk_instance;
typedef struct stk_params stk_params;
typedef struct stk_plan stk_plan;

STK_API const char* stk_version(void);
STK_API const char* stk_last_error(void);
STK_API void stk_string_free(char* s);

/* Instances */
STK_API stk_status stk_instance_from_json(const char* json, stk_instance** out);
STK_API stk_status stk_instance_to_json(const stk_instance* inst, char** out);
STK_API stk_status stk_instance_digest(const stk_instance* inst, char** out);
STK_API stk_status stk_instance_mode(const stk_instance* inst, char** out);
STK_API void stk_instance_free(stk_instance* inst);

/* spec: {"family", "n", "k", "seed", "mode", "oracle_safe", "min_spoke", "max_spoke",
 *        "max_support", "prob_grid", "max_cost", "jackpot_c", "far_spoke", "spokes", "points"} */
STK_API stk_status stk_generate(const char* spec_json, stk_instance** out);

/* Parameters */
STK_API stk_status stk_params_preset(const char* name, stk_params** out);
/* Overrides any subset of fields given as a JSON object. */
STK_API stk_status stk_params_update(stk_params* params, const char* json);
STK_API stk_status stk_params_to_json(const stk_params* params, char** out);
STK_API void stk_params_free(stk_params* params);

/* Plans. `debug_json` may be NULL. */
STK_API stk_status stk_solve(const stk_instance* inst, const stk_params* params, stk_plan** out, char** debug_json);
STK_API stk_status stk_plan_to_json(const stk_plan* plan, char** out);
STK_API stk_status stk_plan_from_json(const char* json, stk_plan** out);
STK_API stk_status stk_plan_check(const stk_plan* plan, const stk_instance* inst);
STK_API void stk_plan_free(stk_plan* plan);

/* Policies: a non-NULL plan runs the plan, NULL runs the greedy adaptive baseline
 * with the given return-leg setting. */
STK_API stk_status stk_probe(const stk_instance* inst, const stk_plan* plan, int include_return_leg,
                             const double* outcomes, size_t count, char** trace_json);
STK_API stk_status stk_simulate(const stk_instance* inst, const stk_plan* plan, int include_return_leg,
                                uint64_t trials, uint64_t seed, unsigned workers, char** report_json);
STK_API stk_status stk_evaluate_exact(const stk_instance* inst, const stk_plan* plan, int include_return_leg,
                                      char** out);
STK_API stk_status stk_oracle(const stk_instance* inst, int include_return_leg, char** out);

/* costs_json: [{"support", "probs"}, ...] or {"costs": [...]}. Output: {"value", "table"?}. */
STK_API stk_status stk_dp(const char* costs_json, size_t target, double budget, int verbose, char** out);

/* problem_json: {"dist", "root", "profit"}. backend: "exact", "heuristic" or "auto". */
STK_API stk_status stk_orient(const char* problem_json, double budget, const char* backend, double epsilon,
                              char** out);

/* spec: {"families", "n", "k", "seeds", "trials", "preset", "workers", "params"}.
 * Writes the CSV table to csv_out and a JSON summary to summary_json (may be NULL). */
STK_API stk_status stk_bench(const char* spec_json, char** csv_out, char** summary_json);

#ifdef __cplusplus
}
#endif
