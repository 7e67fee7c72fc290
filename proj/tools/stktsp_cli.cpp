#include "stktsp/stktsp.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

struct CliError {
    int code;
    std::string message;
};

void check(stk_status s) {
    if (s != STK_OK) throw CliError{static_cast<int>(s), stk_last_error()};
}

struct Free {
    void operator()(stk_instance* p) const { stk_instance_free(p); }
    void operator()(stk_params* p) const { stk_params_free(p); }
    void operator()(stk_plan* p) const { stk_plan_free(p); }
    void operator()(char* p) const { stk_string_free(p); }
};

using InstancePtr = std::unique_ptr<stk_instance, Free>;
using ParamsPtr = std::unique_ptr<stk_params, Free>;
using PlanPtr = std::unique_ptr<stk_plan, Free>;

/// Takes ownership of a library string.
std::string take(char* s) {
    std::unique_ptr<char, Free> guard(s);
    return s ? std::string(s) : std::string();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{STK_ERR_INVALID, "cannot read '" + path + "'"};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{STK_ERR_INVALID, "cannot write '" + path + "'"};
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

/// Writes to `path`, or to stdout when no path is given.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << '\n';
    } else {
        write_file(path, text);
    }
}

InstancePtr load_instance(const std::string& path) {
    stk_instance* inst = nullptr;
    check(stk_instance_from_json(read_file(path).c_str(), &inst));
    return InstancePtr(inst);
}

PlanPtr load_plan(const std::string& path) {
    stk_plan* plan = nullptr;
    check(stk_plan_from_json(read_file(path).c_str(), &plan));
    return PlanPtr(plan);
}

std::string digest_of(const stk_instance* inst) {
    char* out = nullptr;
    check(stk_instance_digest(inst, &out));
    return take(out);
}

std::string params_json(const stk_params* p) {
    char* out = nullptr;
    check(stk_params_to_json(p, &out));
    return take(out);
}

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void write_record(const std::string& path, const std::string& command, const std::string& digest,
                  const Json& params, const Json& plan_summary, const Json& result, double wall) {
    if (path.empty()) return;
    Json r = {{"version", 1},
              {"tool_version", stk_version()},
              {"command", command},
              {"instance_digest", digest},
              {"params", params},
              {"plan_summary", plan_summary},
              {"result", result},
              {"timings", {{"wall_seconds", wall}}}};
    write_file(path, r.dump(2));
}

Json plan_summary(const Json& plan) {
    Json phases = Json::array();
    std::size_t vertices = 0;
    for (const auto& ph : plan.at("phases")) {
        vertices += ph.at("vertices").size();
        phases.push_back({{"i", ph.at("i")}, {"size", ph.at("vertices").size()},
                          {"closed_length", ph.at("closed_length")}});
    }
    return {{"mode", plan.at("mode")}, {"phases", phases}, {"vertices", vertices},
            {"truncated", plan.at("truncated")}};
}

std::string command_line(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

struct GenOpts {
    std::string family, mode = "reward", out;
    std::size_t n = 5;
    std::uint64_t k = 3, seed = 0;
    bool oracle_safe = false;
    std::optional<double> min_spoke, max_spoke, max_cost, jackpot_c, far_spoke;
    std::optional<std::size_t> max_support;
    std::optional<std::uint32_t> prob_grid;
};

Json gen_spec(const GenOpts& o) {
    Json s = {{"family", o.family}, {"n", o.n}, {"k", o.k}, {"seed", o.seed}, {"mode", o.mode},
              {"oracle_safe", o.oracle_safe}};
    if (o.min_spoke) s["min_spoke"] = *o.min_spoke;
    if (o.max_spoke) s["max_spoke"] = *o.max_spoke;
    if (o.max_cost) s["max_cost"] = *o.max_cost;
    if (o.jackpot_c) s["jackpot_c"] = *o.jackpot_c;
    if (o.far_spoke) s["far_spoke"] = *o.far_spoke;
    if (o.max_support) s["max_support"] = *o.max_support;
    if (o.prob_grid) s["prob_grid"] = *o.prob_grid;
    return s;
}

void run_gen(const GenOpts& o) {
    stk_instance* raw = nullptr;
    check(stk_generate(gen_spec(o).dump().c_str(), &raw));
    InstancePtr inst(raw);
    char* text = nullptr;
    check(stk_instance_to_json(inst.get(), &text));
    emit(o.out, take(text));
    if (!o.out.empty()) {
        std::cout << "wrote " << o.out << ": family " << o.family << ", n " << o.n << ", k " << o.k
                  << ", digest " << digest_of(inst.get()) << '\n';
    }
}

struct ParamOpts {
    std::string preset = "paper", backend;
    std::optional<double> gamma, epsilon, rich_threshold, dp_prob;
    std::optional<std::uint32_t> reps, max_phases, exact_limit;
    bool no_return_leg = false;
};

void add_param_flags(CLI::App* cmd, ParamOpts& p) {
    cmd->add_option("--preset", p.preset, "parameter preset")->check(CLI::IsMember({"paper", "desk"}));
    cmd->add_option("--gamma", p.gamma, "phase budget growth factor");
    cmd->add_option("--reps", p.reps, "repetitions per scale");
    cmd->add_option("--rich-threshold", p.rich_threshold, "reward richness threshold");
    cmd->add_option("--dp-prob", p.dp_prob, "cost DP probability threshold");
    cmd->add_option("--epsilon", p.epsilon, "bi-criteria search tolerance");
    cmd->add_option("--max-phases", p.max_phases, "phase cap (0 = automatic)");
    cmd->add_option("--exact-limit", p.exact_limit, "largest candidate set for exact orienteering");
    cmd->add_option("--backend", p.backend, "orienteering backend")->check(CLI::IsMember({"exact", "heuristic", "auto"}));
    cmd->add_flag("--no-return-leg", p.no_return_leg, "do not charge the final return to the root");
}

ParamsPtr make_params(const ParamOpts& o) {
    stk_params* raw = nullptr;
    check(stk_params_preset(o.preset.c_str(), &raw));
    ParamsPtr p(raw);
    Json over = Json::object();
    if (o.gamma) over["gamma"] = *o.gamma;
    if (o.epsilon) over["epsilon"] = *o.epsilon;
    if (o.rich_threshold) over["rich_threshold"] = *o.rich_threshold;
    if (o.dp_prob) over["dp_prob"] = *o.dp_prob;
    if (o.reps) over["reps"] = *o.reps;
    if (o.max_phases) over["max_phases"] = *o.max_phases;
    if (o.exact_limit) over["exact_limit"] = *o.exact_limit;
    if (!o.backend.empty()) over["backend"] = o.backend;
    if (o.no_return_leg) over["include_return_leg"] = false;
    const stk_status s = stk_params_update(p.get(), over.dump().c_str());
    if (s == STK_ERR_INVALID) throw CliError{STK_ERR_USAGE, stk_last_error()};
    check(s);
    return p;
}

struct SolveOpts {
    std::string in, out, mode, record;
    bool debug = false;
    ParamOpts params;
};

void print_debug(const Json& debug) {
    const bool cost = debug.at("mode") == "cost";
    for (const auto& ph : debug.at("phases")) {
        std::cout << "  phase " << ph.at("i").get<int>() << ':';
        for (const auto& s : ph.at("scales")) {
            std::cout << " j=" << s.at("j").get<int>() << ' ';
            if (cost) {
                std::cout << "Y~=" << s.at("y_tilde").get<std::size_t>();
            } else {
                std::cout << "T=" << num(s.at("T").get<double>());
            }
        }
        std::cout << "  critical " << (cost ? "j~" : "j") << '=' << ph.at("critical").get<int>() << '\n';
    }
}

void run_solve(const SolveOpts& o, const std::string& cmdline) {
    const auto t0 = Clock::now();
    InstancePtr inst = load_instance(o.in);
    if (!o.mode.empty()) {
        char* m = nullptr;
        check(stk_instance_mode(inst.get(), &m));
        const std::string mode = take(m);
        if (mode != o.mode) throw CliError{STK_ERR_USAGE, "--mode " + o.mode + " but the instance is " + mode};
    }
    ParamsPtr params = make_params(o.params);
    stk_plan* raw = nullptr;
    char* dbg = nullptr;
    check(stk_solve(inst.get(), params.get(), &raw, o.debug ? &dbg : nullptr));
    PlanPtr plan(raw);
    const std::string debug_text = take(dbg);
    char* text = nullptr;
    check(stk_plan_to_json(plan.get(), &text));
    Json pj = Json::parse(take(text));
    if (o.debug) pj["debug"] = Json::parse(debug_text);
    emit(o.out, pj.dump(2));

    const Json summary = plan_summary(pj);
    if (!o.out.empty()) {
        std::cout << "plan: " << summary.at("phases").size() << " phases, " << summary.at("vertices").get<std::size_t>()
                  << " vertices" << (pj.at("truncated").get<bool>() ? " (phase cap reached)" : "") << '\n';
        for (const auto& ph : summary.at("phases")) {
            std::cout << "  phase " << ph.at("i").get<int>() << ": " << ph.at("size").get<std::size_t>()
                      << " vertices, closed length " << num(ph.at("closed_length").get<double>()) << '\n';
        }
        if (o.debug) print_debug(pj.at("debug"));
    }
    write_record(o.record, cmdline, digest_of(inst.get()), Json::parse(params_json(params.get())), summary,
                 Json::object(), seconds_since(t0));
}

struct SimOpts {
    std::string in, plan, out, record;
    std::uint64_t trials = 100000, seed = 1;
    unsigned workers = 1;
    bool baseline = false, exact = false, no_return_leg = false;
};

void run_simulate(const SimOpts& o, const std::string& cmdline) {
    const auto t0 = Clock::now();
    if (o.plan.empty() == !o.baseline) throw CliError{STK_ERR_USAGE, "give exactly one of --plan or --baseline"};
    InstancePtr inst = load_instance(o.in);
    PlanPtr plan = o.plan.empty() ? PlanPtr() : load_plan(o.plan);
    const int ret = o.no_return_leg ? 0 : 1;
    char* text = nullptr;
    check(stk_simulate(inst.get(), plan.get(), ret, o.trials, o.seed, o.workers, &text));
    Json report = Json::parse(take(text));
    if (o.exact) {
        check(stk_evaluate_exact(inst.get(), plan.get(), ret, &text));
        report["exact"] = Json::parse(take(text));
    }
    emit(o.out, report.dump(2));
    if (!o.out.empty()) {
        std::cout << (o.baseline ? "baseline" : "plan") << " mean " << num(report.at("mean_objective").get<double>())
                  << " +- " << num(report.at("stderr").get<double>()) << " over " << o.trials
                  << " trials, success rate " << num(report.at("success_rate").get<double>()) << '\n';
        if (o.exact) std::cout << "exact " << num(report.at("exact").at("value").get<double>()) << '\n';
    }
    Json params = Json::object();
    Json summary = Json::object();
    if (plan) {
        check(stk_plan_to_json(plan.get(), &text));
        const Json pj = Json::parse(take(text));
        params = pj.at("params");
        summary = plan_summary(pj);
    }
    write_record(o.record, cmdline, digest_of(inst.get()), params, summary, report, seconds_since(t0));
}

struct OracleOpts {
    std::string in, out, record;
    bool no_return_leg = false;
};

void run_oracle(const OracleOpts& o, const std::string& cmdline) {
    const auto t0 = Clock::now();
    InstancePtr inst = load_instance(o.in);
    char* text = nullptr;
    check(stk_oracle(inst.get(), o.no_return_leg ? 0 : 1, &text));
    const Json r = Json::parse(take(text));
    if (!o.out.empty()) write_file(o.out, r.dump(2));
    std::cout << num(r.at("value").get<double>()) << '\n';
    write_record(o.record, cmdline, digest_of(inst.get()), Json::object(), Json::object(), r, seconds_since(t0));
}

struct DpOpts {
    std::string costs, out;
    std::size_t target = 0;
    double budget = 0.0;
    bool verbose = false;
};

void run_dp(const DpOpts& o) {
    char* text = nullptr;
    check(stk_dp(read_file(o.costs).c_str(), o.target, o.budget, o.verbose ? 1 : 0, &text));
    const Json r = Json::parse(take(text));
    if (!o.out.empty()) write_file(o.out, r.dump(2));
    std::cout << num(r.at("value").get<double>()) << '\n';
    if (o.verbose && r.contains("table")) {
        std::cout << "P[n, T, l, m] nonzero entries:\n";
        for (const auto& e : r.at("table")) {
            std::cout << "  l=" << e.at("l").get<std::size_t>() << " m=" << e.at("m").get<std::size_t>() << "  "
                      << num(e.at("p").get<double>()) << '\n';
        }
    }
}

struct BenchOpts {
    std::vector<std::string> families{"star", "line", "euclid"};
    std::vector<std::uint64_t> seeds{1, 2, 3};
    std::size_t n = 5;
    std::uint64_t k = 3, trials = 20000;
    std::string mode = "reward", preset = "desk", out, summary;
    unsigned workers = 1;
};

void run_bench(const BenchOpts& o) {
    const Json spec = {{"families", o.families}, {"seeds", o.seeds}, {"n", o.n},
                       {"k", o.k},               {"mode", o.mode},   {"trials", o.trials},
                       {"preset", o.preset},     {"workers", o.workers}};
    char* csv = nullptr;
    char* sum = nullptr;
    check(stk_bench(spec.dump().c_str(), &csv, &sum));
    const std::string csv_text = take(csv);
    const Json summary = Json::parse(take(sum));
    emit(o.out, csv_text);
    if (!o.summary.empty()) write_file(o.summary, summary.dump(2));
    if (!o.out.empty()) {
        std::cout << "family      seed-digest       alg mean      baseline      oracle        ratio\n";
        for (const auto& r : summary.at("rows")) {
            char line[160];
            const auto opt = [&](const char* key) {
                return r.at(key).is_null() ? std::string("-") : num(r.at(key).get<double>());
            };
            std::snprintf(line, sizeof line, "%-11s %-17s %-13s %-13s %-13s %s", r.at("family").get<std::string>().c_str(),
                          r.at("instance_digest").get<std::string>().c_str(), num(r.at("alg_mean").get<double>()).c_str(),
                          num(r.at("baseline_mean").get<double>()).c_str(), opt("oracle_value").c_str(),
                          opt("ratio_alg_over_oracle").c_str());
            std::cout << line << '\n';
        }
    }
}

struct OrientOpts {
    std::string in, backend = "auto";
    double budget = 0.0, epsilon = 1e-5;
};

void run_orient(const OrientOpts& o) {
    char* text = nullptr;
    check(stk_orient(read_file(o.in).c_str(), o.budget, o.backend.c_str(), o.epsilon, &text));
    std::cout << take(text) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-adaptive planning for stochastic k-TSP"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(stk_version()));
    const std::string cmdline = command_line(argc, argv);

    GenOpts gen;
    auto* g = app.add_subcommand("gen", "generate an instance");
    g->add_option("--family", gen.family, "instance family")
        ->required()
        ->check(CLI::IsMember({"star", "line", "euclid", "heavy_tail_reward", "pandora_cost"}));
    g->add_option("--n", gen.n, "vertex count including the root");
    g->add_option("--k", gen.k, "target reward or selection count");
    g->add_option("--seed", gen.seed, "generator seed");
    g->add_option("--mode", gen.mode, "reward or cost")->check(CLI::IsMember({"reward", "cost"}));
    g->add_flag("--oracle-safe", gen.oracle_safe, "add a deterministic fallback so the oracle applies");
    g->add_option("--min-spoke", gen.min_spoke, "smallest spoke or gap");
    g->add_option("--max-spoke", gen.max_spoke, "largest spoke or gap");
    g->add_option("--max-support", gen.max_support, "largest support size");
    g->add_option("--prob-grid", gen.prob_grid, "probability weight granularity");
    g->add_option("--max-cost", gen.max_cost, "largest cost value");
    g->add_option("--jackpot-c", gen.jackpot_c, "heavy-tail jackpot constant");
    g->add_option("--far-spoke", gen.far_spoke, "heavy-tail jackpot spoke");
    g->add_option("--out", gen.out, "output file (default stdout)");

    SolveOpts solve;
    auto* s = app.add_subcommand("solve", "build a non-adaptive plan");
    s->add_option("--in", solve.in, "instance file")->required();
    s->add_option("--out", solve.out, "plan file (default stdout)");
    s->add_option("--mode", solve.mode, "expected instance mode")->check(CLI::IsMember({"reward", "cost"}));
    s->add_flag("--debug", solve.debug, "include per-scale tables");
    s->add_option("--record", solve.record, "write a run record");
    add_param_flags(s, solve.params);

    SimOpts sim;
    auto* m = app.add_subcommand("simulate", "Monte Carlo evaluation of a plan or the baseline");
    m->add_option("--in", sim.in, "instance file")->required();
    m->add_option("--plan", sim.plan, "plan file");
    m->add_flag("--baseline", sim.baseline, "run the greedy adaptive baseline instead of a plan");
    m->add_option("--trials", sim.trials, "number of trials");
    m->add_option("--seed", sim.seed, "simulation seed");
    m->add_option("--workers", sim.workers, "worker threads")->check(CLI::PositiveNumber);
    m->add_flag("--exact", sim.exact, "also compute the exact expectation");
    m->add_flag("--no-return-leg", sim.no_return_leg, "baseline: do not charge the return leg");
    m->add_option("--out", sim.out, "report file (default stdout)");
    m->add_option("--record", sim.record, "write a run record");

    OracleOpts orc;
    auto* o = app.add_subcommand("oracle", "optimal adaptive value by backward induction");
    o->add_option("--in", orc.in, "instance file")->required();
    o->add_flag("--no-return-leg", orc.no_return_leg, "do not charge the return leg");
    o->add_option("--out", orc.out, "report file");
    o->add_option("--record", orc.record, "write a run record");

    DpOpts dp;
    auto* d = app.add_subcommand("dp", "selection probability DP");
    d->add_option("--costs", dp.costs, "cost distributions file")->required();
    d->add_option("--target", dp.target, "selection count T")->required();
    d->add_option("--budget", dp.budget, "budget B")->required();
    d->add_flag("--verbose,-v", dp.verbose, "print the nonzero table slice");
    d->add_option("--out", dp.out, "report file");

    BenchOpts bench;
    auto* b = app.add_subcommand("bench", "plan vs baseline vs oracle table");
    b->add_option("--families", bench.families, "instance families");
    b->add_option("--seeds", bench.seeds, "generator and simulation seeds");
    b->add_option("--n", bench.n, "vertex count including the root");
    b->add_option("--k", bench.k, "target");
    b->add_option("--mode", bench.mode, "reward or cost")->check(CLI::IsMember({"reward", "cost"}));
    b->add_option("--trials", bench.trials, "simulation trials");
    b->add_option("--preset", bench.preset, "parameter preset")->check(CLI::IsMember({"paper", "desk"}));
    b->add_option("--workers", bench.workers, "worker threads")->check(CLI::PositiveNumber);
    b->add_option("--out", bench.out, "CSV file (default stdout)");
    b->add_option("--summary", bench.summary, "JSON summary file");

    OrientOpts orient;
    auto* r = app.add_subcommand("orient", "deterministic orienteering");
    r->add_option("--in", orient.in, "problem file {dist, root, profit}")->required();
    r->add_option("--budget", orient.budget, "length budget")->required();
    r->add_option("--backend", orient.backend, "backend")->check(CLI::IsMember({"exact", "heuristic", "auto"}));
    r->add_option("--epsilon", orient.epsilon, "bi-criteria tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : STK_ERR_USAGE;
    }

    try {
        if (*g) run_gen(gen);
        if (*s) run_solve(solve, cmdline);
        if (*m) run_simulate(sim, cmdline);
        if (*o) run_oracle(orc, cmdline);
        if (*d) run_dp(dp);
        if (*b) run_bench(bench);
        if (*r) run_orient(orient);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.code;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return STK_ERR_INVALID;
    }
    return 0;
}
