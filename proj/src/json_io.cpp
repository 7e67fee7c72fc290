#include "stktsp/json_io.hpp"

#include "stktsp/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace stktsp {

namespace {

template <typename T>
T field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw InvalidInputError(std::string("missing field '") + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("bad field '") + name + "': " + e.what());
    }
}

template <typename T>
void maybe(const Json& j, const char* name, T& out) {
    if (!j.contains(name)) return;
    try {
        out = j.at(name).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("bad field '") + name + "': " + e.what());
    }
}

Json tour_json(const Tour& tour) {
    Json a = Json::array();
    for (Vertex v : tour) a.push_back(v);
    return a;
}

Json rep_json(const RepResult& rep) {
    Json tours = Json::array();
    for (const auto& t : rep.tours) tours.push_back(tour_json(t));
    return {{"tours", tours}, {"per_rep_profit", rep.per_rep_profit}};
}

Json selected_json(const std::vector<SelectedVertex>& xs) {
    Json a = Json::array();
    for (const auto& s : xs) a.push_back({{"vertex", s.vertex}, {"cost", s.cost}});
    return a;
}

Json step_json(const SelectionStep& s) {
    return {{"budget", s.budget}, {"need", s.need}, {"pool", selected_json(s.pool)},
            {"chosen", selected_json(s.chosen)}, {"spent", s.spent}};
}

}  // namespace

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInputError(std::string("malformed JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInputError("cannot write '" + path + "'");
    out << text;
}

Json instance_to_json(const Instance& inst) {
    Json dists = Json::array();
    for (const auto& d : inst.dists()) dists.push_back({{"support", d.support()}, {"probs", d.probs()}});
    return {{"version", format_version}, {"n", inst.size()}, {"root", inst.root()},
            {"dist", inst.metric().rows()}, {"mode", to_string(inst.mode())},
            {"k", inst.k()}, {"dists", dists}};
}

Instance instance_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInputError("instance must be a JSON object");
    const auto n = field<std::size_t>(j, "n");
    const auto root = field<std::size_t>(j, "root");
    auto rows = field<std::vector<std::vector<double>>>(j, "dist");
    const Mode mode = [&] {
        try {
            return mode_from_string(field<std::string>(j, "mode"));
        } catch (const UsageError& e) {
            throw InvalidInputError(e.what());
        }
    }();
    const auto k = field<std::uint64_t>(j, "k");
    if (rows.size() != n) throw InvalidInputError("'dist' has " + std::to_string(rows.size()) + " rows, expected n");
    const Json& jd = j.contains("dists") ? j.at("dists") : Json();
    if (!jd.is_array() || jd.size() != n) throw InvalidInputError("'dists' must list n distributions");
    std::vector<DiscreteDist> dists;
    dists.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto support = field<std::vector<double>>(jd[v], "support");
        auto probs = field<std::vector<double>>(jd[v], "probs");
        double total = 0.0;
        for (double p : probs) total += p;
        if (std::abs(total - 1.0) > 1e-9) {
            throw InvalidInputError("probabilities of vertex " + std::to_string(v) + " sum to " +
                                    std::to_string(total) + ", not 1");
        }
        dists.emplace_back(std::move(support), std::move(probs));
    }
    return Instance(Metric(std::move(rows), root), mode, k, std::move(dists));
}

std::string instance_digest(const Instance& inst) {
    const std::string text = instance_to_json(inst).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json params_to_json(const ParamSet& p) {
    return {{"gamma", p.gamma},
            {"epsilon", p.epsilon},
            {"reps", p.reps},
            {"rich_threshold", p.rich_threshold},
            {"dp_prob", p.dp_prob},
            {"cost_budget_mult_dp", p.cost_budget_mult_dp},
            {"cost_budget_mult_select", p.cost_budget_mult_select},
            {"include_return_leg", p.include_return_leg},
            {"max_phases", p.max_phases},
            {"backend", to_string(p.backend)},
            {"exact_limit", p.exact_limit},
            {"rho", p.rho}};
}

ParamSet params_from_json(const Json& j, const ParamSet& base) {
    if (!j.is_object()) throw InvalidInputError("params must be a JSON object");
    ParamSet p = base;
    maybe(j, "gamma", p.gamma);
    maybe(j, "epsilon", p.epsilon);
    maybe(j, "reps", p.reps);
    maybe(j, "rich_threshold", p.rich_threshold);
    maybe(j, "dp_prob", p.dp_prob);
    maybe(j, "cost_budget_mult_dp", p.cost_budget_mult_dp);
    maybe(j, "cost_budget_mult_select", p.cost_budget_mult_select);
    maybe(j, "include_return_leg", p.include_return_leg);
    maybe(j, "max_phases", p.max_phases);
    maybe(j, "exact_limit", p.exact_limit);
    maybe(j, "rho", p.rho);
    if (j.contains("backend")) {
        try {
            p.backend = backend_from_string(field<std::string>(j, "backend"));
        } catch (const UsageError& e) {
            throw InvalidInputError(e.what());
        }
    }
    p.validate();
    return p;
}

Json plan_to_json(const Plan& plan) {
    Json phases = Json::array();
    for (const auto& ph : plan.phases) {
        phases.push_back({{"i", ph.index}, {"vertices", tour_json(ph.tour)}, {"closed_length", ph.closed_length}});
    }
    return {{"version", format_version}, {"mode", to_string(plan.mode)}, {"scale", plan.scale},
            {"params", params_to_json(plan.params)}, {"phases", phases}, {"truncated", plan.truncated}};
}

Plan plan_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInputError("plan must be a JSON object");
    Plan plan;
    try {
        plan.mode = mode_from_string(field<std::string>(j, "mode"));
    } catch (const UsageError& e) {
        throw InvalidInputError(e.what());
    }
    maybe(j, "scale", plan.scale);
    if (!(plan.scale > 0.0) || !std::isfinite(plan.scale)) throw InvalidInputError("plan scale must be positive");
    if (j.contains("params")) plan.params = params_from_json(j.at("params"));
    maybe(j, "truncated", plan.truncated);
    const Json& phases = j.contains("phases") ? j.at("phases") : Json();
    if (!phases.is_array()) throw InvalidInputError("plan needs a 'phases' array");
    for (const auto& ph : phases) {
        PlanPhase p;
        p.index = field<std::uint32_t>(ph, "i");
        p.tour = field<Tour>(ph, "vertices");
        maybe(ph, "closed_length", p.closed_length);
        plan.phases.push_back(std::move(p));
    }
    return plan;
}

Json debug_to_json(const RewardPlanDebug& debug) {
    Json phases = Json::array();
    for (const auto& ph : debug.phases) {
        Json scales = Json::array();
        for (const auto& s : ph.scales) {
            scales.push_back({{"j", s.scale}, {"T", s.richness}, {"rep", rep_json(s.rep)}});
        }
        phases.push_back({{"i", ph.phase}, {"critical", ph.critical}, {"scales", scales}});
    }
    return {{"mode", "reward"}, {"phases", phases}};
}

Json debug_to_json(const CostPlanDebug& debug) {
    Json phases = Json::array();
    for (const auto& ph : debug.phases) {
        Json scales = Json::array();
        for (const auto& s : ph.scales) {
            scales.push_back({{"j", s.scale}, {"y_tilde", s.y_tilde}, {"pair_union", tour_json(s.pair_union)},
                              {"rep", rep_json(s.rep)}});
        }
        phases.push_back({{"i", ph.phase}, {"last_scale", ph.last_scale}, {"critical", ph.critical},
                          {"scales", scales}});
    }
    return {{"mode", "cost"}, {"phases", phases}};
}

Json trace_to_json(const ProbeTrace& t) {
    Json log = Json::array();
    for (const auto& ph : t.selection_log) {
        log.push_back({{"i", ph.phase}, {"virtual", ph.virtual_phase}, {"process1", step_json(ph.process1)},
                       {"process2", step_json(ph.process2)}});
    }
    return {{"visited", t.visited},       {"traveled", t.traveled},
            {"collected", t.collected},   {"selected", selected_json(t.selected)},
            {"objective", t.objective},   {"success", t.success},
            {"phases_entered", t.phases_entered}, {"stop_phase", t.stop_phase},
            {"selection_log", log}};
}

Json report_to_json(const SimReport& r) {
    return {{"version", format_version},       {"mean_objective", r.mean_objective},
            {"stderr", r.std_error},           {"trials", r.trials},
            {"success_rate", r.success_rate},  {"phase_entry_freq", r.phase_entry_freq},
            {"seed", r.seed}};
}

Json exact_to_json(const ExactValue& v) {
    return {{"version", format_version}, {"value", v.value}, {"success_prob", v.success_prob}, {"leaves", v.leaves}};
}

Json oracle_to_json(const OracleValue& v) {
    return {{"version", format_version}, {"value", v.value}, {"policy_size", v.policy_size}};
}

}  // namespace stktsp
