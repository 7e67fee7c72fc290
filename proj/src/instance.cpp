#include "stktsp/instance.hpp"

#include "stktsp/error.hpp"

#include <algorithm>
#include <cmath>

namespace stktsp {

std::string to_string(Mode mode) { return mode == Mode::reward ? "reward" : "cost"; }

Mode mode_from_string(const std::string& s) {
    if (s == "reward") return Mode::reward;
    if (s == "cost") return Mode::cost;
    throw InvalidInputError("unknown mode '" + s + "' (expected reward or cost)");
}

Instance::Instance(Metric metric, Mode mode, std::uint64_t k, std::vector<DiscreteDist> dists)
    : metric_(std::move(metric)), mode_(mode), k_(k), dists_(std::move(dists)) {
    if (dists_.size() != metric_.size()) {
        throw InvalidInputError("instance has " + std::to_string(metric_.size()) + " vertices but " +
                                std::to_string(dists_.size()) + " distributions");
    }
    const auto check = validate_metric(metric_);
    if (!check.ok()) {
        throw InvalidInputError("invalid metric: " + check.violations.front().describe() + " (" +
                                std::to_string(check.violations.size()) + " violations)");
    }
    dists_[metric_.root()] = DiscreteDist::point(0.0);
    if (mode_ == Mode::reward) {
        const double kd = static_cast<double>(k_);
        for (std::size_t v = 0; v < dists_.size(); ++v) {
            for (double r : dists_[v].support()) {
                if (r != std::floor(r)) {
                    throw InvalidInputError("reward support of vertex " + std::to_string(v) + " has non-integer value " +
                                            std::to_string(r));
                }
            }
            if (dists_[v].max() > kd) {
                dists_[v] = dists_[v].transformed([kd](double r) { return std::min(r, kd); });
            }
        }
    } else if (k_ > num_sites()) {
        throw InvalidInputError("cost instance needs k <= " + std::to_string(num_sites()) + " selectable vertices, got k = " +
                                std::to_string(k_));
    }
}

std::pair<Instance, double> rescale_instance(const Instance& inst) {
    auto [metric, s] = rescale_metric(inst.metric());
    if (s == 1.0) return {inst, 1.0};
    std::vector<DiscreteDist> dists = inst.dists();
    if (inst.mode() == Mode::cost) {
        const double dmin = inst.metric().min_distance();
        for (auto& d : dists) d = d.transformed([dmin](double c) { return c / dmin; });
    }
    return {Instance(std::move(metric), inst.mode(), inst.k(), std::move(dists)), s};
}

std::string to_string(OrientBackend backend) {
    switch (backend) {
        case OrientBackend::exact: return "exact";
        case OrientBackend::heuristic: return "heuristic";
        case OrientBackend::automatic: return "auto";
    }
    return "auto";
}

OrientBackend backend_from_string(const std::string& s) {
    if (s == "exact") return OrientBackend::exact;
    if (s == "heuristic") return OrientBackend::heuristic;
    if (s == "auto") return OrientBackend::automatic;
    throw InvalidInputError("unknown orienteering backend '" + s + "'");
}

ParamSet ParamSet::paper() { return ParamSet{}; }

ParamSet ParamSet::desk() {
    ParamSet p;
    p.gamma = 2.0;
    p.reps = 8;
    p.rich_threshold = 0.25;
    return p;
}

ParamSet ParamSet::preset(const std::string& name) {
    if (name == "paper") return paper();
    if (name == "desk") return desk();
    throw UsageError("unknown preset '" + name + "' (expected paper or desk)");
}

void ParamSet::validate() const {
    if (!(gamma > 1.0)) throw InvalidInputError("gamma must be > 1");
    if (!(epsilon > 0.0)) throw InvalidInputError("epsilon must be > 0");
    if (reps == 0) throw InvalidInputError("reps must be positive");
    if (!(dp_prob > 0.0 && dp_prob < 1.0)) throw InvalidInputError("dp_prob must lie in (0, 1)");
    if (!(cost_budget_mult_dp > 0.0) || !(cost_budget_mult_select > 0.0)) {
        throw InvalidInputError("cost budget multipliers must be positive");
    }
    if (!(rho >= 1.0)) throw InvalidInputError("rho must be >= 1");
    if (exact_limit == 0 || exact_limit > 24) throw InvalidInputError("exact_limit must lie in 1..24");
}

double ParamSet::phase_budget(std::uint32_t phase) const { return std::pow(gamma, static_cast<double>(phase)); }

std::uint32_t ParamSet::phase_cap(const Instance& inst) const {
    if (max_phases > 0) return max_phases;
    const double span = 2.0 * static_cast<double>(inst.size()) * std::max(1.0, inst.metric().max_distance());
    return static_cast<std::uint32_t>(std::ceil(std::log(span) / std::log(gamma))) + 4;
}

std::vector<Vertex> Plan::order() const {
    std::vector<Vertex> out;
    for (const auto& ph : phases) out.insert(out.end(), ph.tour.begin(), ph.tour.end());
    return out;
}

void Plan::check(const Instance& inst) const {
    std::vector<bool> seen(inst.size(), false);
    for (const auto& ph : phases) {
        for (Vertex v : ph.tour) {
            if (v >= inst.size()) throw InvalidInputError("plan vertex " + std::to_string(v) + " out of range");
            if (v == inst.root()) throw InvalidInputError("plan must not visit the root");
            if (seen[v]) throw InvalidInputError("plan visits vertex " + std::to_string(v) + " twice");
            seen[v] = true;
        }
    }
}

}  // namespace stktsp
