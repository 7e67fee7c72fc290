#include "stktsp/simulation.hpp"

#include "stktsp/cost_solver.hpp"
#include "stktsp/error.hpp"
#include "stktsp/reward_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace stktsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void guard(bool ok, const std::string& what) {
    if (!ok) throw GuardError(what);
}

}  // namespace

ProbeTrace probe(const Plan& plan, const Instance& inst, const OutcomeSource& outcomes) {
    if (plan.mode != inst.mode()) throw InvalidInputError("plan mode does not match instance mode");
    return inst.mode() == Mode::reward ? probe_reward(plan, inst, outcomes) : probe_cost(plan, inst, outcomes);
}

GreedyBaseline greedy_adaptive_baseline(const Instance&, bool include_return_leg) { return {include_return_leg}; }

ProbeTrace run_baseline(const GreedyBaseline& policy, const Instance& inst, const OutcomeSource& outcomes) {
    const Metric& metric = inst.metric();
    const Vertex root = inst.root();
    const std::size_t n = inst.size();
    const double k = static_cast<double>(inst.k());
    ProbeTrace tr;
    std::vector<bool> seen(n, false);
    seen[root] = true;
    Vertex at = root;

    auto goal_met = [&] {
        return inst.mode() == Mode::reward ? tr.collected >= k : tr.selected.size() >= inst.k();
    };
    while (!goal_met()) {
        double best_score = -1.0, best_dist = kInf;
        Vertex best = n;
        for (Vertex v = 0; v < n; ++v) {
            if (seen[v]) continue;
            double gain;
            if (inst.mode() == Mode::reward) {
                const double remaining = k - tr.collected;
                gain = 0.0;
                const auto& d = inst.dist(v);
                for (std::size_t t = 0; t < d.size(); ++t) gain += d.probs()[t] * std::min(d.support()[t], remaining);
            } else {
                const double remaining = static_cast<double>(inst.k() - tr.selected.size());
                gain = qualify_prob(inst.dist(v), std::max(1.0, tr.traveled) / remaining);
            }
            const double dist = std::max(metric(at, v), 1e-12);
            const double score = gain / dist;
            if (score > best_score || (score == best_score && dist < best_dist)) {
                best_score = score;
                best_dist = dist;
                best = v;
            }
        }
        if (best == n || (inst.mode() == Mode::reward && best_score <= 0.0)) break;
        tr.traveled += metric(at, best);
        at = best;
        seen[best] = true;
        tr.visited.push_back(best);
        const double x = outcomes(best);
        if (inst.mode() == Mode::reward) {
            tr.collected += x;
        } else {
            tr.selected.push_back({best, x});
            tr.collected += x;
        }
    }
    tr.success = goal_met();
    if (policy.include_return_leg || !tr.success) tr.traveled += metric(at, root);
    tr.objective = tr.traveled + (inst.mode() == Mode::cost ? tr.collected : 0.0);
    return tr;
}

ProbeTrace run_policy(const Policy& policy, const Instance& inst, const OutcomeSource& outcomes) {
    if (const auto* plan = std::get_if<std::reference_wrapper<const Plan>>(&policy)) {
        return probe(plan->get(), inst, outcomes);
    }
    return run_baseline(std::get<GreedyBaseline>(policy), inst, outcomes);
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double x : values) s += x;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SimReport simulate(const Policy& policy, const Instance& inst, std::uint64_t trials, std::uint64_t seed,
                   unsigned workers) {
    if (trials == 0) throw InvalidInputError("simulate needs at least one trial");
    if (const auto* plan = std::get_if<std::reference_wrapper<const Plan>>(&policy)) plan->get().check(inst);
    workers = std::max(1U, workers);

    std::vector<double> objective(trials), success(trials);
    std::vector<std::size_t> entered(trials);
    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<double> cache(inst.size());
        for (std::uint64_t s = begin; s < end; ++s) {
            Rng rng = Rng::stream(seed, s);
            std::fill(cache.begin(), cache.end(), std::numeric_limits<double>::quiet_NaN());
            const auto trace = run_policy(policy, inst, [&](Vertex v) {
                if (std::isnan(cache[v])) cache[v] = sample(inst.dist(v), rng);
                return cache[v];
            });
            objective[s] = trace.objective;
            success[s] = trace.success ? 1.0 : 0.0;
            entered[s] = trace.phases_entered;
        }
    };
    if (workers == 1 || trials < 2 * workers) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::min<std::uint64_t>(trials, w * chunk);
            const std::uint64_t end = std::min<std::uint64_t>(trials, begin + chunk);
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    SimReport rep;
    rep.trials = trials;
    rep.seed = seed;
    const double count = static_cast<double>(trials);
    rep.mean_objective = pairwise_sum(objective) / count;
    rep.success_rate = pairwise_sum(success) / count;
    if (trials > 1) {
        // Shifted-data variance: exactly zero when every trial has the same objective.
        const double shift = objective.front();
        std::vector<double> dev(trials), sq(trials);
        for (std::uint64_t s = 0; s < trials; ++s) {
            dev[s] = objective[s] - shift;
            sq[s] = dev[s] * dev[s];
        }
        const double d = pairwise_sum(dev);
        const double ss = std::max(0.0, pairwise_sum(sq) - d * d / count);
        rep.std_error = std::sqrt(ss / (count - 1.0) / count);
    }
    if (const auto* plan = std::get_if<std::reference_wrapper<const Plan>>(&policy)) {
        const std::size_t phases = plan->get().phases.size();
        std::vector<std::uint64_t> hits(phases + 1, 0);
        for (std::size_t e : entered) ++hits[std::min(e, phases)];
        // hits[e] = trials that entered exactly e phases; entry into phase i needs e > i.
        rep.phase_entry_freq.assign(phases, 0.0);
        std::uint64_t at_least = 0;
        for (std::size_t i = phases; i-- > 0;) {
            at_least += hits[i + 1];
            rep.phase_entry_freq[i] = static_cast<double>(at_least) / count;
        }
    }
    return rep;
}

ExactValue evaluate_exact(const Policy& policy, const Instance& inst, std::size_t max_leaves) {
    if (const auto* plan = std::get_if<std::reference_wrapper<const Plan>>(&policy)) plan->get().check(inst);
    // Depth-first odometer over the outcome tree: path[d] is the d-th requested vertex
    // and the support index currently assigned to it.
    std::vector<std::pair<Vertex, std::size_t>> path;
    ExactValue out;
    for (;;) {
        std::size_t depth = 0;
        double prob = 1.0;
        const auto trace = run_policy(policy, inst, [&](Vertex v) {
            if (depth == path.size()) path.emplace_back(v, 0);
            const auto& [vertex, idx] = path[depth++];
            const auto& d = inst.dist(vertex);
            prob *= d.probs()[idx];
            return d.support()[idx];
        });
        path.resize(depth);
        out.value += prob * trace.objective;
        if (trace.success) out.success_prob += prob;
        guard(++out.leaves <= max_leaves,
              "exact evaluation limited to " + std::to_string(max_leaves) + " outcome combinations");
        while (!path.empty() && ++path.back().second == inst.dist(path.back().first).size()) path.pop_back();
        if (path.empty()) break;
    }
    return out;
}

OracleValue adaptive_opt_reward(const Instance& inst, bool include_return_leg) {
    if (inst.mode() != Mode::reward) throw InvalidInputError("adaptive_opt_reward needs a reward-mode instance");
    const std::size_t n = inst.size();
    const std::uint64_t k = inst.k();
    guard(n <= 6, "reward oracle limited to n <= 6, got n = " + std::to_string(n));
    guard(k <= 64, "reward oracle limited to k <= 64, got k = " + std::to_string(k));
    double certificate = 0.0;
    for (Vertex v = 0; v < n; ++v) {
        guard(inst.dist(v).size() <= 3, "reward oracle limited to support size <= 3");
        certificate += inst.dist(v).min();
    }
    if (certificate < static_cast<double>(k)) {
        throw InvalidInputError("reward oracle needs an almost surely feasible instance (minimum rewards sum to " +
                                std::to_string(certificate) + " < k)");
    }

    const Metric& metric = inst.metric();
    const Vertex root = inst.root();
    const std::size_t masks = std::size_t{1} << n;
    std::vector<double> memo(n * masks * (k + 1), -1.0);
    std::size_t states = 0;

    auto value = [&](auto&& self, Vertex at, std::size_t mask, std::uint64_t acc) -> double {
        if (acc >= k) return include_return_leg ? metric(at, root) : 0.0;
        double& slot = memo[(at * masks + mask) * (k + 1) + acc];
        if (slot >= 0.0) return slot;
        double best = kInf;
        for (Vertex u = 0; u < n; ++u) {
            if (u == root || (mask >> u & 1U)) continue;
            const auto& d = inst.dist(u);
            double expect = metric(at, u);
            for (std::size_t t = 0; t < d.size(); ++t) {
                const auto gained = static_cast<std::uint64_t>(d.support()[t]);
                expect += d.probs()[t] * self(self, u, mask | (std::size_t{1} << u), std::min(acc + gained, k));
            }
            best = std::min(best, expect);
        }
        ++states;
        slot = best;
        return best;
    };
    const double v = value(value, root, std::size_t{1} << root, 0);
    return {v, states};
}

OracleValue adaptive_opt_cost(const Instance& inst, bool include_return_leg) {
    if (inst.mode() != Mode::cost) throw InvalidInputError("adaptive_opt_cost needs a cost-mode instance");
    const std::size_t n = inst.size();
    const std::size_t k = inst.k();
    guard(n <= 5, "cost oracle limited to n <= 5, got n = " + std::to_string(n));
    for (Vertex v = 0; v < n; ++v) guard(inst.dist(v).size() <= 2, "cost oracle limited to support size <= 2");

    const Metric& metric = inst.metric();
    const Vertex root = inst.root();
    // Key: current vertex, visited mask, the k cheapest observed costs (sorted).
    using Key = std::tuple<Vertex, std::size_t, std::vector<double>>;
    std::map<Key, double> memo;

    auto value = [&](auto&& self, Vertex at, std::size_t mask, const std::vector<double>& cheapest) -> double {
        Key key{at, mask, cheapest};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        double best = kInf;
        if (cheapest.size() == k) {
            best = include_return_leg ? metric(at, root) : 0.0;
            for (double c : cheapest) best += c;
        }
        for (Vertex u = 0; u < n; ++u) {
            if (u == root || (mask >> u & 1U)) continue;
            const auto& d = inst.dist(u);
            double expect = metric(at, u);
            for (std::size_t t = 0; t < d.size(); ++t) {
                std::vector<double> next = cheapest;
                next.insert(std::upper_bound(next.begin(), next.end(), d.support()[t]), d.support()[t]);
                if (next.size() > k) next.pop_back();
                expect += d.probs()[t] * self(self, u, mask | (std::size_t{1} << u), next);
            }
            best = std::min(best, expect);
        }
        memo.emplace(std::move(key), best);
        return best;
    };
    if (k == 0) return {0.0, 1};
    const double v = value(value, root, std::size_t{1} << root, {});
    return {v, memo.size()};
}

OracleValue adaptive_opt(const Instance& inst, bool include_return_leg) {
    return inst.mode() == Mode::reward ? adaptive_opt_reward(inst, include_return_leg)
                                       : adaptive_opt_cost(inst, include_return_leg);
}

}  // namespace stktsp
