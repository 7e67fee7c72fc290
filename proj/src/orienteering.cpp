#include "stktsp/orienteering.hpp"

#include "stktsp/error.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

namespace stktsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_profit(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(a, b)); }

// Held-Karp table over a candidate set: min open-path length per (subset, last
// vertex) and the resulting closed length per subset. States whose closed
// length would exceed `prune` are not expanded.
class SubsetTours {
public:
    SubsetTours(const Metric& metric, std::vector<Vertex> candidates, std::span<const double> profit, double prune)
        : metric_(metric), cand_(std::move(candidates)), m_(cand_.size()) {
        const std::size_t masks = std::size_t{1} << m_;
        open_.assign(masks * m_, kInf);
        parent_.assign(masks * m_, kNone);
        closed_.assign(masks, kInf);
        profit_.assign(masks, 0.0);
        closed_[0] = 0.0;
        const Vertex root = metric.root();
        for (std::size_t a = 0; a < m_; ++a) {
            const double len = metric(root, cand_[a]);
            if (within_budget(len + metric(cand_[a], root), prune)) open_[(std::size_t{1} << a) * m_ + a] = len;
        }
        for (std::size_t mask = 1; mask < masks; ++mask) {
            const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
            profit_[mask] = profit_[mask & (mask - 1)] + profit[cand_[low]];
            double best = kInf;
            for (std::size_t last = 0; last < m_; ++last) {
                const double here = open_[mask * m_ + last];
                if (here == kInf) continue;
                best = std::min(best, here + metric(cand_[last], root));
                for (std::size_t nxt = 0; nxt < m_; ++nxt) {
                    if (mask >> nxt & 1U) continue;
                    const double len = here + metric(cand_[last], cand_[nxt]);
                    if (!within_budget(len + metric(cand_[nxt], root), prune)) continue;
                    const std::size_t to = (mask | (std::size_t{1} << nxt)) * m_ + nxt;
                    if (len < open_[to]) {
                        open_[to] = len;
                        parent_[to] = static_cast<std::uint8_t>(last);
                    }
                }
            }
            closed_[mask] = best;
        }
    }

    std::size_t masks() const noexcept { return closed_.size(); }
    double closed(std::size_t mask) const noexcept { return closed_[mask]; }
    double profit(std::size_t mask) const noexcept { return profit_[mask]; }

    OrientSolution solution(std::size_t mask) const {
        OrientSolution sol;
        sol.profit = profit_[mask];
        sol.length = closed_[mask];
        if (mask == 0) return sol;
        const Vertex root = metric_.root();
        std::size_t last = m_;
        double best = kInf;
        for (std::size_t a = 0; a < m_; ++a) {
            const double here = open_[mask * m_ + a];
            if (here == kInf) continue;
            const double len = here + metric_(cand_[a], root);
            if (len < best) {
                best = len;
                last = a;
            }
        }
        std::size_t cur = mask;
        while (cur != 0) {
            sol.tour.push_back(cand_[last]);
            const std::uint8_t prev = parent_[cur * m_ + last];
            cur &= ~(std::size_t{1} << last);
            last = prev;
        }
        std::reverse(sol.tour.begin(), sol.tour.end());
        return sol;
    }

private:
    static constexpr std::uint8_t kNone = 0xff;
    const Metric& metric_;
    std::vector<Vertex> cand_;
    std::size_t m_;
    std::vector<double> open_;
    std::vector<std::uint8_t> parent_;
    std::vector<double> closed_;
    std::vector<double> profit_;
};

std::vector<Vertex> positive_vertices(const Metric& metric, std::span<const double> profit, double reach) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < metric.size(); ++v) {
        if (v == metric.root() || !(profit[v] > 0.0)) continue;
        if (!within_budget(2.0 * metric(metric.root(), v), reach)) continue;
        out.push_back(v);
    }
    return out;
}

void check_profits(const Metric& metric, std::span<const double> profit) {
    if (profit.size() != metric.size()) {
        throw InvalidInputError("profit vector has " + std::to_string(profit.size()) + " entries, expected " +
                                std::to_string(metric.size()));
    }
    for (double p : profit) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidInputError("profits must be finite and nonnegative");
    }
}

void guard_exact(std::size_t count, std::size_t limit) {
    if (count > limit) {
        throw GuardError("exact orienteering limited to " + std::to_string(limit) + " candidate vertices, got " +
                         std::to_string(count) + "; use the heuristic backend");
    }
}

bool use_exact(const OrientConfig& config, std::size_t count) {
    switch (config.backend) {
        case OrientBackend::exact: return true;
        case OrientBackend::heuristic: return false;
        case OrientBackend::automatic: return count <= config.exact_limit;
    }
    return false;
}

// Closed tour root -> tour -> root as a position sequence; position 0 is the root.
double closed_length(const Metric& metric, const Tour& tour) {
    double len = 0.0;
    Vertex at = metric.root();
    for (Vertex v : tour) {
        len += metric(at, v);
        at = v;
    }
    return len + metric(at, metric.root());
}

void two_opt(const Metric& metric, Tour& tour) {
    const std::size_t t = tour.size();
    if (t < 3) return;
    auto at = [&](std::size_t pos) { return pos == 0 || pos == t + 1 ? metric.root() : tour[pos - 1]; };
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 1; i < t; ++i) {
            for (std::size_t j = i + 1; j <= t; ++j) {
                const Vertex a = at(i - 1), b = at(i), c = at(j), e = at(j + 1);
                const double delta = metric(a, c) + metric(b, e) - metric(a, b) - metric(c, e);
                if (delta < -1e-12) {
                    std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(i - 1),
                                 tour.begin() + static_cast<std::ptrdiff_t>(j));
                    improved = true;
                }
            }
        }
    }
}

struct Insertion {
    Vertex v = 0;
    std::size_t pos = 0;
    double delta = kInf;
    double ratio = -1.0;
};

// Best profit / added-length insertion among vertices not yet on the tour.
// `limit` bounds the resulting closed length (kInf for none).
Insertion best_insertion(const Metric& metric, std::span<const double> profit, const Tour& tour,
                         const std::vector<bool>& on_tour, double length, double limit) {
    Insertion best;
    const Vertex root = metric.root();
    for (Vertex v = 0; v < metric.size(); ++v) {
        if (v == root || on_tour[v] || !(profit[v] > 0.0)) continue;
        for (std::size_t pos = 0; pos <= tour.size(); ++pos) {
            const Vertex a = pos == 0 ? root : tour[pos - 1];
            const Vertex b = pos == tour.size() ? root : tour[pos];
            const double delta = std::max(0.0, metric(a, v) + metric(v, b) - metric(a, b));
            if (limit != kInf && !within_budget(length + delta, limit)) continue;
            const double ratio = delta > 1e-12 ? profit[v] / delta : kInf;
            if (ratio > best.ratio || (ratio == best.ratio && delta < best.delta)) {
                best = {v, pos, delta, ratio};
            }
        }
    }
    return best;
}

OrientSolution finish(const Metric& metric, std::span<const double> profit, Tour tour) {
    OrientSolution sol;
    sol.length = closed_length(metric, tour);
    for (Vertex v : tour) sol.profit += profit[v];
    sol.tour = std::move(tour);
    return sol;
}

std::optional<OrientSolution> ktsp_exact(const Metric& metric, std::span<const double> profit, double target,
                                         std::size_t limit) {
    auto cand = positive_vertices(metric, profit, kInf);
    guard_exact(cand.size(), limit);
    SubsetTours table(metric, std::move(cand), profit, kInf);
    std::size_t best = table.masks();
    for (std::size_t mask = 0; mask < table.masks(); ++mask) {
        if (table.profit(mask) < target && !same_profit(table.profit(mask), target)) continue;
        if (best == table.masks() || table.closed(mask) < table.closed(best)) best = mask;
    }
    if (best == table.masks()) return std::nullopt;
    return table.solution(best);
}

std::optional<OrientSolution> ktsp_heuristic(const Metric& metric, std::span<const double> profit, double target) {
    const double total = std::accumulate(profit.begin(), profit.end(), 0.0);
    if (total < target && !same_profit(total, target)) return std::nullopt;
    Tour tour;
    std::vector<bool> on_tour(metric.size(), false);
    double collected = 0.0;
    double length = 0.0;
    while (collected < target && !same_profit(collected, target)) {
        const Insertion ins = best_insertion(metric, profit, tour, on_tour, length, kInf);
        if (ins.ratio < 0.0) break;
        tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(ins.pos), ins.v);
        on_tour[ins.v] = true;
        collected += profit[ins.v];
        length += ins.delta;
    }
    two_opt(metric, tour);
    // Drop vertices that are not needed for the target, largest saving first.
    for (bool dropped = true; dropped && !tour.empty();) {
        dropped = false;
        double best_saving = 1e-12;
        std::size_t best_pos = tour.size();
        for (std::size_t pos = 0; pos < tour.size(); ++pos) {
            const double rest = collected - profit[tour[pos]];
            if (rest < target && !same_profit(rest, target)) continue;
            const Vertex a = pos == 0 ? metric.root() : tour[pos - 1];
            const Vertex b = pos + 1 == tour.size() ? metric.root() : tour[pos + 1];
            const double saving = metric(a, tour[pos]) + metric(tour[pos], b) - metric(a, b);
            if (saving > best_saving) {
                best_saving = saving;
                best_pos = pos;
            }
        }
        if (best_pos < tour.size()) {
            collected -= profit[tour[best_pos]];
            tour.erase(tour.begin() + static_cast<std::ptrdiff_t>(best_pos));
            dropped = true;
        }
    }
    two_opt(metric, tour);
    return finish(metric, profit, std::move(tour));
}

}  // namespace

bool within_budget(double length, double budget) { return length <= budget + 1e-9 * std::max(1.0, budget); }

void OrientInstance::exclude(std::span<const Vertex> vertices) {
    for (Vertex v : vertices) profit.at(v) = 0.0;
}

OrientSolution solve_exact(const OrientInstance& inst, std::size_t exact_limit) {
    check_profits(inst.metric, inst.profit);
    auto cand = positive_vertices(inst.metric, inst.profit, inst.budget);
    guard_exact(cand.size(), exact_limit);
    SubsetTours table(inst.metric, std::move(cand), inst.profit, inst.budget);
    std::size_t best = 0;
    for (std::size_t mask = 1; mask < table.masks(); ++mask) {
        if (!within_budget(table.closed(mask), inst.budget)) continue;
        const double p = table.profit(mask), q = table.profit(best);
        if (same_profit(p, q) ? table.closed(mask) < table.closed(best) : p > q) best = mask;
    }
    return table.solution(best);
}

OrientSolution solve_heuristic(const OrientInstance& inst) {
    check_profits(inst.metric, inst.profit);
    Tour tour;
    std::vector<bool> on_tour(inst.metric.size(), false);
    double length = 0.0;
    for (;;) {
        const Insertion ins = best_insertion(inst.metric, inst.profit, tour, on_tour, length, inst.budget);
        if (ins.ratio < 0.0) break;
        tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(ins.pos), ins.v);
        on_tour[ins.v] = true;
        two_opt(inst.metric, tour);
        length = closed_length(inst.metric, tour);
    }
    return finish(inst.metric, inst.profit, std::move(tour));
}

OrientSolution solve_orient(const OrientInstance& inst, const OrientConfig& config) {
    const auto count = positive_vertices(inst.metric, inst.profit, inst.budget).size();
    return use_exact(config, count) ? solve_exact(inst, config.exact_limit) : solve_heuristic(inst);
}

std::optional<OrientSolution> solve_ktsp(const Metric& metric, std::span<const double> profit, double target,
                                         const OrientConfig& config) {
    check_profits(metric, profit);
    if (target <= 0.0) return OrientSolution{};
    const auto count = positive_vertices(metric, profit, kInf).size();
    return use_exact(config, count) ? ktsp_exact(metric, profit, target, config.exact_limit)
                                    : ktsp_heuristic(metric, profit, target);
}

OrientSolution bicrit_orient(const OrientInstance& inst, double epsilon, double rho, const OrientConfig& config) {
    if (!(epsilon > 0.0)) throw InvalidInputError("bicrit_orient needs epsilon > 0");
    if (!(rho >= 1.0)) throw InvalidInputError("bicrit_orient needs rho >= 1");
    check_profits(inst.metric, inst.profit);
    const double limit = rho * inst.budget;
    auto cand = positive_vertices(inst.metric, inst.profit, limit);
    if (cand.empty()) return OrientSolution{};

    if (use_exact(config, cand.size())) {
        // Search over the finite set of achievable profit sums: feasibility of a
        // target is "shortest tour collecting at least that much fits in rho * B".
        guard_exact(cand.size(), config.exact_limit);
        SubsetTours table(inst.metric, std::move(cand), inst.profit, limit);
        std::vector<std::size_t> by_profit(table.masks());
        std::iota(by_profit.begin(), by_profit.end(), std::size_t{0});
        std::stable_sort(by_profit.begin(), by_profit.end(),
                         [&](std::size_t a, std::size_t b) { return table.profit(a) < table.profit(b); });
        std::vector<std::size_t> suffix_best(by_profit.size());
        for (std::size_t idx = by_profit.size(); idx-- > 0;) {
            const std::size_t here = by_profit[idx];
            suffix_best[idx] = here;
            if (idx + 1 < by_profit.size()) {
                const std::size_t next = suffix_best[idx + 1];
                if (table.closed(next) < table.closed(here) ||
                    (table.closed(next) == table.closed(here) && table.profit(next) > table.profit(here))) {
                    suffix_best[idx] = next;
                }
            }
        }
        auto feasible = [&](std::size_t idx) { return within_budget(table.closed(suffix_best[idx]), limit); };
        std::size_t lo = 0, hi = by_profit.size();  // feasible(lo) holds (empty tour); answer in [lo, hi)
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (feasible(mid)) lo = mid;
            else hi = mid;
        }
        return table.solution(suffix_best[lo]);
    }

    double r_min = kInf, r_max = 0.0;
    for (Vertex v : cand) {
        r_min = std::min(r_min, inst.profit[v]);
        r_max = std::max(r_max, inst.profit[v]);
    }
    auto probe = [&](double target) -> std::optional<OrientSolution> {
        auto sol = ktsp_heuristic(inst.metric, inst.profit, target);
        if (sol && within_budget(sol->length, limit)) return sol;
        return std::nullopt;
    };
    double lo = r_min, hi = static_cast<double>(cand.size()) * r_max;
    if (auto top = probe(hi)) return *top;
    auto best = probe(lo);
    if (!best) return OrientSolution{};
    while (hi - lo > epsilon) {
        const double mid = 0.5 * (lo + hi);
        if (auto sol = probe(mid)) {
            lo = mid;
            if (sol->profit > best->profit) best = std::move(sol);
        } else {
            hi = mid;
        }
    }
    return *best;
}

}  // namespace stktsp
