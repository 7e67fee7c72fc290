#include "stktsp/selection_dp.hpp"

#include "stktsp/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stktsp {

namespace {

struct Atom {
    std::size_t value;
    double prob;
};

// Discretized cost of one variable: sparse atoms plus dense pmf and upper tail.
struct Discrete {
    std::vector<Atom> atoms;
    std::vector<double> pmf;  // index 0..n+1
    std::vector<double> gt;   // gt[m] = P[C > m], m in 0..n+1
};

std::vector<Discrete> prepare(std::span<const DiscreteDist> costs, double budget) {
    const std::size_t n = costs.size();
    std::vector<Discrete> out;
    out.reserve(n);
    for (const auto& d : discretize(costs, budget)) {
        Discrete x;
        x.pmf.assign(n + 2, 0.0);
        for (std::size_t t = 0; t < d.size(); ++t) {
            const auto u = static_cast<std::size_t>(d.support()[t]);
            x.atoms.push_back({u, d.probs()[t]});
            x.pmf[u] += d.probs()[t];
        }
        x.gt.assign(n + 2, 0.0);
        double tail = 0.0;
        for (std::size_t m = n + 2; m-- > 0;) {
            x.gt[m] = tail;
            tail += x.pmf[m];
        }
        out.push_back(std::move(x));
    }
    return out;
}

double guard_entry(double x) {
    if (x < -1e-12) throw std::logic_error("selection DP produced a negative probability " + std::to_string(x));
    return x < 0.0 ? 0.0 : std::min(x, 1.0);
}

// Rolling layers of the order-statistics recursion. `emit` sees each finished layer.
template <typename Emit>
void run_dp(const std::vector<Discrete>& vars, std::size_t target, Emit&& emit) {
    const std::size_t n = vars.size();
    const std::size_t w = n + 1;
    auto idx = [&](std::size_t j, std::size_t l, std::size_t m) { return (j * w + l) * w + m; };
    std::vector<double> prev((target + 1) * w * w, 0.0), cur(prev.size(), 0.0);
    std::vector<double> prod_ge(w, 1.0), prod_gt(w, 1.0);

    for (std::size_t i = 1; i <= n; ++i) {
        const Discrete& c = vars[i - 1];
        std::fill(cur.begin(), cur.end(), 0.0);
        // j = 1: the minimum of the first i values equals l.
        for (std::size_t l = 0; l <= n; ++l) {
            prod_ge[l] *= c.gt[l] + c.pmf[l];
            prod_gt[l] *= c.gt[l];
            cur[idx(1, l, l)] = guard_entry(prod_ge[l] - prod_gt[l]);
        }
        for (std::size_t j = 2; j <= std::min(target, i); ++j) {
            for (std::size_t l = 0; l <= n; ++l) {
                for (std::size_t m = 0; m <= l; ++m) {
                    if (m * j < l) continue;
                    double p = c.gt[m] * prev[idx(j, l, m)];
                    for (const Atom& a : c.atoms) {
                        if (a.value >= m || a.value > l) continue;
                        p += a.prob * prev[idx(j - 1, l - a.value, m)];
                    }
                    if (c.pmf[m] > 0.0) {
                        double with = 0.0;
                        for (std::size_t u = 0; u <= m; ++u) with += prev[idx(j - 1, l - m, m - u)];
                        double without = 0.0;
                        for (std::size_t u = 1; u <= m; ++u) without += prev[idx(j, l - u, m - u)];
                        p += c.pmf[m] * (with - without);
                    }
                    cur[idx(j, l, m)] = guard_entry(p);
                }
            }
        }
        emit(i, cur);
        std::swap(prev, cur);
    }
}

double layer_output(const std::vector<double>& layer, std::size_t n, std::size_t j) {
    const std::size_t w = n + 1;
    double total = 0.0;
    for (std::size_t l = 0; l <= n; ++l) {
        for (std::size_t m = 0; m <= l; ++m) total += layer[(j * w + l) * w + m];
    }
    return std::min(total, 1.0);
}

void check_budget(double budget) {
    if (!(budget > 0.0) || !std::isfinite(budget)) throw InvalidInputError("selection DP needs a positive finite budget");
}

}  // namespace

std::vector<DiscreteDist> discretize(std::span<const DiscreteDist> costs, double budget) {
    check_budget(budget);
    const double n = static_cast<double>(costs.size());
    std::vector<DiscreteDist> out;
    out.reserve(costs.size());
    for (const auto& d : costs) {
        out.push_back(d.transformed([n, budget](double c) { return std::min(std::floor(c * n / budget), n + 1.0); }));
    }
    return out;
}

DpTable::DpTable(std::size_t n, std::size_t target) : n_(n), target_(target), p_(n * target * (n + 1) * (n + 1), 0.0) {}

std::size_t DpTable::index(std::size_t i, std::size_t j, std::size_t l, std::size_t m) const noexcept {
    return (((i - 1) * target_ + (j - 1)) * (n_ + 1) + l) * (n_ + 1) + m;
}

double DpTable::at(std::size_t i, std::size_t j, std::size_t l, std::size_t m) const noexcept { return p_[index(i, j, l, m)]; }

double& DpTable::at(std::size_t i, std::size_t j, std::size_t l, std::size_t m) noexcept { return p_[index(i, j, l, m)]; }

double DpTable::output() const noexcept {
    double total = 0.0;
    for (std::size_t l = 0; l <= n_; ++l) {
        for (std::size_t m = 0; m <= l; ++m) total += at(n_, target_, l, m);
    }
    return std::min(total, 1.0);
}

DpTable build_dp_table(std::span<const DiscreteDist> costs, double budget, std::size_t target) {
    check_budget(budget);
    const std::size_t n = costs.size();
    if (n == 0 || target == 0 || target > n) {
        throw InvalidInputError("DP table needs 1 <= target <= n with n >= 1");
    }
    if (n > 40) throw GuardError("full DP table limited to n <= 40, got n = " + std::to_string(n));
    DpTable table(n, target);
    const std::size_t w = n + 1;
    run_dp(prepare(costs, budget), target, [&](std::size_t i, const std::vector<double>& layer) {
        for (std::size_t j = 1; j <= target; ++j) {
            for (std::size_t l = 0; l <= n; ++l) {
                for (std::size_t m = 0; m <= n; ++m) table.at(i, j, l, m) = layer[(j * w + l) * w + m];
            }
        }
    });
    return table;
}

double alg_dp(std::span<const DiscreteDist> costs, std::size_t target, double budget) {
    check_budget(budget);
    if (target == 0) return 1.0;
    const std::size_t n = costs.size();
    if (target > n) return 0.0;
    double out = 0.0;
    run_dp(prepare(costs, budget), target, [&](std::size_t i, const std::vector<double>& layer) {
        if (i == n) out = layer_output(layer, n, target);
    });
    return out;
}

std::vector<double> alg_dp_profile(std::span<const DiscreteDist> costs, double budget) {
    check_budget(budget);
    const std::size_t n = costs.size();
    std::vector<double> out(n + 1, 0.0);
    out[0] = 1.0;
    if (n == 0) return out;
    run_dp(prepare(costs, budget), n, [&](std::size_t i, const std::vector<double>& layer) {
        if (i != n) return;
        for (std::size_t t = 1; t <= n; ++t) out[t] = layer_output(layer, n, t);
    });
    return out;
}

double brute_force_prob(std::span<const DiscreteDist> costs, std::size_t target, double budget,
                        std::size_t max_combinations) {
    if (target == 0) return 1.0;
    const std::size_t n = costs.size();
    if (target > n) return 0.0;
    double combos = 1.0;
    for (const auto& d : costs) combos *= static_cast<double>(d.size());
    if (combos > static_cast<double>(max_combinations)) {
        throw GuardError("brute-force enumeration limited to " + std::to_string(max_combinations) +
                         " outcome combinations");
    }
    std::vector<std::size_t> pick(n, 0);
    std::vector<double> values(n);
    const double limit = budget + 1e-12 * std::max(1.0, std::abs(budget));
    double total = 0.0;
    for (;;) {
        double prob = 1.0;
        for (std::size_t v = 0; v < n; ++v) {
            values[v] = costs[v].support()[pick[v]];
            prob *= costs[v].probs()[pick[v]];
        }
        std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(target), values.end());
        double sum = 0.0;
        for (std::size_t t = 0; t < target; ++t) sum += values[t];
        if (sum <= limit) total += prob;

        std::size_t v = 0;
        while (v < n && ++pick[v] == costs[v].size()) pick[v++] = 0;
        if (v == n) break;
    }
    return std::min(total, 1.0);
}

}  // namespace stktsp
