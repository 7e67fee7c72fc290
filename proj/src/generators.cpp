#include "stktsp/generators.hpp"

#include "stktsp/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace stktsp {

namespace {

double round_to(double x, double step) { return std::round(x / step) * step; }

std::vector<std::vector<double>> star_rows(const std::vector<double>& spokes) {
    const std::size_t n = spokes.size() + 1;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t u = 1; u < n; ++u) {
        d[0][u] = d[u][0] = spokes[u - 1];
        for (std::size_t v = u + 1; v < n; ++v) d[u][v] = d[v][u] = spokes[u - 1] + spokes[v - 1];
    }
    return d;
}

std::vector<double> sample_spokes(const GenSpec& spec, Rng& rng, double lo, double hi) {
    if (!spec.spokes.empty()) {
        if (spec.spokes.size() != spec.n - 1) throw UsageError("explicit spokes must list n - 1 values");
        return spec.spokes;
    }
    std::vector<double> out(spec.n - 1);
    for (double& s : out) s = round_to(rng.uniform(lo, hi), 1e-3);
    return out;
}

std::vector<double> probs_from_grid(std::size_t count, std::uint32_t grid, Rng& rng) {
    std::vector<double> w(count);
    double total = 0.0;
    for (double& x : w) {
        x = 1.0 + static_cast<double>(rng.below(grid));
        total += x;
    }
    for (double& x : w) x /= total;
    return w;
}

DiscreteDist reward_dist(const GenSpec& spec, Rng& rng) {
    const std::size_t size = 1 + rng.below(std::min<std::uint64_t>(spec.max_support, spec.k + 1));
    std::set<double> values;
    while (values.size() < size) values.insert(static_cast<double>(rng.below(spec.k + 1)));
    return DiscreteDist({values.begin(), values.end()}, probs_from_grid(size, spec.prob_grid, rng));
}

DiscreteDist cost_dist(const GenSpec& spec, Rng& rng) {
    const std::size_t size = 1 + rng.below(spec.max_support);
    std::set<double> values;
    for (std::size_t tries = 0; values.size() < size && tries < 64 * size; ++tries) {
        values.insert(round_to(rng.uniform(0.0, spec.max_cost), 1e-2));
    }
    return DiscreteDist({values.begin(), values.end()}, probs_from_grid(values.size(), spec.prob_grid, rng));
}

void check_spec(const GenSpec& spec) {
    if (spec.n < 2) throw UsageError("generator needs n >= 2 (root plus at least one vertex)");
    if (spec.max_support == 0 || spec.prob_grid == 0) throw UsageError("max_support and prob_grid must be positive");
    if (!(spec.min_spoke >= 1.0) || spec.max_spoke < spec.min_spoke) {
        throw UsageError("spoke range must satisfy 1 <= min_spoke <= max_spoke");
    }
    if (!(spec.max_cost >= 0.0)) throw UsageError("max_cost must be nonnegative");
    if (spec.family == Family::heavy_tail_reward && spec.n < 4) {
        throw UsageError("heavy_tail_reward needs n >= 4 (root, cluster, jackpot, deterministic vertex)");
    }
    const Mode mode = spec.family == Family::heavy_tail_reward ? Mode::reward
                      : spec.family == Family::pandora_cost    ? Mode::cost
                                                               : spec.mode;
    if (mode == Mode::cost && spec.k > spec.n - 1) throw UsageError("cost instances need k <= n - 1");
    if (spec.family == Family::heavy_tail_reward && spec.k < 1) throw UsageError("heavy_tail_reward needs k >= 1");
}

Instance heavy_tail(const GenSpec& spec) {
    const std::size_t n = spec.n;
    const std::size_t cluster = n - 3;
    const auto root_k = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(spec.k))));
    const std::uint64_t easy = spec.k - std::min(root_k, spec.k);

    std::vector<double> spokes(n - 1, spec.min_spoke);
    spokes[n - 3] = spokes[n - 2] = spec.far_spoke;
    std::vector<DiscreteDist> dists(n);
    for (std::size_t c = 0; c < cluster; ++c) {
        const std::uint64_t share = easy / cluster + (c < easy % cluster ? 1 : 0);
        dists[1 + c] = DiscreteDist::point(static_cast<double>(share));
    }
    const double p = std::min(1.0, spec.jackpot_c / std::sqrt(static_cast<double>(spec.k)));
    dists[n - 2] = p >= 1.0 ? DiscreteDist::point(static_cast<double>(spec.k))
                            : DiscreteDist({0.0, static_cast<double>(spec.k)}, {1.0 - p, p});
    dists[n - 1] = DiscreteDist::point(static_cast<double>(std::min(root_k, spec.k)));
    return Instance(Metric(star_rows(spokes), 0), Mode::reward, spec.k, std::move(dists));
}

}  // namespace

std::string to_string(Family family) {
    switch (family) {
        case Family::star: return "star";
        case Family::line: return "line";
        case Family::euclid: return "euclid";
        case Family::heavy_tail_reward: return "heavy_tail_reward";
        case Family::pandora_cost: return "pandora_cost";
    }
    return "star";
}

Family family_from_string(const std::string& s) {
    for (Family f : {Family::star, Family::line, Family::euclid, Family::heavy_tail_reward, Family::pandora_cost}) {
        if (to_string(f) == s) return f;
    }
    throw UsageError("unknown family '" + s + "'");
}

Instance generate(const GenSpec& spec) {
    check_spec(spec);
    if (spec.family == Family::heavy_tail_reward) return heavy_tail(spec);

    Rng rng(spec.seed ^ (static_cast<std::uint64_t>(spec.family) << 56));
    const std::size_t n = spec.n;
    std::vector<std::vector<double>> rows;
    switch (spec.family) {
        case Family::star: rows = star_rows(sample_spokes(spec, rng, spec.min_spoke, spec.max_spoke)); break;
        case Family::pandora_cost:
            // Probing cost pi_v becomes a spoke of pi_v / 2.
            rows = star_rows(sample_spokes(spec, rng, spec.min_spoke, spec.max_spoke));
            break;
        case Family::line: {
            std::vector<double> x(n, 0.0);
            for (std::size_t v = 1; v < n; ++v) x[v] = x[v - 1] + round_to(rng.uniform(spec.min_spoke, spec.max_spoke), 1e-3);
            rows.assign(n, std::vector<double>(n, 0.0));
            for (std::size_t u = 0; u < n; ++u) {
                for (std::size_t v = 0; v < n; ++v) rows[u][v] = std::abs(x[u] - x[v]);
            }
            break;
        }
        case Family::euclid: {
            auto pts = spec.points;
            if (pts.empty()) {
                pts.resize(n);
                for (auto& [px, py] : pts) {
                    px = rng.uniform();
                    py = rng.uniform();
                }
            } else if (pts.size() != n) {
                throw UsageError("explicit points must list n coordinates");
            }
            rows.assign(n, std::vector<double>(n, 0.0));
            for (std::size_t u = 0; u < n; ++u) {
                for (std::size_t v = 0; v < n; ++v) {
                    rows[u][v] = std::hypot(pts[u].first - pts[v].first, pts[u].second - pts[v].second);
                }
            }
            auto [scaled, factor] = rescale_metric(Metric(std::move(rows), 0));
            (void)factor;
            rows = scaled.rows();
            break;
        }
        case Family::heavy_tail_reward: break;
    }

    const Mode mode = spec.family == Family::pandora_cost ? Mode::cost : spec.mode;
    std::vector<DiscreteDist> dists(n);
    for (std::size_t v = 1; v < n; ++v) dists[v] = mode == Mode::reward ? reward_dist(spec, rng) : cost_dist(spec, rng);
    if (spec.oracle_safe && mode == Mode::reward) dists[n - 1] = DiscreteDist::point(static_cast<double>(spec.k));
    return Instance(Metric(std::move(rows), 0), mode, spec.k, std::move(dists));
}

}  // namespace stktsp
