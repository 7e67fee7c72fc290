#pragma once

// Small instance builders and brute-force oracles shared by the unit and acceptance tests.
// The oracles enumerate directly and do not call into the library's solvers.

#include "stktsp/distribution.hpp"
#include "stktsp/instance.hpp"
#include "stktsp/metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace fx {

using namespace stktsp;

inline Metric star(const std::vector<double>& spokes) {
    const std::size_t n = spokes.size() + 1;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t u = 1; u < n; ++u) {
        d[0][u] = d[u][0] = spokes[u - 1];
        for (std::size_t v = u + 1; v < n; ++v) d[u][v] = d[v][u] = spokes[u - 1] + spokes[v - 1];
    }
    return Metric(d, 0);
}

inline Metric equilateral(std::size_t n, double side = 1.0) {
    std::vector<std::vector<double>> d(n, std::vector<double>(n, side));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    return Metric(d, 0);
}

/// Random metric from shortest paths over random edge weights in [1, 10].
inline Metric random_metric(std::size_t n, Rng& rng) {
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) d[u][v] = d[v][u] = std::round(rng.uniform(1.0, 10.0) * 100) / 100;
    }
    for (std::size_t w = 0; w < n; ++w) {
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = 0; v < n; ++v) d[u][v] = std::min(d[u][v], d[u][w] + d[w][v]);
        }
    }
    return Metric(d, 0);
}

/// Triangle of side 1: v1 pays k with probability 1/2, v2 pays k surely.
inline Instance triangle_instance(std::uint64_t k = 4) {
    const double kk = static_cast<double>(k);
    return Instance(equilateral(3), Mode::reward, k,
                    {DiscreteDist(), DiscreteDist({0.0, kk}, {0.5, 0.5}), DiscreteDist::point(kk)});
}

/// One vertex at distance 1 with deterministic reward k.
inline Instance forced_line(std::uint64_t k = 3) {
    return Instance(Metric({{0, 1}, {1, 0}}, 0), Mode::reward, k, {DiscreteDist(), DiscreteDist::point(double(k))});
}

/// Closed length of root -> order -> root computed directly.
inline double closed_length(const Metric& m, const std::vector<Vertex>& order) {
    double len = 0.0;
    Vertex at = m.root();
    for (Vertex v : order) {
        len += m(at, v);
        at = v;
    }
    return len + m(at, m.root());
}

struct BruteOrient {
    double profit = 0.0;
    double length = 0.0;
};

/// Best profit over every subset and every permutation, shortest length on ties.
inline BruteOrient brute_orient(const Metric& m, const std::vector<double>& profit, double budget) {
    std::vector<Vertex> sites;
    for (Vertex v = 0; v < m.size(); ++v) {
        if (v != m.root()) sites.push_back(v);
    }
    BruteOrient best;
    const std::size_t s = sites.size();
    for (std::uint32_t mask = 0; mask < (1u << s); ++mask) {
        std::vector<Vertex> sub;
        double p = 0.0;
        for (std::size_t b = 0; b < s; ++b) {
            if (mask >> b & 1u) {
                sub.push_back(sites[b]);
                p += profit[sites[b]];
            }
        }
        double shortest = std::numeric_limits<double>::infinity();
        do {
            shortest = std::min(shortest, closed_length(m, sub));
        } while (std::next_permutation(sub.begin(), sub.end()));
        if (shortest > budget * (1 + 1e-9) + 1e-12) continue;
        if (p > best.profit + 1e-12 || (std::abs(p - best.profit) <= 1e-12 && shortest < best.length)) {
            best = {p, shortest};
        }
    }
    return best;
}

/// Calls f(values, prob) for every joint outcome of independent distributions.
inline void for_each_outcome(const std::vector<DiscreteDist>& ds,
                             const std::function<void(const std::vector<double>&, double)>& f) {
    std::vector<std::size_t> idx(ds.size(), 0);
    std::vector<double> vals(ds.size());
    while (true) {
        double p = 1.0;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            vals[i] = ds[i].support()[idx[i]];
            p *= ds[i].probs()[idx[i]];
        }
        f(vals, p);
        std::size_t i = 0;
        while (i < ds.size() && ++idx[i] == ds[i].size()) idx[i++] = 0;
        if (i == ds.size()) break;
    }
}

/// Largest subset of `costs` whose sum fits in `budget`, by subset enumeration.
inline std::size_t max_cardinality(const std::vector<double>& costs, double budget) {
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << costs.size()); ++mask) {
        double sum = 0.0;
        for (std::size_t b = 0; b < costs.size(); ++b) {
            if (mask >> b & 1u) sum += costs[b];
        }
        if (sum <= budget + 1e-12) best = std::max<std::size_t>(best, std::popcount(mask));
    }
    return best;
}

/// P[some T-subset of the realized costs sums to <= B], by subset enumeration per outcome.
inline double subset_prob(const std::vector<DiscreteDist>& costs, std::size_t T, double B) {
    double total = 0.0;
    for_each_outcome(costs, [&](const std::vector<double>& c, double p) {
        bool ok = T == 0;
        for (std::uint32_t mask = 0; mask < (1u << c.size()) && !ok; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != T) continue;
            double sum = 0.0;
            for (std::size_t b = 0; b < c.size(); ++b) {
                if (mask >> b & 1u) sum += c[b];
            }
            ok = sum <= B + 1e-12;
        }
        if (ok) total += p;
    });
    return total;
}

inline DiscreteDist random_dist(Rng& rng, std::size_t max_support, double lo, double hi, bool integer) {
    const std::size_t s = 1 + rng.below(max_support);
    std::vector<double> sup, pr;
    double total = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        double x = rng.uniform(lo, hi);
        sup.push_back(integer ? std::floor(x) : std::round(x * 100) / 100);
        pr.push_back(1.0 + static_cast<double>(rng.below(4)));
        total += pr.back();
    }
    for (double& p : pr) p /= total;
    return DiscreteDist(sup, pr);
}

}  // namespace fx
