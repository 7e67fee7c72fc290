#pragma once

#include "stktsp/instance.hpp"
#include "stktsp/metric.hpp"

#include <vector>

namespace stktsp::detail {

/// `first` then the vertices of `second` not already present.
inline Tour ordered_union(const Tour& first, const Tour& second, std::size_t n) {
    std::vector<bool> seen(n, false);
    Tour out;
    for (const Tour* part : {&first, &second}) {
        for (Vertex v : *part) {
            if (seen[v]) continue;
            seen[v] = true;
            out.push_back(v);
        }
    }
    return out;
}

inline void append_phase(Plan& plan, const Metric& metric, std::uint32_t phase, Tour tour, std::vector<bool>& planned) {
    for (Vertex v : tour) planned[v] = true;
    const double len = tour_length(metric, tour, true);
    plan.phases.push_back({phase, std::move(tour), len});
}

}  // namespace stktsp::detail
