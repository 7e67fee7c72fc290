#include "stktsp/metric.hpp"

#include "stktsp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace stktsp {

Metric::Metric(std::vector<std::vector<double>> rows, Vertex root) : n_(rows.size()), root_(root) {
    if (n_ == 0) {
        throw InvalidInputError("metric must have at least one vertex");
    }
    if (root_ >= n_) {
        throw InvalidInputError("root " + std::to_string(root_) + " out of range for n = " + std::to_string(n_));
    }
    d_.reserve(n_ * n_);
    for (std::size_t u = 0; u < n_; ++u) {
        if (rows[u].size() != n_) {
            throw InvalidInputError("distance row " + std::to_string(u) + " has " + std::to_string(rows[u].size()) +
                                    " entries, expected " + std::to_string(n_));
        }
        for (double x : rows[u]) {
            if (!std::isfinite(x)) {
                throw InvalidInputError("distance row " + std::to_string(u) + " contains a non-finite entry");
            }
            d_.push_back(x);
        }
    }
}

double Metric::min_distance() const noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < n_; ++u) {
        for (std::size_t v = 0; v < n_; ++v) {
            if (u != v) best = std::min(best, (*this)(u, v));
        }
    }
    return n_ > 1 ? best : 0.0;
}

double Metric::max_distance() const noexcept {
    double best = 0.0;
    for (double x : d_) best = std::max(best, x);
    return best;
}

std::vector<std::vector<double>> Metric::rows() const {
    std::vector<std::vector<double>> out(n_);
    for (std::size_t u = 0; u < n_; ++u) {
        out[u].assign(d_.begin() + static_cast<std::ptrdiff_t>(u * n_),
                      d_.begin() + static_cast<std::ptrdiff_t>((u + 1) * n_));
    }
    return out;
}

Metric Metric::scaled(double factor) const {
    Metric out = *this;
    for (double& x : out.d_) x *= factor;
    return out;
}

std::string Violation::describe() const {
    std::ostringstream os;
    switch (kind) {
        case ViolationKind::nonzero_diagonal: os << "nonzero diagonal at (" << u << "," << u << ")"; break;
        case ViolationKind::negative: os << "negative distance at (" << u << "," << v << ")"; break;
        case ViolationKind::asymmetry: os << "asymmetry at (" << u << "," << v << ")"; break;
        case ViolationKind::triangle: os << "triangle violation (" << u << "," << v << "," << w << ")"; break;
    }
    return os.str();
}

ValidationResult validate_metric(const Metric& m) {
    ValidationResult res;
    const std::size_t n = m.size();
    for (Vertex u = 0; u < n; ++u) {
        if (m(u, u) != 0.0) res.violations.push_back({ViolationKind::nonzero_diagonal, u, u, u});
        for (Vertex v = 0; v < n; ++v) {
            if (m(u, v) < 0.0) res.violations.push_back({ViolationKind::negative, u, v, v});
        }
        for (Vertex v = u + 1; v < n; ++v) {
            if (m(u, v) != m(v, u)) res.violations.push_back({ViolationKind::asymmetry, u, v, v});
        }
    }
    // Each unordered violating pair {u, w} via v is reported once.
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex w = u + 1; w < n; ++w) {
            for (Vertex v = 0; v < n; ++v) {
                if (v == u || v == w) continue;
                const double via = m(u, v) + m(v, w);
                if (m(u, w) > via + 1e-9 * std::max(1.0, via)) {
                    res.violations.push_back({ViolationKind::triangle, u, v, w});
                }
            }
        }
    }
    return res;
}

std::pair<Metric, double> rescale_metric(const Metric& m) {
    if (m.size() < 2) return {m, 1.0};
    const double dmin = m.min_distance();
    if (!(dmin > 0.0)) {
        throw InvalidInputError("degenerate metric: some off-diagonal distance is zero");
    }
    if (dmin >= 1.0) return {m, 1.0};
    // Divide rather than multiply by 1/dmin so the closest pair lands exactly on 1.
    auto rows = m.rows();
    for (auto& row : rows) {
        for (double& x : row) x /= dmin;
    }
    return {Metric(std::move(rows), m.root()), 1.0 / dmin};
}

void check_tour(const Metric& m, std::span<const Vertex> tour) {
    std::vector<bool> seen(m.size(), false);
    for (Vertex v : tour) {
        if (v >= m.size()) throw InvalidInputError("tour vertex " + std::to_string(v) + " out of range");
        if (v == m.root()) throw InvalidInputError("tour must not contain the root");
        if (seen[v]) throw InvalidInputError("tour repeats vertex " + std::to_string(v));
        seen[v] = true;
    }
}

double tour_length(const Metric& m, std::span<const Vertex> tour, bool include_return) {
    check_tour(m, tour);
    double len = 0.0;
    Vertex at = m.root();
    for (Vertex v : tour) {
        len += m(at, v);
        at = v;
    }
    if (include_return) len += m(at, m.root());
    return len;
}

}  // namespace stktsp
