#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stktsp {

using Vertex = std::size_t;

/// Dense symmetric distance matrix with a distinguished root vertex.
class Metric {
public:
    Metric() = default;
    /// Throws InvalidInputError when the matrix is not square, empty, or the root is out of range.
    Metric(std::vector<std::vector<double>> rows, Vertex root);

    std::size_t size() const noexcept { return n_; }
    Vertex root() const noexcept { return root_; }
    double operator()(Vertex u, Vertex v) const noexcept { return d_[u * n_ + v]; }

    /// Smallest off-diagonal distance; 0 for a single-vertex metric.
    double min_distance() const noexcept;
    double max_distance() const noexcept;

    std::vector<std::vector<double>> rows() const;
    Metric scaled(double factor) const;

private:
    std::size_t n_ = 0;
    Vertex root_ = 0;
    std::vector<double> d_;
};

enum class ViolationKind { nonzero_diagonal, negative, asymmetry, triangle };

struct Violation {
    ViolationKind kind;
    Vertex u = 0;
    Vertex v = 0;
    Vertex w = 0;  // only meaningful for triangle violations
    std::string describe() const;
};

struct ValidationResult {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Reports every violated metric axiom. Triangle checks use a relative slack of 1e-9.
ValidationResult validate_metric(const Metric& m);

/// Scales distances up so that every off-diagonal distance is at least 1.
/// Returns the scaled metric and the factor s with output = input * s.
std::pair<Metric, double> rescale_metric(const Metric& m);

/// Ordered sequence of distinct non-root vertices, walked as root -> v1 -> ... -> vt (-> root).
using Tour = std::vector<Vertex>;

/// Throws InvalidInputError on a repeated vertex, the root, or an out-of-range index.
double tour_length(const Metric& m, std::span<const Vertex> tour, bool include_return = true);

void check_tour(const Metric& m, std::span<const Vertex> tour);

}  // namespace stktsp
