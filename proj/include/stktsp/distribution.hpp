#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace stktsp {

/// Seedable generator with independent per-stream derivation.
/// Stream s of seed x is a pure function of (x, s), so parallel work that
/// assigns stream s to item s is reproducible regardless of scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(mix(seed)) {}
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        return Rng(mix(seed) ^ mix(stream_id + 0x632be59bd9b4e019ULL));
    }

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)); }

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::mt19937_64 engine_;
};

/// Finite distribution over nonnegative values, kept in normalized form:
/// strictly increasing support, duplicates merged, zero-probability atoms dropped.
class DiscreteDist {
public:
    /// Point mass at 0.
    DiscreteDist();
    /// Throws InvalidInputError on length mismatch, negative or non-finite entries,
    /// or probabilities whose sum differs from 1 by more than `tolerance`.
    DiscreteDist(std::vector<double> support, std::vector<double> probs, double tolerance = 1e-9);

    static DiscreteDist point(double value);

    std::span<const double> support() const noexcept { return support_; }
    std::span<const double> probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return support_.size(); }
    double min() const noexcept { return support_.front(); }
    double max() const noexcept { return support_.back(); }
    bool deterministic() const noexcept { return support_.size() == 1; }

    /// Pushes every support value through `f` and re-normalizes (merging collisions).
    DiscreteDist transformed(const std::function<double(double)>& f) const;

    /// Inverse-CDF lookup for u in [0, 1).
    double quantile(double u) const noexcept;

    bool operator==(const DiscreteDist&) const = default;

private:
    std::vector<double> support_;
    std::vector<double> probs_;
    std::vector<double> cdf_;
};

double expectation(const DiscreteDist& d);

/// E[min{R * 2^j / k, 1}]: the reward truncated at k / 2^j and scaled into [0, 1].
/// Defined as 1 when k = 0.
double reward_profit(const DiscreteDist& d, std::uint64_t k, int scale);

/// P[C <= threshold], inclusive.
double qualify_prob(const DiscreteDist& d, double threshold);

double sample(const DiscreteDist& d, Rng& rng);

}  // namespace stktsp
