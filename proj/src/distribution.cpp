#include "stktsp/distribution.hpp"

#include "stktsp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace stktsp {

namespace {

struct Atom {
    double value;
    double prob;
};

}  // namespace

DiscreteDist::DiscreteDist() : support_{0.0}, probs_{1.0}, cdf_{1.0} {}

DiscreteDist DiscreteDist::point(double value) { return DiscreteDist({value}, {1.0}); }

DiscreteDist::DiscreteDist(std::vector<double> support, std::vector<double> probs, double tolerance) {
    if (support.size() != probs.size()) {
        throw InvalidInputError("distribution support has " + std::to_string(support.size()) + " values but " +
                                std::to_string(probs.size()) + " probabilities");
    }
    if (support.empty()) throw InvalidInputError("distribution support is empty");

    std::vector<Atom> atoms;
    atoms.reserve(support.size());
    double total = 0.0;
    for (std::size_t t = 0; t < support.size(); ++t) {
        if (!std::isfinite(support[t]) || support[t] < 0.0) {
            throw InvalidInputError("distribution support values must be finite and nonnegative");
        }
        if (!std::isfinite(probs[t]) || probs[t] < 0.0) {
            throw InvalidInputError("distribution probabilities must be finite and nonnegative");
        }
        total += probs[t];
        atoms.push_back({support[t], probs[t]});
    }
    if (std::abs(total - 1.0) > tolerance) {
        throw InvalidInputError("distribution probabilities sum to " + std::to_string(total) + ", expected 1");
    }

    std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
    for (const Atom& a : atoms) {
        if (a.prob == 0.0) continue;
        if (!support_.empty() && support_.back() == a.value) {
            probs_.back() += a.prob;
        } else {
            support_.push_back(a.value);
            probs_.push_back(a.prob);
        }
    }
    if (support_.empty()) throw InvalidInputError("distribution has no positive-probability atom");

    for (double& p : probs_) p /= total;
    cdf_.resize(probs_.size());
    std::partial_sum(probs_.begin(), probs_.end(), cdf_.begin());
    cdf_.back() = 1.0;
}

DiscreteDist DiscreteDist::transformed(const std::function<double(double)>& f) const {
    std::vector<double> values(support_.size());
    std::transform(support_.begin(), support_.end(), values.begin(), f);
    return DiscreteDist(std::move(values), probs_);
}

double DiscreteDist::quantile(double u) const noexcept {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return support_[static_cast<std::size_t>(it - cdf_.begin())];
}

double expectation(const DiscreteDist& d) {
    double e = 0.0;
    for (std::size_t t = 0; t < d.size(); ++t) e += d.support()[t] * d.probs()[t];
    return e;
}

double reward_profit(const DiscreteDist& d, std::uint64_t k, int scale) {
    if (k == 0) return 1.0;
    const double kd = static_cast<double>(k);
    double e = 0.0;
    for (std::size_t t = 0; t < d.size(); ++t) {
        e += d.probs()[t] * std::min(std::ldexp(d.support()[t], scale) / kd, 1.0);
    }
    return std::clamp(e, 0.0, 1.0);
}

double qualify_prob(const DiscreteDist& d, double threshold) {
    double p = 0.0;
    for (std::size_t t = 0; t < d.size() && d.support()[t] <= threshold; ++t) p += d.probs()[t];
    return std::min(p, 1.0);
}

double sample(const DiscreteDist& d, Rng& rng) { return d.quantile(rng.uniform()); }

}  // namespace stktsp
