#include "impshap/types.hpp"

#include <cmath>
#include <stdexcept>

namespace impshap {

namespace {
constexpr double kNegativeSlack = 1e-9;
constexpr double kInversionSlack = 1e-12;
}  // namespace

ProbabilityDistribution make_distribution(std::vector<double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("distribution needs at least 2 classes, got " +
                                    std::to_string(values.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double v = values[i];
        if (!std::isfinite(v)) {
            throw std::invalid_argument("distribution entry " + std::to_string(i) +
                                        " is not finite");
        }
        if (v < -kNegativeSlack) {
            throw std::invalid_argument("distribution entry " + std::to_string(i) +
                                        " is negative: " + std::to_string(v));
        }
        if (v < 0.0) v = 0.0;
        values[i] = v;
        sum += v;
    }
    if (sum <= 0.0) {
        throw std::invalid_argument("distribution entries sum to zero");
    }
    for (double& v : values) v /= sum;
    return ProbabilityDistribution{std::move(values)};
}

CumulativeDistribution cumulative(const ProbabilityDistribution& p) {
    std::vector<double> cum(p.size());
    double running = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        running += p.probs[i];
        cum[i] = running;
    }
    cum.back() = 1.0;  // pinned: the last coordinate is the full simplex mass
    return CumulativeDistribution{std::move(cum)};
}

Interval make_interval(double lo, double hi) {
    if (!(lo <= hi)) {
        if (!(lo <= hi + kInversionSlack)) {
            throw std::invalid_argument("interval lo " + std::to_string(lo) +
                                        " exceeds hi " + std::to_string(hi));
        }
        const double mid = 0.5 * (lo + hi);
        lo = mid;
        hi = mid;
    }
    return Interval{lo, hi};
}

}  // namespace impshap
