#include "impshap/contamination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace impshap {

bool CredalBox::contains(const ProbabilityDistribution& p, double tol) const {
    if (p.size() != size()) return false;
    for (std::size_t i = 0; i < size(); ++i) {
        if (!class_bounds[i].contains(p.probs[i], tol)) return false;
    }
    return true;
}

CredalBox build_credal_box(const ProbabilityDistribution& center, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in [0, 1], got " +
                                    std::to_string(epsilon));
    }
    const std::size_t c = center.size();
    CredalBox box;
    box.epsilon = epsilon;
    box.center = center;
    box.class_bounds.reserve(c);
    box.cumulative_bounds.reserve(c);

    const double keep = 1.0 - epsilon;
    for (std::size_t i = 0; i < c; ++i) {
        const double lo = keep * center.probs[i];
        box.class_bounds.push_back(make_interval(lo, lo + epsilon));
    }
    const CumulativeDistribution cum = cumulative(center);
    for (std::size_t i = 0; i + 1 < c; ++i) {
        const double lo = keep * cum.cum[i];
        const double hi = std::min(lo + epsilon, 1.0);
        box.cumulative_bounds.push_back(make_interval(lo, hi));
    }
    box.cumulative_bounds.push_back(Interval{1.0, 1.0});
    return box;
}

std::vector<ProbabilityDistribution> extreme_points(const CredalBox& box) {
    const std::size_t c = box.size();
    const double keep = 1.0 - box.epsilon;
    std::vector<ProbabilityDistribution> points;
    points.reserve(c);
    for (std::size_t k = 0; k < c; ++k) {
        std::vector<double> probs(c);
        for (std::size_t i = 0; i < c; ++i) {
            probs[i] = keep * box.center.probs[i];
        }
        probs[k] += box.epsilon;
        points.push_back(make_distribution(std::move(probs)));
    }
    return points;
}

double epsilon_from_idm(double s, long long n) {
    if (!(s > 0.0)) {
        throw std::invalid_argument("IDM hyperparameter s must be positive, got " +
                                    std::to_string(s));
    }
    if (n < 0) {
        throw std::invalid_argument("sample count n must be nonnegative");
    }
    return s / (static_cast<double>(n) + s);
}

double epsilon_from_idm(long long n) { return epsilon_from_idm(1.0, n); }

}  // namespace impshap
