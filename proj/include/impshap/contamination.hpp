#pragma once

#include <vector>

#include "impshap/types.hpp"

namespace impshap {

// Linear-vacuous (epsilon-contamination) credal set around a distribution:
// the convex hull of { (1-eps) * center + eps * H : H any distribution }.
// class_bounds[i]      = [(1-eps) p_i, (1-eps) p_i + eps]
// cumulative_bounds[i] = [(1-eps) pi_i, min((1-eps) pi_i + eps, 1)],
// with the last cumulative coordinate pinned to [1, 1].
struct CredalBox {
    double epsilon = 0.0;
    ProbabilityDistribution center;
    std::vector<Interval> class_bounds;
    std::vector<Interval> cumulative_bounds;

    std::size_t size() const { return class_bounds.size(); }
    bool contains(const ProbabilityDistribution& p, double tol = 1e-12) const;
};

CredalBox build_credal_box(const ProbabilityDistribution& center, double epsilon);

// The C vertices of the credal set: the k-th point puts the whole epsilon
// mass on class k.
std::vector<ProbabilityDistribution> extreme_points(const CredalBox& box);

// Imprecise-Dirichlet bridge: epsilon = s / (n + s).
double epsilon_from_idm(double s, long long n);
double epsilon_from_idm(long long n);  // s defaults to 1

}  // namespace impshap
