#pragma once

#include <cstdint>
#include <vector>

#include "impshap/contamination.hpp"
#include "impshap/divergence.hpp"
#include "impshap/types.hpp"

namespace impshap {

// Weight vector on the (k-1)-simplex.
struct SimplexSample {
    std::vector<double> weights;
};

// Uniform samples on the unit simplex via normalized unit exponentials.
// Deterministic per seed.
std::vector<SimplexSample> sample_simplex(std::size_t k, std::size_t count, std::uint64_t seed);

// Random points of a credal set: convex combinations of its extreme points
// with uniformly sampled weights.
std::vector<ProbabilityDistribution> sample_credal(const CredalBox& box, std::size_t count,
                                                   std::uint64_t seed);

struct McStats {
    std::size_t infinite_differences = 0;   // +/-inf differences folded into the bounds
    std::size_t indeterminate_skipped = 0;  // inf - inf triples dropped
    std::size_t evaluated = 0;
};

// Sampled min/max of D(P, Q) - D(R, Q) over triples from the three boxes.
// Inner approximation of the true bounds. The center triple, the paired
// diagonal (when the boxes admit P = R), and the extreme-point combinations
// are evaluated before any random triples.
Interval mc_difference_bounds(const CredalBox& p_box, const CredalBox& r_box,
                              const CredalBox& q_box, DivergenceKind kind, std::size_t count,
                              std::uint64_t seed, McStats* stats = nullptr);

// Sampled min/max of D(P, Q) alone over pairs from two boxes.
Interval mc_distance_bounds(const CredalBox& p_box, const CredalBox& q_box, DivergenceKind kind,
                            std::size_t count, std::uint64_t seed, McStats* stats = nullptr);

}  // namespace impshap
