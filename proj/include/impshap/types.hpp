#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace impshap {

// Point in the C-class unit simplex. Immutable by convention: build through
// make_distribution and treat the result as read-only.
struct ProbabilityDistribution {
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
    double operator[](std::size_t i) const { return probs[i]; }
};

// Validates and normalizes a raw probability vector: entries within -1e-9 of
// zero are clamped to 0 and the vector is rescaled to sum exactly to 1.
// Rejects vectors shorter than 2, non-finite or negative entries, and
// all-zero input.
ProbabilityDistribution make_distribution(std::vector<double> values);

// Nondecreasing partial sums of a distribution; the last entry is pinned to 1.
struct CumulativeDistribution {
    std::vector<double> cum;

    std::size_t size() const { return cum.size(); }
    double operator[](std::size_t i) const { return cum[i]; }
};

CumulativeDistribution cumulative(const ProbabilityDistribution& p);

// Closed real interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double x, double tol = 0.0) const {
        return x >= lo - tol && x <= hi + tol;
    }
    bool contains(const Interval& other, double tol = 0.0) const {
        return other.lo >= lo - tol && other.hi <= hi + tol;
    }
};

// Inversions up to 1e-12 (floating-point slop) are snapped to the midpoint;
// anything wider is rejected.
Interval make_interval(double lo, double hi);

// Per-feature interval-valued Shapley values plus the total-gain budget.
struct ShapleyIntervalSet {
    std::vector<Interval> raw;      // one per feature
    std::vector<Interval> reduced;  // reachable subset of raw
    std::vector<double> precise;    // values at epsilon = 0
    Interval total_gain;
    bool reduction_applied = true;
    std::string warning;  // non-empty iff the reduction was skipped

    std::size_t feature_count() const { return raw.size(); }
};

}  // namespace impshap
