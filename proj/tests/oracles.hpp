// Test-side oracles, independent of the library's bound implementations:
// a brute-force grid optimizer for the cumulative-box problems, the dual
// linear programs for functional bounds, and random credal generators.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "impshap/contamination.hpp"
#include "impshap/ks_bounds.hpp"
#include "impshap/lp.hpp"
#include "impshap/rng.hpp"
#include "impshap/types.hpp"

namespace oracles {

inline impshap::ProbabilityDistribution random_distribution(impshap::Rng& rng, std::size_t c) {
    std::vector<double> values(c);
    for (double& v : values) v = rng.uniform(0.0, 1.0) + 1e-9;
    return impshap::make_distribution(values);
}

struct BoxTriple {
    impshap::CredalBox p;
    impshap::CredalBox r;
    impshap::CredalBox q;
};

// three boxes around independent random centers sharing one epsilon
inline BoxTriple random_box_triple(impshap::Rng& rng, std::size_t c, double epsilon) {
    return BoxTriple{impshap::build_credal_box(random_distribution(rng, c), epsilon),
                     impshap::build_credal_box(random_distribution(rng, c), epsilon),
                     impshap::build_credal_box(random_distribution(rng, c), epsilon)};
}

namespace detail {

inline double clamp(double x, const impshap::Interval& iv) {
    return std::min(std::max(x, iv.lo), iv.hi);
}

inline double dist_to(double x, const impshap::Interval& iv) {
    if (x < iv.lo) return iv.lo - x;
    if (x > iv.hi) return x - iv.hi;
    return 0.0;
}

// per-coordinate candidate values: the uniform step grid plus every box
// endpoint and midpoint that falls inside the coordinate's own interval
inline std::vector<double> candidate_values(const impshap::BoundProblemInputs& in, std::size_t i,
                                            double step) {
    const impshap::Interval& own = in.alpha[i];
    std::vector<double> values;
    for (double v = own.lo; v < own.hi; v += step) values.push_back(v);
    values.push_back(own.hi);
    const impshap::Interval extras[3] = {in.pi[i], in.tau[i], in.alpha[i]};
    for (const impshap::Interval& iv : extras) {
        values.push_back(clamp(iv.lo, own));
        values.push_back(clamp(iv.hi, own));
        values.push_back(clamp(0.5 * (iv.lo + iv.hi), own));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

// enumerates monotone alpha tuples over the candidate grids and folds the
// objective; the inner optimizations over pi and tau are exact:
//   min over monotone pi in box of max_i |pi_i - a_i|  =  max_i dist(a_i, box_i)
//   max over monotone pi in box of max_i |pi_i - a_i|  =  max_i max(hi_i - a_i, a_i - lo_i)
// (clamping a monotone vector into monotone bounds stays monotone; a single
// coordinate pushed to its endpoint extends to a monotone completion).
template <typename Objective>
void scan_monotone(const std::vector<std::vector<double>>& grids, std::vector<double>& alpha,
                   std::size_t i, double floor_value, const Objective& objective) {
    if (i == grids.size()) {
        objective(alpha);
        return;
    }
    for (const double v : grids[i]) {
        if (v < floor_value) continue;
        alpha[i] = v;
        scan_monotone(grids, alpha, i + 1, v, objective);
    }
}

}  // namespace detail

struct GridBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// Feasible-point search for min/max of max|pi - alpha| - max|tau - alpha|:
// an inner approximation of the true bounds, accurate to O(step).
inline GridBounds grid_difference_bounds(const impshap::BoundProblemInputs& in, double step) {
    const std::size_t n = in.alpha.size();
    std::vector<std::vector<double>> grids(n);
    for (std::size_t i = 0; i < n; ++i) grids[i] = detail::candidate_values(in, i, step);

    GridBounds out;
    out.lower = std::numeric_limits<double>::infinity();
    out.upper = -std::numeric_limits<double>::infinity();
    std::vector<double> alpha(n, 0.0);
    detail::scan_monotone(grids, alpha, 0, 0.0, [&](const std::vector<double>& a) {
        double nearest_pi = 0.0;
        double farthest_pi = 0.0;
        double nearest_tau = 0.0;
        double farthest_tau = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest_pi = std::max(nearest_pi, detail::dist_to(a[i], in.pi[i]));
            farthest_pi =
                std::max(farthest_pi, std::max(in.pi[i].hi - a[i], a[i] - in.pi[i].lo));
            nearest_tau = std::max(nearest_tau, detail::dist_to(a[i], in.tau[i]));
            farthest_tau =
                std::max(farthest_tau, std::max(in.tau[i].hi - a[i], a[i] - in.tau[i].lo));
        }
        out.lower = std::min(out.lower, nearest_pi - farthest_tau);
        out.upper = std::max(out.upper, farthest_pi - nearest_tau);
    });
    return out;
}

// Grid version of the total-gain lower bound: min over monotone alpha of
// max_i dist(alpha_i, pi_box_i).
inline double grid_gain_lower(const std::vector<impshap::Interval>& pi,
                              const std::vector<impshap::Interval>& alpha, double step) {
    const impshap::BoundProblemInputs in{pi, pi, alpha};
    const std::size_t n = alpha.size();
    std::vector<std::vector<double>> grids(n);
    for (std::size_t i = 0; i < n; ++i) grids[i] = detail::candidate_values(in, i, step);

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> a(n, 0.0);
    detail::scan_monotone(grids, a, 0, 0.0, [&](const std::vector<double>& point) {
        double nearest = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest = std::max(nearest, detail::dist_to(point[i], pi[i]));
        }
        best = std::min(best, nearest);
    });
    return best;
}

// grid version of the total-gain upper bound (farthest monotone pair)
inline double grid_gain_upper(const std::vector<impshap::Interval>& pi,
                              const std::vector<impshap::Interval>& alpha, double step) {
    const impshap::BoundProblemInputs in{pi, pi, alpha};
    const std::size_t n = alpha.size();
    std::vector<std::vector<double>> grids(n);
    for (std::size_t i = 0; i < n; ++i) grids[i] = detail::candidate_values(in, i, step);

    double best = 0.0;
    std::vector<double> a(n, 0.0);
    detail::scan_monotone(grids, a, 0, 0.0, [&](const std::vector<double>& point) {
        double farthest = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            farthest = std::max(farthest, std::max(pi[i].hi - point[i], point[i] - pi[i].lo));
        }
        best = std::max(best, farthest);
    });
    return best;
}

// Dual programs for bounds of <a, phi> subject to the boxes and the budget,
// written for shifted nonnegative boxes and mapped back:
//   lower dual: max  glo v0 - ghi w0 + sum lo_i v_i - sum hi_i w_i
//               s.t. v0 - w0 + v_k - w_k <= a_k,   all multipliers >= 0
//   upper dual: min  ghi v0 - glo w0 + sum hi_i v_i - sum lo_i w_i
//               s.t. v0 - w0 + v_k - w_k >= a_k,   all multipliers >= 0
inline impshap::Interval dual_functional_bounds(const std::vector<double>& a,
                                                const std::vector<impshap::Interval>& boxes,
                                                impshap::Interval gain) {
    using namespace impshap;
    const std::size_t m = boxes.size();
    double shift = boxes[0].lo;
    for (const Interval& iv : boxes) shift = std::min(shift, iv.lo);
    std::vector<double> lo(m), hi(m);
    for (std::size_t i = 0; i < m; ++i) {
        lo[i] = boxes[i].lo - shift;
        hi[i] = boxes[i].hi - shift;
    }
    const double glo = gain.lo - static_cast<double>(m) * shift;
    const double ghi = gain.hi - static_cast<double>(m) * shift;
    double sum_a = 0.0;
    for (const double v : a) sum_a += v;

    const std::size_t dim = 2 + 2 * m;  // v0, w0, v_1..m, w_1..m
    const auto constraint_row = [&](std::size_t k) {
        std::vector<double> coeffs(dim, 0.0);
        coeffs[0] = 1.0;
        coeffs[1] = -1.0;
        coeffs[2 + k] = 1.0;
        coeffs[2 + m + k] = -1.0;
        return coeffs;
    };

    LinearProgram lower_dual = LinearProgram::boxed(Sense::maximize, {}, 0.0, kLpInfinity);
    lower_dual.objective.assign(dim, 0.0);
    lower_dual.lower.assign(dim, 0.0);
    lower_dual.upper.assign(dim, kLpInfinity);
    lower_dual.objective[0] = glo;
    lower_dual.objective[1] = -ghi;
    for (std::size_t i = 0; i < m; ++i) {
        lower_dual.objective[2 + i] = lo[i];
        lower_dual.objective[2 + m + i] = -hi[i];
    }
    for (std::size_t k = 0; k < m; ++k) {
        lower_dual.constraints.push_back({constraint_row(k), Relation::less_equal, a[k]});
    }
    const LpSolution lower = solve(lower_dual);

    LinearProgram upper_dual = lower_dual;
    upper_dual.sense = Sense::minimize;
    upper_dual.objective[0] = ghi;
    upper_dual.objective[1] = -glo;
    for (std::size_t i = 0; i < m; ++i) {
        upper_dual.objective[2 + i] = hi[i];
        upper_dual.objective[2 + m + i] = -lo[i];
    }
    for (std::size_t k = 0; k < m; ++k) {
        upper_dual.constraints[k].rel = Relation::greater_equal;
    }
    const LpSolution upper = solve(upper_dual);

    if (lower.status != LpStatus::optimal || upper.status != LpStatus::optimal) {
        throw std::runtime_error("dual oracle failed to solve");
    }
    return make_interval(lower.objective_value + shift * sum_a,
                         upper.objective_value + shift * sum_a);
}

}  // namespace oracles
