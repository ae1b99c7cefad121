#pragma once

#include <stdexcept>
#include <vector>

#include "impshap/contamination.hpp"
#include "impshap/types.hpp"

namespace impshap {

// Cumulative-probability boxes for the three distributions entering a
// marginal-contribution term: pi for P, tau for R, alpha for the reference Q.
// Each vector holds the C-1 free cumulative coordinates (the last coordinate
// of a cumulative distribution is pinned at 1 and dropped).
struct BoundProblemInputs {
    std::vector<Interval> pi;
    std::vector<Interval> tau;
    std::vector<Interval> alpha;
};

// Drops the pinned last cumulative coordinate of a credal box.
std::vector<Interval> free_cumulative_bounds(const CredalBox& box);

BoundProblemInputs make_bound_inputs(const CredalBox& p_box, const CredalBox& r_box,
                                     const CredalBox& q_box);

// Raised when every subproblem of a bound computation is infeasible. Cannot
// happen for boxes generated from a common contamination construction.
struct AllSubproblemsInfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lower bound for D_KS(P, Q) - D_KS(R, Q) over the boxes: the minimum over
// the 2(C-1) linear subproblems, skipping infeasible ones.
double lower_difference_bound(const BoundProblemInputs& in);

// Upper bound, symmetric construction.
double upper_difference_bound(const BoundProblemInputs& in);

Interval difference_bounds(const BoundProblemInputs& in);

// Closed form for C = 2: exact optimization of
//   |pi - alpha| - |tau - alpha|
// over the three intervals, by evaluating the piecewise-linear objective at
// its breakpoints. Matches the LP route to within floating-point error.
Interval binary_difference_bounds(Interval pi, Interval tau, Interval alpha);

// Bounds for D_KS(T, Q) itself over two cumulative boxes (the total-gain
// budget): lower bound by LP, upper bound in closed form.
Interval total_gain_bounds(const std::vector<Interval>& pi, const std::vector<Interval>& alpha);

}  // namespace impshap
