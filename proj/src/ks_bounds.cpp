#include "impshap/ks_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "impshap/lp.hpp"

namespace impshap {

namespace {

constexpr double kSkipTol = 1e-12;

void validate_block(const std::vector<Interval>& block, const char* name, std::size_t n) {
    if (block.size() != n) {
        throw std::invalid_argument(std::string(name) + " block has " +
                                    std::to_string(block.size()) + " intervals, expected " +
                                    std::to_string(n));
    }
    for (const Interval& iv : block) {
        if (!(iv.lo <= iv.hi + kSkipTol) || iv.lo < -1e-9 || iv.hi > 1.0 + 1e-9) {
            throw std::invalid_argument(std::string(name) +
                                        " block holds an interval outside [0, 1]");
        }
    }
}

void validate(const BoundProblemInputs& in) {
    const std::size_t n = in.pi.size();
    if (n == 0) throw std::invalid_argument("bound inputs need at least one coordinate");
    validate_block(in.pi, "pi", n);
    validate_block(in.tau, "tau", n);
    validate_block(in.alpha, "alpha", n);
}

// Shared LP skeleton over variables [B, v_1..v_n, alpha_1..alpha_n]:
// boxes as variable bounds, B majorizing |v_i - alpha_i|, and monotonicity
// of both cumulative blocks.
LinearProgram base_program(const std::vector<Interval>& v_box,
                           const std::vector<Interval>& alpha_box) {
    const std::size_t n = v_box.size();
    const std::size_t dim = 2 * n + 1;
    LinearProgram lp;
    lp.objective.assign(dim, 0.0);
    lp.lower.assign(dim, 0.0);
    lp.upper.assign(dim, 0.0);
    lp.lower[0] = 0.0;
    lp.upper[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        lp.lower[1 + i] = v_box[i].lo;
        lp.upper[1 + i] = v_box[i].hi;
        lp.lower[1 + n + i] = alpha_box[i].lo;
        lp.upper[1 + n + i] = alpha_box[i].hi;
    }
    for (std::size_t i = 0; i < n; ++i) {
        LinearConstraint above;  // v_i - alpha_i - B <= 0
        above.coeffs.assign(dim, 0.0);
        above.coeffs[0] = -1.0;
        above.coeffs[1 + i] = 1.0;
        above.coeffs[1 + n + i] = -1.0;
        above.rel = Relation::less_equal;
        above.rhs = 0.0;
        lp.constraints.push_back(std::move(above));

        LinearConstraint below;  // alpha_i - v_i - B <= 0
        below.coeffs.assign(dim, 0.0);
        below.coeffs[0] = -1.0;
        below.coeffs[1 + i] = -1.0;
        below.coeffs[1 + n + i] = 1.0;
        below.rel = Relation::less_equal;
        below.rhs = 0.0;
        lp.constraints.push_back(std::move(below));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        LinearConstraint mono_v;  // v_i - v_{i+1} <= 0
        mono_v.coeffs.assign(dim, 0.0);
        mono_v.coeffs[1 + i] = 1.0;
        mono_v.coeffs[1 + i + 1] = -1.0;
        mono_v.rel = Relation::less_equal;
        mono_v.rhs = 0.0;
        lp.constraints.push_back(std::move(mono_v));

        LinearConstraint mono_a;  // alpha_i - alpha_{i+1} <= 0
        mono_a.coeffs.assign(dim, 0.0);
        mono_a.coeffs[1 + n + i] = 1.0;
        mono_a.coeffs[1 + n + i + 1] = -1.0;
        mono_a.rel = Relation::less_equal;
        mono_a.rhs = 0.0;
        lp.constraints.push_back(std::move(mono_a));
    }
    return lp;
}

// alpha_k - alpha_i <= bound for all i != k (the k-th term dominates)
void add_dominance(LinearProgram& lp, std::size_t n, std::size_t k, double sign,
                   const std::vector<double>& offsets) {
    for (std::size_t i = 0; i < n; ++i) {
        if (i == k) continue;
        LinearConstraint c;
        c.coeffs.assign(lp.objective.size(), 0.0);
        c.coeffs[1 + n + k] = sign;
        c.coeffs[1 + n + i] = -sign;
        c.rel = Relation::less_equal;
        c.rhs = offsets[i];
        lp.constraints.push_back(std::move(c));
    }
}

}  // namespace

std::vector<Interval> free_cumulative_bounds(const CredalBox& box) {
    std::vector<Interval> out(box.cumulative_bounds.begin(), box.cumulative_bounds.end() - 1);
    return out;
}

BoundProblemInputs make_bound_inputs(const CredalBox& p_box, const CredalBox& r_box,
                                     const CredalBox& q_box) {
    if (p_box.size() != r_box.size() || p_box.size() != q_box.size()) {
        throw std::invalid_argument("credal boxes disagree on class count");
    }
    return BoundProblemInputs{free_cumulative_bounds(p_box), free_cumulative_bounds(r_box),
                              free_cumulative_bounds(q_box)};
}

double lower_difference_bound(const BoundProblemInputs& in) {
    validate(in);
    const std::size_t n = in.pi.size();
    double best = std::numeric_limits<double>::infinity();
    bool any = false;

    for (std::size_t k = 0; k < n; ++k) {
        // family 1: subtracted term tau_k^U - alpha_k, needs alpha_k <= tau_k^U
        if (in.tau[k].hi >= in.alpha[k].lo - kSkipTol) {
            LinearProgram lp = base_program(in.pi, in.alpha);
            lp.sense = Sense::minimize;
            lp.objective[0] = 1.0;           // B
            lp.objective[1 + n + k] = 1.0;   // + alpha_k
            LinearConstraint cap;            // alpha_k <= tau_k^U
            cap.coeffs.assign(lp.objective.size(), 0.0);
            cap.coeffs[1 + n + k] = 1.0;
            cap.rel = Relation::less_equal;
            cap.rhs = in.tau[k].hi;
            lp.constraints.push_back(std::move(cap));
            std::vector<double> offsets(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) offsets[i] = in.tau[k].hi - in.tau[i].hi;
            add_dominance(lp, n, k, 1.0, offsets);
            const LpSolution sol = solve(lp);
            if (sol.status == LpStatus::unbounded) {
                throw std::runtime_error("bound subproblem reported unbounded over boxed data");
            }
            if (sol.status == LpStatus::optimal) {
                best = std::min(best, sol.objective_value - in.tau[k].hi);
                any = true;
            }
        }
        // family 2: subtracted term alpha_k - tau_k^L, needs alpha_k >= tau_k^L
        if (in.tau[k].lo <= in.alpha[k].hi + kSkipTol) {
            LinearProgram lp = base_program(in.pi, in.alpha);
            lp.sense = Sense::minimize;
            lp.objective[0] = 1.0;           // B
            lp.objective[1 + n + k] = -1.0;  // - alpha_k
            LinearConstraint floor;          // alpha_k >= tau_k^L
            floor.coeffs.assign(lp.objective.size(), 0.0);
            floor.coeffs[1 + n + k] = 1.0;
            floor.rel = Relation::greater_equal;
            floor.rhs = in.tau[k].lo;
            lp.constraints.push_back(std::move(floor));
            std::vector<double> offsets(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) offsets[i] = in.tau[i].lo - in.tau[k].lo;
            add_dominance(lp, n, k, -1.0, offsets);
            const LpSolution sol = solve(lp);
            if (sol.status == LpStatus::unbounded) {
                throw std::runtime_error("bound subproblem reported unbounded over boxed data");
            }
            if (sol.status == LpStatus::optimal) {
                best = std::min(best, sol.objective_value + in.tau[k].lo);
                any = true;
            }
        }
    }
    if (!any) {
        throw AllSubproblemsInfeasibleError(
            "lower difference bound: every subproblem infeasible (inconsistent boxes)");
    }
    return best;
}

double upper_difference_bound(const BoundProblemInputs& in) {
    validate(in);
    const std::size_t n = in.pi.size();
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;

    for (std::size_t k = 0; k < n; ++k) {
        // family 1: leading term pi_k^U - alpha_k, needs alpha_k <= pi_k^U
        if (in.pi[k].hi >= in.alpha[k].lo - kSkipTol) {
            LinearProgram lp = base_program(in.tau, in.alpha);
            lp.sense = Sense::maximize;
            lp.objective[0] = -1.0;          // - B
            lp.objective[1 + n + k] = -1.0;  // - alpha_k
            LinearConstraint cap;            // alpha_k <= pi_k^U
            cap.coeffs.assign(lp.objective.size(), 0.0);
            cap.coeffs[1 + n + k] = 1.0;
            cap.rel = Relation::less_equal;
            cap.rhs = in.pi[k].hi;
            lp.constraints.push_back(std::move(cap));
            std::vector<double> offsets(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) offsets[i] = in.pi[k].hi - in.pi[i].hi;
            add_dominance(lp, n, k, 1.0, offsets);
            const LpSolution sol = solve(lp);
            if (sol.status == LpStatus::unbounded) {
                throw std::runtime_error("bound subproblem reported unbounded over boxed data");
            }
            if (sol.status == LpStatus::optimal) {
                best = std::max(best, sol.objective_value + in.pi[k].hi);
                any = true;
            }
        }
        // family 2: leading term alpha_k - pi_k^L, needs alpha_k >= pi_k^L
        if (in.pi[k].lo <= in.alpha[k].hi + kSkipTol) {
            LinearProgram lp = base_program(in.tau, in.alpha);
            lp.sense = Sense::maximize;
            lp.objective[0] = -1.0;          // - B
            lp.objective[1 + n + k] = 1.0;   // + alpha_k
            LinearConstraint floor;          // alpha_k >= pi_k^L
            floor.coeffs.assign(lp.objective.size(), 0.0);
            floor.coeffs[1 + n + k] = 1.0;
            floor.rel = Relation::greater_equal;
            floor.rhs = in.pi[k].lo;
            lp.constraints.push_back(std::move(floor));
            std::vector<double> offsets(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) offsets[i] = in.pi[i].lo - in.pi[k].lo;
            add_dominance(lp, n, k, -1.0, offsets);
            const LpSolution sol = solve(lp);
            if (sol.status == LpStatus::unbounded) {
                throw std::runtime_error("bound subproblem reported unbounded over boxed data");
            }
            if (sol.status == LpStatus::optimal) {
                best = std::max(best, sol.objective_value - in.pi[k].lo);
                any = true;
            }
        }
    }
    if (!any) {
        throw AllSubproblemsInfeasibleError(
            "upper difference bound: every subproblem infeasible (inconsistent boxes)");
    }
    return best;
}

Interval difference_bounds(const BoundProblemInputs& in) {
    return make_interval(lower_difference_bound(in), upper_difference_bound(in));
}

Interval binary_difference_bounds(Interval pi, Interval tau, Interval alpha) {
    validate(BoundProblemInputs{{pi}, {tau}, {alpha}});

    const auto clamp = [](double x, const Interval& iv) {
        return std::min(std::max(x, iv.lo), iv.hi);
    };
    const auto dist_to = [](double x, const Interval& iv) {
        if (x < iv.lo) return iv.lo - x;
        if (x > iv.hi) return x - iv.hi;
        return 0.0;
    };

    // |pi - a| - |tau - a| is piecewise linear in a once pi and tau are
    // optimized out, so scanning the breakpoints of both pieces is exact.
    double lo = std::numeric_limits<double>::infinity();
    {
        const double candidates[5] = {alpha.lo, alpha.hi, clamp(pi.lo, alpha),
                                      clamp(pi.hi, alpha), clamp(tau.midpoint(), alpha)};
        for (const double a : candidates) {
            const double farthest_tau = std::max(tau.hi - a, a - tau.lo);
            lo = std::min(lo, dist_to(a, pi) - farthest_tau);
        }
    }
    double hi = -std::numeric_limits<double>::infinity();
    {
        const double candidates[5] = {alpha.lo, alpha.hi, clamp(tau.lo, alpha),
                                      clamp(tau.hi, alpha), clamp(pi.midpoint(), alpha)};
        for (const double a : candidates) {
            const double farthest_pi = std::max(pi.hi - a, a - pi.lo);
            hi = std::max(hi, farthest_pi - dist_to(a, tau));
        }
    }
    return make_interval(lo, hi);
}

Interval total_gain_bounds(const std::vector<Interval>& pi, const std::vector<Interval>& alpha) {
    validate(BoundProblemInputs{pi, pi, alpha});
    const std::size_t n = pi.size();

    LinearProgram lp = base_program(pi, alpha);
    lp.sense = Sense::minimize;
    lp.objective[0] = 1.0;  // min B
    const LpSolution sol = solve(lp);
    if (sol.status != LpStatus::optimal) {
        throw std::runtime_error("total gain lower bound LP did not solve");
    }
    const double lower = std::max(sol.objective_value, 0.0);

    double upper = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        upper = std::max(upper, std::max(pi[k].hi - alpha[k].lo, alpha[k].hi - pi[k].lo));
    }
    upper = std::min(upper, 1.0);
    return make_interval(std::min(lower, upper), upper);
}

}  // namespace impshap
