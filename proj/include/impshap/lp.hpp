#pragma once

#include <limits>
#include <vector>

namespace impshap {

enum class Sense { minimize, maximize };
enum class Relation { less_equal, greater_equal, equal };

struct LinearConstraint {
    std::vector<double> coeffs;
    Relation rel = Relation::less_equal;
    double rhs = 0.0;
};

// Small dense LP over box-bounded variables. Bounds may be infinite
// (-inf lower / +inf upper); a variable with lower == upper is treated as a
// constant and folded out before solving.
struct LinearProgram {
    Sense sense = Sense::minimize;
    std::vector<double> objective;
    std::vector<LinearConstraint> constraints;
    std::vector<double> lower;  // -infinity allowed
    std::vector<double> upper;  // +infinity allowed

    std::size_t variable_count() const { return objective.size(); }

    // convenience: all variables in [lo, hi]
    static LinearProgram boxed(Sense sense, std::vector<double> objective, double lo, double hi);
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    double objective_value = 0.0;     // meaningful iff optimal
    std::vector<double> point;        // meaningful iff optimal
};

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kLpFeasibilityTol = 1e-8;
inline constexpr double kLpPivotTol = 1e-10;

// Two-phase dense simplex with Bland's anti-cycling rule. Deterministic:
// identical inputs produce bit-identical outputs.
LpSolution solve(const LinearProgram& lp);

}  // namespace impshap
