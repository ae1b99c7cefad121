#include "impshap/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace impshap {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr int kMaxIterations = 100000;

enum class VarKind { fixed, shifted, negated, free_split };

struct VarMap {
    VarKind kind = VarKind::shifted;
    double value = 0.0;   // fixed value, shift offset, or negation origin
    int col = -1;         // standard column (positive part for free vars)
    int col_neg = -1;     // negative part for free vars
    double box_width = 0.0;  // finite width for doubly-bounded vars, else inf
};

struct Row {
    std::vector<double> coeffs;  // over standard columns
    Relation rel;
    double rhs;
};

// Tableau simplex, canonical form, Bland's rule. Rows hold the constraint
// matrix with an identity on the basic columns; reduced costs are recomputed
// from the cost vector each iteration (problems here are tiny).
class Tableau {
public:
    Tableau(std::vector<std::vector<double>> rows, std::vector<int> basis, std::size_t cols)
        : rows_(std::move(rows)), basis_(std::move(basis)), cols_(cols) {}

    std::size_t row_count() const { return rows_.size(); }
    const std::vector<int>& basis() const { return basis_; }
    double rhs(std::size_t i) const { return rows_[i][cols_]; }
    double coeff(std::size_t i, std::size_t j) const { return rows_[i][j]; }

    // minimizes cost over columns not in `banned`; returns false on unbounded
    bool minimize(const std::vector<double>& cost, const std::vector<bool>& banned) {
        for (int iter = 0; iter < kMaxIterations; ++iter) {
            int entering = -1;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (banned[j]) continue;
                if (reduced_cost(cost, j) < -kReducedCostTol) {
                    entering = static_cast<int>(j);
                    break;  // Bland: lowest eligible index
                }
            }
            if (entering < 0) return true;
            double best_ratio = kLpInfinity;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const double a = rows_[i][entering];
                if (a <= kLpPivotTol) continue;
                best_ratio = std::min(best_ratio, rows_[i][cols_] / a);
            }
            if (!std::isfinite(best_ratio)) return false;
            int leaving = -1;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const double a = rows_[i][entering];
                if (a <= kLpPivotTol) continue;
                const double ratio = rows_[i][cols_] / a;
                if (ratio > best_ratio + 1e-12) continue;
                // Bland: among the min-ratio rows pick the lowest basic index
                if (leaving < 0 || basis_[i] < basis_[leaving]) {
                    leaving = static_cast<int>(i);
                }
            }
            pivot(static_cast<std::size_t>(leaving), static_cast<std::size_t>(entering));
        }
        throw std::runtime_error("simplex iteration limit exceeded");
    }

    double objective(const std::vector<double>& cost) const {
        double total = 0.0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            total += cost[basis_[i]] * rows_[i][cols_];
        }
        return total;
    }

    void pivot(std::size_t row, std::size_t col) {
        std::vector<double>& pr = rows_[row];
        const double inv = 1.0 / pr[col];
        for (double& v : pr) v *= inv;
        pr[col] = 1.0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == row) continue;
            std::vector<double>& r = rows_[i];
            const double factor = r[col];
            if (std::fabs(factor) <= 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) r[j] -= factor * pr[j];
            r[col] = 0.0;
        }
        basis_[row] = static_cast<int>(col);
    }

    void drop_row(std::size_t row) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(row));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
    }

private:
    double reduced_cost(const std::vector<double>& cost, std::size_t j) const {
        double r = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const double a = rows_[i][j];
            if (a != 0.0) r -= cost[basis_[i]] * a;
        }
        return r;
    }

    std::vector<std::vector<double>> rows_;
    std::vector<int> basis_;
    std::size_t cols_;
};

void validate(const LinearProgram& lp) {
    const std::size_t n = lp.objective.size();
    if (lp.lower.size() != n || lp.upper.size() != n) {
        throw std::invalid_argument("LP bound vectors do not match variable count");
    }
    for (const LinearConstraint& c : lp.constraints) {
        if (c.coeffs.size() != n) {
            throw std::invalid_argument("LP constraint dimension mismatch: expected " +
                                        std::to_string(n) + ", got " +
                                        std::to_string(c.coeffs.size()));
        }
        if (!std::isfinite(c.rhs)) {
            throw std::invalid_argument("LP constraint rhs is not finite");
        }
    }
}

bool constant_row_satisfied(Relation rel, double lhs, double rhs) {
    switch (rel) {
        case Relation::less_equal: return lhs <= rhs + kLpFeasibilityTol;
        case Relation::greater_equal: return lhs >= rhs - kLpFeasibilityTol;
        case Relation::equal: return std::fabs(lhs - rhs) <= kLpFeasibilityTol;
    }
    return false;
}

}  // namespace

LinearProgram LinearProgram::boxed(Sense sense, std::vector<double> objective, double lo,
                                   double hi) {
    LinearProgram lp;
    lp.sense = sense;
    lp.lower.assign(objective.size(), lo);
    lp.upper.assign(objective.size(), hi);
    lp.objective = std::move(objective);
    return lp;
}

LpSolution solve(const LinearProgram& lp) {
    validate(lp);
    const std::size_t n = lp.variable_count();

    // variable transforms to y >= 0
    std::vector<VarMap> vars(n);
    int next_col = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double lo = lp.lower[j];
        const double hi = lp.upper[j];
        VarMap& vm = vars[j];
        if (lo > hi) {
            if (lo - hi <= 1e-12) {
                vm.kind = VarKind::fixed;
                vm.value = 0.5 * (lo + hi);
                continue;
            }
            return LpSolution{LpStatus::infeasible, 0.0, {}};
        }
        if (lo == hi) {
            vm.kind = VarKind::fixed;
            vm.value = lo;
            continue;
        }
        if (std::isfinite(lo)) {
            vm.kind = VarKind::shifted;
            vm.value = lo;
            vm.col = next_col++;
            vm.box_width = std::isfinite(hi) ? hi - lo : kLpInfinity;
        } else if (std::isfinite(hi)) {
            vm.kind = VarKind::negated;
            vm.value = hi;
            vm.col = next_col++;
            vm.box_width = kLpInfinity;
        } else {
            vm.kind = VarKind::free_split;
            vm.col = next_col++;
            vm.col_neg = next_col++;
            vm.box_width = kLpInfinity;
        }
    }
    const std::size_t structural = static_cast<std::size_t>(next_col);

    // constraint rows over the transformed variables
    std::vector<Row> rows;
    rows.reserve(lp.constraints.size() + n);
    for (const LinearConstraint& c : lp.constraints) {
        Row row;
        row.coeffs.assign(structural, 0.0);
        row.rel = c.rel;
        row.rhs = c.rhs;
        bool nonzero = false;
        for (std::size_t j = 0; j < n; ++j) {
            const double a = c.coeffs[j];
            if (a == 0.0) continue;
            const VarMap& vm = vars[j];
            switch (vm.kind) {
                case VarKind::fixed:
                    row.rhs -= a * vm.value;
                    break;
                case VarKind::shifted:
                    row.rhs -= a * vm.value;
                    row.coeffs[vm.col] += a;
                    nonzero = true;
                    break;
                case VarKind::negated:
                    row.rhs -= a * vm.value;
                    row.coeffs[vm.col] -= a;
                    nonzero = true;
                    break;
                case VarKind::free_split:
                    row.coeffs[vm.col] += a;
                    row.coeffs[vm.col_neg] -= a;
                    nonzero = true;
                    break;
            }
        }
        if (!nonzero) {
            // all variables folded: the row is a constant statement
            if (!constant_row_satisfied(row.rel, 0.0, row.rhs)) {
                return LpSolution{LpStatus::infeasible, 0.0, {}};
            }
            continue;
        }
        rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < n; ++j) {
        const VarMap& vm = vars[j];
        if (vm.kind == VarKind::shifted && std::isfinite(vm.box_width)) {
            Row row;
            row.coeffs.assign(structural, 0.0);
            row.coeffs[vm.col] = 1.0;
            row.rel = Relation::less_equal;
            row.rhs = vm.box_width;
            rows.push_back(std::move(row));
        }
    }

    // standard form: equalities with slack / surplus / artificial columns
    const std::size_t m = rows.size();
    std::size_t total_cols = structural;
    std::vector<int> slack_col(m, -1), artificial_col(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        Row& row = rows[i];
        if (row.rhs < 0.0) {
            for (double& v : row.coeffs) v = -v;
            row.rhs = -row.rhs;
            if (row.rel == Relation::less_equal) row.rel = Relation::greater_equal;
            else if (row.rel == Relation::greater_equal) row.rel = Relation::less_equal;
        }
        if (row.rel == Relation::less_equal) {
            slack_col[i] = static_cast<int>(total_cols++);
        } else if (row.rel == Relation::greater_equal) {
            slack_col[i] = static_cast<int>(total_cols++);      // surplus
            artificial_col[i] = static_cast<int>(total_cols++);
        } else {
            artificial_col[i] = static_cast<int>(total_cols++);
        }
    }

    std::vector<std::vector<double>> tableau_rows(m, std::vector<double>(total_cols + 1, 0.0));
    std::vector<int> basis(m, -1);
    std::vector<bool> is_artificial(total_cols, false);
    for (std::size_t i = 0; i < m; ++i) {
        const Row& row = rows[i];
        std::copy(row.coeffs.begin(), row.coeffs.end(), tableau_rows[i].begin());
        tableau_rows[i][total_cols] = row.rhs;
        if (row.rel == Relation::less_equal) {
            tableau_rows[i][slack_col[i]] = 1.0;
            basis[i] = slack_col[i];
        } else if (row.rel == Relation::greater_equal) {
            tableau_rows[i][slack_col[i]] = -1.0;
            tableau_rows[i][artificial_col[i]] = 1.0;
            basis[i] = artificial_col[i];
        } else {
            tableau_rows[i][artificial_col[i]] = 1.0;
            basis[i] = artificial_col[i];
        }
        if (artificial_col[i] >= 0) is_artificial[artificial_col[i]] = true;
    }

    Tableau tab(std::move(tableau_rows), std::move(basis), total_cols);
    std::vector<bool> no_ban(total_cols, false);

    // phase 1: minimize the artificial mass
    bool has_artificial = false;
    std::vector<double> phase1_cost(total_cols, 0.0);
    for (std::size_t j = 0; j < total_cols; ++j) {
        if (is_artificial[j]) {
            phase1_cost[j] = 1.0;
            has_artificial = true;
        }
    }
    if (has_artificial) {
        if (!tab.minimize(phase1_cost, no_ban)) {
            throw std::runtime_error("phase-1 simplex reported unbounded");
        }
        if (tab.objective(phase1_cost) > kLpFeasibilityTol) {
            return LpSolution{LpStatus::infeasible, 0.0, {}};
        }
        // remove artificials from the basis; redundant rows are dropped
        for (std::size_t i = tab.row_count(); i-- > 0;) {
            if (!is_artificial[tab.basis()[i]]) continue;
            int col = -1;
            for (std::size_t j = 0; j < total_cols; ++j) {
                if (is_artificial[j]) continue;
                if (std::fabs(tab.coeff(i, j)) > kLpPivotTol) {
                    col = static_cast<int>(j);
                    break;
                }
            }
            if (col >= 0) {
                tab.pivot(i, static_cast<std::size_t>(col));
            } else {
                tab.drop_row(i);
            }
        }
    }

    // phase 2: the real objective over the transformed variables
    std::vector<double> phase2_cost(total_cols, 0.0);
    const double sign = lp.sense == Sense::minimize ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const VarMap& vm = vars[j];
        const double c = sign * lp.objective[j];
        if (c == 0.0) continue;
        switch (vm.kind) {
            case VarKind::fixed: break;
            case VarKind::shifted: phase2_cost[vm.col] += c; break;
            case VarKind::negated: phase2_cost[vm.col] -= c; break;
            case VarKind::free_split:
                phase2_cost[vm.col] += c;
                phase2_cost[vm.col_neg] -= c;
                break;
        }
    }
    if (!tab.minimize(phase2_cost, is_artificial)) {
        return LpSolution{LpStatus::unbounded, 0.0, {}};
    }

    // recover the original point
    std::vector<double> y(total_cols, 0.0);
    for (std::size_t i = 0; i < tab.row_count(); ++i) {
        y[tab.basis()[i]] = tab.rhs(i);
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const VarMap& vm = vars[j];
        switch (vm.kind) {
            case VarKind::fixed: x[j] = vm.value; break;
            case VarKind::shifted: x[j] = vm.value + y[vm.col]; break;
            case VarKind::negated: x[j] = vm.value - y[vm.col]; break;
            case VarKind::free_split: x[j] = y[vm.col] - y[vm.col_neg]; break;
        }
        if (std::isfinite(lp.lower[j])) x[j] = std::max(x[j], lp.lower[j]);
        if (std::isfinite(lp.upper[j])) x[j] = std::min(x[j], lp.upper[j]);
    }
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * x[j];
    return LpSolution{LpStatus::optimal, value, std::move(x)};
}

}  // namespace impshap
