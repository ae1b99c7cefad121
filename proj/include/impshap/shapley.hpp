#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "impshap/divergence.hpp"
#include "impshap/model.hpp"
#include "impshap/types.hpp"

namespace impshap {

// What the marginal contributions are measured against:
//   distribution - the full-coalition prediction P_N
//   predicted_class - the one-hot vector at the argmax class of P_N
//   certainty - the uniform distribution, sign flipped so that moving the
//               prediction away from uniform counts as a positive contribution
enum class InterpretationMode { distribution, predicted_class, certainty };

enum class BoundMethod { lp_ks, monte_carlo };

const char* to_string(InterpretationMode mode);
const char* to_string(BoundMethod method);
std::optional<InterpretationMode> mode_from_string(std::string_view name);
std::optional<BoundMethod> method_from_string(std::string_view name);

struct ExplanationConfig {
    InterpretationMode mode = InterpretationMode::distribution;
    DivergenceKind distance = DivergenceKind::kolmogorov_smirnov;
    double epsilon = 0.0;
    BoundMethod bound_method = BoundMethod::lp_ks;
    int mc_samples = 1000;
    std::uint64_t seed = 0;
};

// Throws std::invalid_argument on inconsistent settings (the LP route only
// supports the Kolmogorov-Smirnov distance; Monte-Carlo needs >= 100 samples).
void validate(const ExplanationConfig& config);

// Memoized coalition predictions for one explained instance. Out-of-coalition
// features are replaced by the baseline (typically training-set means).
class CoalitionContext {
public:
    CoalitionContext(const PredictionModel& model, std::vector<double> instance,
                     std::vector<double> baseline);

    std::size_t feature_count() const { return instance_.size(); }
    std::uint32_t full_mask() const {
        return static_cast<std::uint32_t>((1u << instance_.size()) - 1u);
    }
    const std::vector<double>& instance() const { return instance_; }
    const std::vector<double>& baseline() const { return baseline_; }
    const PredictionModel& model() const { return *model_; }

    // Cached model prediction for one coalition bitmask.
    const ProbabilityDistribution& predict_coalition(std::uint32_t mask) const;

    // Fills the whole cache; call before reading from multiple threads.
    void populate_all() const;

private:
    const PredictionModel* model_;
    std::vector<double> instance_;
    std::vector<double> baseline_;
    mutable std::vector<std::optional<ProbabilityDistribution>> cache_;
};

// |S|! (m - |S| - 1)! / m!
double coalition_weight(int subset_size, int feature_count);

// Exact Shapley values of the distance game over all 2^m coalitions.
std::vector<double> precise_shapley(const CoalitionContext& ctx, const ExplanationConfig& config);

// Interval-valued Shapley values under the epsilon-contamination model, with
// raw per-feature intervals, the total-gain budget, and the reachable
// reduction applied.
ShapleyIntervalSet imprecise_shapley(const CoalitionContext& ctx, const ExplanationConfig& config);

struct ReductionResult {
    std::vector<Interval> intervals;
    bool applied = true;
    std::string warning;
};

// Tightens per-feature intervals against the total-gain budget:
//   upper_k := min(upper_k, gain.hi - sum of other lowers)
//   lower_k := max(lower_k, gain.lo - sum of other uppers)
// worked in shifted nonnegative coordinates. When the budget and the boxes
// are numerically incompatible even after clamping the budget, the reduction
// is skipped and the raw intervals are returned with a diagnostic.
ReductionResult reachable_reduction(const std::vector<Interval>& raw, Interval gain);

// Bounds of <a, phi> subject to the boxes and the total-gain budget, solved
// as a pair of LPs. Throws std::runtime_error when the budget is
// incompatible with the boxes.
Interval linear_functional_bounds(const std::vector<double>& a, const std::vector<Interval>& boxes,
                                  Interval gain);

// argmax of eta * lower + (1 - eta) * upper; ties resolve to the lowest
// feature index. eta = 1 is the robust strategy, eta = 0 the optimistic one.
std::size_t decision_strategy(const std::vector<Interval>& intervals, double eta);

// The reference distribution the chosen mode compares against.
ProbabilityDistribution reference_distribution(InterpretationMode mode,
                                               const ProbabilityDistribution& full_prediction);

}  // namespace impshap
