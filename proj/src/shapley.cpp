#include "impshap/shapley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "impshap/contamination.hpp"
#include "impshap/ks_bounds.hpp"
#include "impshap/lp.hpp"
#include "impshap/montecarlo.hpp"
#include "impshap/parallel.hpp"
#include "impshap/rng.hpp"

namespace impshap {

namespace {

constexpr std::size_t kMaxFeatures = 15;  // exact enumeration cap: 2^15 model calls

double factorial(int n) {
    static const double table[] = {1.0,
                                   1.0,
                                   2.0,
                                   6.0,
                                   24.0,
                                   120.0,
                                   720.0,
                                   5040.0,
                                   40320.0,
                                   362880.0,
                                   3628800.0,
                                   39916800.0,
                                   479001600.0,
                                   6227020800.0,
                                   87178291200.0,
                                   1307674368000.0};
    return table[n];
}

std::string mask_to_string(std::uint32_t mask, std::size_t m) {
    std::string bits(m, '0');
    for (std::size_t i = 0; i < m; ++i) {
        if (mask & (1u << i)) bits[m - 1 - i] = '1';
    }
    return bits;
}

void require_explainable(const CoalitionContext& ctx) {
    const std::size_t m = ctx.feature_count();
    if (m < 1 || m > kMaxFeatures) {
        throw std::invalid_argument("feature count " + std::to_string(m) +
                                    " outside the supported range [1, " +
                                    std::to_string(kMaxFeatures) + "]");
    }
}

}  // namespace

const char* to_string(InterpretationMode mode) {
    switch (mode) {
        case InterpretationMode::distribution: return "distribution";
        case InterpretationMode::predicted_class: return "class";
        case InterpretationMode::certainty: return "certainty";
    }
    return "unknown";
}

const char* to_string(BoundMethod method) {
    switch (method) {
        case BoundMethod::lp_ks: return "lp_ks";
        case BoundMethod::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

std::optional<InterpretationMode> mode_from_string(std::string_view name) {
    if (name == "distribution") return InterpretationMode::distribution;
    if (name == "class") return InterpretationMode::predicted_class;
    if (name == "certainty") return InterpretationMode::certainty;
    return std::nullopt;
}

std::optional<BoundMethod> method_from_string(std::string_view name) {
    if (name == "lp" || name == "lp_ks") return BoundMethod::lp_ks;
    if (name == "mc" || name == "monte_carlo") return BoundMethod::monte_carlo;
    return std::nullopt;
}

void validate(const ExplanationConfig& config) {
    if (!(config.epsilon >= 0.0 && config.epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    }
    if (config.bound_method == BoundMethod::lp_ks &&
        config.distance != DivergenceKind::kolmogorov_smirnov) {
        throw std::invalid_argument(
            "the LP bound method supports only the Kolmogorov-Smirnov distance");
    }
    if (config.bound_method == BoundMethod::monte_carlo && config.mc_samples < 100) {
        throw std::invalid_argument("Monte-Carlo bounds need at least 100 samples");
    }
}

CoalitionContext::CoalitionContext(const PredictionModel& model, std::vector<double> instance,
                                   std::vector<double> baseline)
    : model_(&model), instance_(std::move(instance)), baseline_(std::move(baseline)) {
    if (instance_.empty()) {
        throw std::invalid_argument("instance must have at least one feature");
    }
    if (instance_.size() != baseline_.size()) {
        throw std::invalid_argument("instance and baseline dimensions differ");
    }
    if (instance_.size() != model.feature_count()) {
        throw std::invalid_argument("instance dimension does not match the model");
    }
    if (instance_.size() > kMaxFeatures) {
        throw std::invalid_argument("feature count exceeds the exact-enumeration cap of " +
                                    std::to_string(kMaxFeatures));
    }
    cache_.resize(std::size_t{1} << instance_.size());
}

const ProbabilityDistribution& CoalitionContext::predict_coalition(std::uint32_t mask) const {
    if (mask >= cache_.size()) {
        throw std::invalid_argument("coalition mask out of range");
    }
    std::optional<ProbabilityDistribution>& slot = cache_[mask];
    if (!slot) {
        std::vector<double> x(instance_.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = (mask & (1u << i)) ? instance_[i] : baseline_[i];
        }
        try {
            slot = model_->predict(x);
        } catch (const std::exception& e) {
            throw std::runtime_error("model prediction failed for coalition " +
                                     mask_to_string(mask, instance_.size()) + ": " + e.what());
        }
    }
    return *slot;
}

void CoalitionContext::populate_all() const {
    parallel_for(cache_.size(), [this](std::size_t mask) {
        predict_coalition(static_cast<std::uint32_t>(mask));
    });
}

double coalition_weight(int subset_size, int feature_count) {
    if (feature_count < 1 || feature_count > static_cast<int>(kMaxFeatures)) {
        throw std::invalid_argument("feature count out of range");
    }
    if (subset_size < 0 || subset_size > feature_count - 1) {
        throw std::invalid_argument("subset size must lie in [0, m-1]");
    }
    return factorial(subset_size) * factorial(feature_count - subset_size - 1) /
           factorial(feature_count);
}

ProbabilityDistribution reference_distribution(InterpretationMode mode,
                                               const ProbabilityDistribution& full_prediction) {
    const std::size_t c = full_prediction.size();
    switch (mode) {
        case InterpretationMode::distribution:
            return full_prediction;
        case InterpretationMode::predicted_class: {
            std::size_t best = 0;
            for (std::size_t i = 1; i < c; ++i) {
                if (full_prediction.probs[i] > full_prediction.probs[best]) best = i;
            }
            std::vector<double> probs(c, 0.0);
            probs[best] = 1.0;
            return ProbabilityDistribution{std::move(probs)};
        }
        case InterpretationMode::certainty:
            return ProbabilityDistribution{std::vector<double>(c, 1.0 / static_cast<double>(c))};
    }
    throw std::invalid_argument("unknown interpretation mode");
}

std::vector<double> precise_shapley(const CoalitionContext& ctx, const ExplanationConfig& config) {
    validate(config);
    require_explainable(ctx);
    const std::size_t m = ctx.feature_count();
    const std::size_t masks = std::size_t{1} << m;
    ctx.populate_all();

    const ProbabilityDistribution ref =
        reference_distribution(config.mode, ctx.predict_coalition(ctx.full_mask()));
    std::vector<double> dist(masks);
    for (std::size_t mask = 0; mask < masks; ++mask) {
        dist[mask] = divergence(ctx.predict_coalition(static_cast<std::uint32_t>(mask)), ref,
                                config.distance);
    }

    const double sign = config.mode == InterpretationMode::certainty ? -1.0 : 1.0;
    std::vector<double> phi(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint32_t bit = 1u << i;
        double total = 0.0;
        for (std::size_t mask = 0; mask < masks; ++mask) {
            if (mask & bit) continue;
            const double w = coalition_weight(std::popcount(static_cast<std::uint32_t>(mask)),
                                              static_cast<int>(m));
            total += w * (dist[mask] - dist[mask | bit]);
        }
        phi[i] = sign * total;
    }
    return phi;
}

namespace {

// Sum over extended reals. Mixed infinities are indeterminate; callers ask
// for the direction that keeps the result a valid one-sided bound.
struct DirectedSum {
    double finite = 0.0;
    bool pos = false;
    bool neg = false;

    void add(double v) {
        if (std::isinf(v)) {
            (v > 0 ? pos : neg) = true;
        } else {
            finite += v;
        }
    }
    double as_lower() const {  // mixed infinities collapse toward -inf
        if (neg) return -std::numeric_limits<double>::infinity();
        if (pos) return std::numeric_limits<double>::infinity();
        return finite;
    }
    double as_upper() const {  // mixed infinities collapse toward +inf
        if (pos) return std::numeric_limits<double>::infinity();
        if (neg) return -std::numeric_limits<double>::infinity();
        return finite;
    }
};

// a - b with the indeterminate inf - inf resolved toward the stated fallback
double sub_or(double a, double b, double fallback) {
    if (std::isinf(a) && std::isinf(b) && a == b) return fallback;
    return a - b;
}

}  // namespace

ReductionResult reachable_reduction(const std::vector<Interval>& raw, Interval gain) {
    const std::size_t m = raw.size();
    if (m == 0) throw std::invalid_argument("reduction needs at least one interval");
    constexpr double inf = std::numeric_limits<double>::infinity();

    DirectedSum lows, highs;
    for (const Interval& iv : raw) {
        lows.add(iv.lo);
        highs.add(iv.hi);
    }
    const double sum_lo = lows.as_lower();
    const double sum_hi = highs.as_upper();

    // clamp the budget into the attainable sum range before testing properness
    double gain_lo = std::max(gain.lo, sum_lo);
    double gain_hi = std::min(gain.hi, sum_hi);
    if (gain_lo > gain_hi) {
        if (gain_lo - gain_hi > 1e-9) {
            ReductionResult out;
            out.intervals = raw;
            out.applied = false;
            out.warning = "reachable reduction skipped: total-gain budget [" +
                          std::to_string(gain.lo) + ", " + std::to_string(gain.hi) +
                          "] is incompatible with the interval sums [" + std::to_string(sum_lo) +
                          ", " + std::to_string(sum_hi) + "]";
            return out;
        }
        const double mid = 0.5 * (gain_lo + gain_hi);
        gain_lo = mid;
        gain_hi = mid;
    }

    // shift so every finite lower bound is nonnegative; the budget shifts by
    // m * c and infinite endpoints pass through unchanged
    double shift = 0.0;
    for (const Interval& iv : raw) {
        if (std::isfinite(iv.lo)) shift = std::min(shift, iv.lo);
    }
    const double shifted_gain_lo = gain_lo - static_cast<double>(m) * shift;
    const double shifted_gain_hi = gain_hi - static_cast<double>(m) * shift;

    ReductionResult out;
    out.intervals.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        DirectedSum other_lows, other_highs;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == k) continue;
            other_lows.add(raw[i].lo - shift);
            other_highs.add(raw[i].hi - shift);
        }
        const double lo_k = raw[k].lo - shift;
        const double hi_k = raw[k].hi - shift;
        double upper = std::min(hi_k, sub_or(shifted_gain_hi, other_lows.as_lower(), inf));
        double lower = std::max(lo_k, sub_or(shifted_gain_lo, other_highs.as_upper(), -inf));
        upper += shift;
        lower += shift;
        // numerical guard: stay inside the raw interval
        upper = std::min(upper, raw[k].hi);
        lower = std::max(lower, raw[k].lo);
        if (!(lower <= upper + 1e-12)) {
            out.intervals.push_back(raw[k]);
        } else {
            out.intervals.push_back(make_interval(lower, upper));
        }
    }
    return out;
}

Interval linear_functional_bounds(const std::vector<double>& a, const std::vector<Interval>& boxes,
                                  Interval gain) {
    const std::size_t m = boxes.size();
    if (m == 0 || a.size() != m) {
        throw std::invalid_argument("coefficient vector does not match the boxes");
    }
    LinearProgram lp;
    lp.objective = a;
    lp.lower.resize(m);
    lp.upper.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        lp.lower[i] = boxes[i].lo;
        lp.upper[i] = boxes[i].hi;
    }
    LinearConstraint at_least;
    at_least.coeffs.assign(m, 1.0);
    at_least.rel = Relation::greater_equal;
    at_least.rhs = gain.lo;
    LinearConstraint at_most;
    at_most.coeffs.assign(m, 1.0);
    at_most.rel = Relation::less_equal;
    at_most.rhs = gain.hi;
    lp.constraints.push_back(std::move(at_least));
    lp.constraints.push_back(std::move(at_most));

    lp.sense = Sense::minimize;
    const LpSolution low = solve(lp);
    lp.sense = Sense::maximize;
    const LpSolution high = solve(lp);
    if (low.status != LpStatus::optimal || high.status != LpStatus::optimal) {
        throw std::runtime_error(
            "linear functional bounds: total-gain budget incompatible with the boxes");
    }
    return make_interval(low.objective_value, high.objective_value);
}

std::size_t decision_strategy(const std::vector<Interval>& intervals, double eta) {
    if (intervals.empty()) throw std::invalid_argument("no intervals to choose from");
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("eta must lie in [0, 1]");
    }
    std::size_t best = 0;
    double best_score = eta * intervals[0].lo + (1.0 - eta) * intervals[0].hi;
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        const double score = eta * intervals[i].lo + (1.0 - eta) * intervals[i].hi;
        if (score > best_score) {
            best = i;
            best_score = score;
        }
    }
    return best;
}

ShapleyIntervalSet imprecise_shapley(const CoalitionContext& ctx,
                                     const ExplanationConfig& config) {
    validate(config);
    require_explainable(ctx);
    const std::size_t m = ctx.feature_count();
    const std::size_t masks = std::size_t{1} << m;
    ctx.populate_all();

    const std::uint32_t full = ctx.full_mask();
    const ProbabilityDistribution ref =
        reference_distribution(config.mode, ctx.predict_coalition(full));
    const bool flipped = config.mode == InterpretationMode::certainty;

    ShapleyIntervalSet result;
    result.precise = precise_shapley(ctx, config);

    // one contamination box per coalition; the reference box is degenerate
    // unless the reference is the (imprecise) full prediction itself
    std::vector<CredalBox> boxes(masks);
    parallel_for(masks, [&](std::size_t mask) {
        boxes[mask] =
            build_credal_box(ctx.predict_coalition(static_cast<std::uint32_t>(mask)),
                             config.epsilon);
    });
    const CredalBox ref_box = config.mode == InterpretationMode::distribution
                                  ? boxes[full]
                                  : build_credal_box(ref, 0.0);

    struct Term {
        std::size_t feature;
        std::uint32_t without;  // coalition S, feature absent
    };
    std::vector<Term> terms;
    terms.reserve(m * (masks / 2));
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint32_t bit = 1u << i;
        for (std::uint32_t mask = 0; mask < masks; ++mask) {
            if (mask & bit) continue;
            terms.push_back(Term{i, mask});
        }
    }

    std::vector<Interval> term_bounds(terms.size());
    parallel_for(terms.size(), [&](std::size_t t) {
        const Term& term = terms[t];
        const std::uint32_t with = term.without | (1u << term.feature);
        const CredalBox* p_box = &boxes[term.without];
        const CredalBox* r_box = &boxes[with];
        if (flipped) std::swap(p_box, r_box);  // certainty flips the sign of every term

        if (config.epsilon == 0.0) {
            const double value = marginal_difference(p_box->center, r_box->center,
                                                     ref_box.center, config.distance);
            term_bounds[t] = Interval{value, value};
        } else if (config.bound_method == BoundMethod::lp_ks) {
            try {
                term_bounds[t] = difference_bounds(make_bound_inputs(*p_box, *r_box, ref_box));
            } catch (const AllSubproblemsInfeasibleError& e) {
                throw std::runtime_error("bound LP failed for feature " +
                                         std::to_string(term.feature) + ", coalition " +
                                         mask_to_string(term.without, m) + ": " + e.what());
            }
        } else {
            const std::uint64_t term_seed =
                mix_seed(config.seed, (static_cast<std::uint64_t>(term.feature) << 32) |
                                          term.without);
            term_bounds[t] = mc_difference_bounds(*p_box, *r_box, ref_box, config.distance,
                                                  static_cast<std::size_t>(config.mc_samples),
                                                  term_seed);
        }
    });

    result.raw.assign(m, Interval{0.0, 0.0});
    std::vector<double> lo(m, 0.0), hi(m, 0.0);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const Term& term = terms[t];
        const double w = coalition_weight(std::popcount(term.without), static_cast<int>(m));
        lo[term.feature] += w * term_bounds[t].lo;
        hi[term.feature] += w * term_bounds[t].hi;
    }
    for (std::size_t i = 0; i < m; ++i) result.raw[i] = make_interval(lo[i], hi[i]);

    // total-gain budget
    const std::uint64_t gain_seed = mix_seed(config.seed, 0x746f74616c67ULL);
    if (config.epsilon == 0.0) {
        double gain = 0.0;
        switch (config.mode) {
            case InterpretationMode::distribution:
                gain = divergence(boxes[0].center, boxes[full].center, config.distance);
                break;
            case InterpretationMode::predicted_class:
                gain = marginal_difference(boxes[0].center, boxes[full].center, ref,
                                           config.distance);
                break;
            case InterpretationMode::certainty:
                gain = marginal_difference(boxes[full].center, boxes[0].center, ref,
                                           config.distance);
                break;
        }
        result.total_gain = Interval{gain, gain};
    } else if (config.bound_method == BoundMethod::lp_ks) {
        switch (config.mode) {
            case InterpretationMode::distribution:
                result.total_gain = total_gain_bounds(free_cumulative_bounds(boxes[0]),
                                                      free_cumulative_bounds(boxes[full]));
                break;
            case InterpretationMode::predicted_class:
                result.total_gain =
                    difference_bounds(make_bound_inputs(boxes[0], boxes[full], ref_box));
                break;
            case InterpretationMode::certainty:
                result.total_gain =
                    difference_bounds(make_bound_inputs(boxes[full], boxes[0], ref_box));
                break;
        }
    } else {
        const std::size_t samples = static_cast<std::size_t>(config.mc_samples);
        switch (config.mode) {
            case InterpretationMode::distribution:
                result.total_gain =
                    mc_distance_bounds(boxes[0], boxes[full], config.distance, samples, gain_seed);
                break;
            case InterpretationMode::predicted_class:
                result.total_gain = mc_difference_bounds(boxes[0], boxes[full], ref_box,
                                                         config.distance, samples, gain_seed);
                break;
            case InterpretationMode::certainty:
                result.total_gain = mc_difference_bounds(boxes[full], boxes[0], ref_box,
                                                         config.distance, samples, gain_seed);
                break;
        }
    }

    ReductionResult reduction = reachable_reduction(result.raw, result.total_gain);
    result.reduced = std::move(reduction.intervals);
    result.reduction_applied = reduction.applied;
    result.warning = std::move(reduction.warning);
    return result;
}

}  // namespace impshap
