#include "impshap/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "impshap/rng.hpp"

namespace impshap {

namespace {

std::vector<double> simplex_weights(Rng& rng, std::size_t k) {
    std::vector<double> w(k);
    double total = 0.0;
    for (double& v : w) {
        v = rng.exponential();
        total += v;
    }
    for (double& v : w) v /= total;
    return w;
}

ProbabilityDistribution mix(const std::vector<ProbabilityDistribution>& extremes,
                            const std::vector<double>& weights) {
    const std::size_t c = extremes.front().size();
    std::vector<double> probs(c, 0.0);
    for (std::size_t k = 0; k < extremes.size(); ++k) {
        const double w = weights[k];
        for (std::size_t i = 0; i < c; ++i) probs[i] += w * extremes[k].probs[i];
    }
    return make_distribution(std::move(probs));
}

class BoundTracker {
public:
    explicit BoundTracker(McStats* stats) : stats_(stats) {}

    void feed(double value) {
        if (std::isnan(value)) {
            if (stats_) ++stats_->indeterminate_skipped;
            return;
        }
        if (stats_) {
            ++stats_->evaluated;
            if (std::isinf(value)) ++stats_->infinite_differences;
        }
        lo_ = std::min(lo_, value);
        hi_ = std::max(hi_, value);
        seen_ = true;
    }

    Interval interval() const {
        if (!seen_) throw std::runtime_error("no Monte-Carlo triple could be evaluated");
        return Interval{lo_, hi_};
    }

private:
    McStats* stats_;
    double lo_ = std::numeric_limits<double>::infinity();
    double hi_ = -std::numeric_limits<double>::infinity();
    bool seen_ = false;
};

}  // namespace

std::vector<SimplexSample> sample_simplex(std::size_t k, std::size_t count, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("simplex dimension must be at least 2");
    if (count < 1) throw std::invalid_argument("sample count must be positive");
    Rng rng(seed);
    std::vector<SimplexSample> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        out.push_back(SimplexSample{simplex_weights(rng, k)});
    }
    return out;
}

std::vector<ProbabilityDistribution> sample_credal(const CredalBox& box, std::size_t count,
                                                   std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample count must be positive");
    const std::vector<ProbabilityDistribution> extremes = extreme_points(box);
    Rng rng(seed);
    std::vector<ProbabilityDistribution> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        out.push_back(mix(extremes, simplex_weights(rng, box.size())));
    }
    return out;
}

Interval mc_difference_bounds(const CredalBox& p_box, const CredalBox& r_box,
                              const CredalBox& q_box, DivergenceKind kind, std::size_t count,
                              std::uint64_t seed, McStats* stats) {
    if (p_box.size() != r_box.size() || p_box.size() != q_box.size()) {
        throw std::invalid_argument("credal boxes disagree on class count");
    }
    if (count < 1) throw std::invalid_argument("sample count must be positive");

    const std::size_t c = p_box.size();
    const auto ext_p = extreme_points(p_box);
    const auto ext_r = extreme_points(r_box);
    const auto ext_q = extreme_points(q_box);

    BoundTracker tracker(stats);
    std::size_t used = 0;
    const auto feed = [&](const ProbabilityDistribution& p, const ProbabilityDistribution& r,
                          const ProbabilityDistribution& q) {
        tracker.feed(marginal_difference(p, r, q, kind));
        ++used;
    };

    // deterministic preamble: centers, the diagonal when feasible, extremes
    feed(p_box.center, r_box.center, q_box.center);
    if (used < count && r_box.contains(p_box.center)) {
        feed(p_box.center, p_box.center, q_box.center);
    }
    for (std::size_t a = 0; a < c && used < count; ++a) {
        for (std::size_t b = 0; b < c && used < count; ++b) {
            for (std::size_t d = 0; d < c && used < count; ++d) {
                feed(ext_p[a], ext_r[b], ext_q[d]);
            }
        }
    }

    Rng rng(seed);
    while (used < count) {
        const ProbabilityDistribution p = mix(ext_p, simplex_weights(rng, c));
        const ProbabilityDistribution r = mix(ext_r, simplex_weights(rng, c));
        const ProbabilityDistribution q = mix(ext_q, simplex_weights(rng, c));
        feed(p, r, q);
    }
    return tracker.interval();
}

Interval mc_distance_bounds(const CredalBox& p_box, const CredalBox& q_box, DivergenceKind kind,
                            std::size_t count, std::uint64_t seed, McStats* stats) {
    if (p_box.size() != q_box.size()) {
        throw std::invalid_argument("credal boxes disagree on class count");
    }
    if (count < 1) throw std::invalid_argument("sample count must be positive");

    const std::size_t c = p_box.size();
    const auto ext_p = extreme_points(p_box);
    const auto ext_q = extreme_points(q_box);

    BoundTracker tracker(stats);
    std::size_t used = 0;
    const auto feed = [&](const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
        tracker.feed(divergence(p, q, kind));
        ++used;
    };

    feed(p_box.center, q_box.center);
    for (std::size_t a = 0; a < c && used < count; ++a) {
        for (std::size_t b = 0; b < c && used < count; ++b) {
            feed(ext_p[a], ext_q[b]);
        }
    }
    Rng rng(seed);
    while (used < count) {
        const ProbabilityDistribution p = mix(ext_p, simplex_weights(rng, c));
        const ProbabilityDistribution q = mix(ext_q, simplex_weights(rng, c));
        feed(p, q);
    }
    return tracker.interval();
}

}  // namespace impshap
