#include "impshap/divergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace impshap {

namespace {

void require_same_length(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("distribution length mismatch: " +
                                    std::to_string(p.size()) + " vs " +
                                    std::to_string(q.size()));
    }
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

const char* to_string(DivergenceKind kind) {
    switch (kind) {
        case DivergenceKind::kolmogorov_smirnov: return "kolmogorov_smirnov";
        case DivergenceKind::kullback_leibler: return "kullback_leibler";
        case DivergenceKind::chi_squared: return "chi_squared";
    }
    return "unknown";
}

std::optional<DivergenceKind> divergence_from_string(std::string_view name) {
    if (name == "kolmogorov_smirnov" || name == "ks") return DivergenceKind::kolmogorov_smirnov;
    if (name == "kullback_leibler" || name == "kl") return DivergenceKind::kullback_leibler;
    if (name == "chi_squared" || name == "chi2") return DivergenceKind::chi_squared;
    return std::nullopt;
}

double ks_distance(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
    require_same_length(p, q);
    double gap = 0.0;
    double cp = 0.0;
    double cq = 0.0;
    // last index excluded: both cumulatives end at 1
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        cp += p.probs[i];
        cq += q.probs[i];
        gap = std::max(gap, std::fabs(cp - cq));
    }
    return std::min(gap, 1.0);
}

double kl_divergence(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
    require_same_length(p, q);
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.probs[i];
        if (pi <= 0.0) continue;
        const double qi = q.probs[i];
        if (qi <= 0.0) return kInf;
        total += pi * std::log(pi / qi);
    }
    return std::max(total, 0.0);
}

double chi2_divergence(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
    require_same_length(p, q);
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.probs[i];
        const double qi = q.probs[i];
        if (pi <= 0.0) {
            if (qi <= 0.0) continue;  // 0 * f(0/0) = 0
            return kInf;
        }
        if (qi <= 0.0) return kInf;  // support condition: Q must cover P
        const double diff = qi - pi;
        total += diff * diff / pi;
    }
    return total;
}

double divergence(const ProbabilityDistribution& p, const ProbabilityDistribution& q,
                  DivergenceKind kind) {
    switch (kind) {
        case DivergenceKind::kolmogorov_smirnov: return ks_distance(p, q);
        case DivergenceKind::kullback_leibler: return kl_divergence(p, q);
        case DivergenceKind::chi_squared: return chi2_divergence(p, q);
    }
    throw std::invalid_argument("unknown divergence kind");
}

double marginal_difference(const ProbabilityDistribution& p, const ProbabilityDistribution& r,
                           const ProbabilityDistribution& q, DivergenceKind kind) {
    return divergence(p, q, kind) - divergence(r, q, kind);
}

}  // namespace impshap
