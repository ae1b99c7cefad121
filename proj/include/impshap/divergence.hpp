#pragma once

#include <optional>
#include <string_view>

#include "impshap/types.hpp"

namespace impshap {

enum class DivergenceKind {
    kolmogorov_smirnov,
    kullback_leibler,
    chi_squared,
};

const char* to_string(DivergenceKind kind);
std::optional<DivergenceKind> divergence_from_string(std::string_view name);

// max over i = 1..C-1 of |pi_i - alpha_i| between the cumulatives. Symmetric,
// bounded by 1, never infinite.
double ks_distance(const ProbabilityDistribution& p, const ProbabilityDistribution& q);

// sum p_i log(p_i / q_i), natural log. Terms with p_i = 0 contribute 0;
// returns +infinity when some p_i > 0 has q_i = 0.
double kl_divergence(const ProbabilityDistribution& p, const ProbabilityDistribution& q);

// Csiszar form with f(u) = (1 - u)^2 / u, i.e. sum (q_i - p_i)^2 / p_i with
// the 0 * f(0/0) = 0 convention. +infinity when the support condition fails.
double chi2_divergence(const ProbabilityDistribution& p, const ProbabilityDistribution& q);

double divergence(const ProbabilityDistribution& p, const ProbabilityDistribution& q,
                  DivergenceKind kind);

// D(P, Q) - D(R, Q). May be +/-infinity when one side diverges, NaN only
// when both sides are infinite.
double marginal_difference(const ProbabilityDistribution& p, const ProbabilityDistribution& r,
                           const ProbabilityDistribution& q, DivergenceKind kind);

}  // namespace impshap
