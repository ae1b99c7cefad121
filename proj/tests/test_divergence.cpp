#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>

#include "impshap/divergence.hpp"
#include "impshap/rng.hpp"

using namespace impshap;

namespace {

ProbabilityDistribution random_distribution(Rng& rng, std::size_t c) {
    std::vector<double> values(c);
    for (double& v : values) v = rng.uniform(0.0, 1.0) + 1e-9;
    return make_distribution(values);
}

}  // namespace

TEST_CASE("ks distance basics") {
    const ProbabilityDistribution p = make_distribution({0.2, 0.3, 0.5});
    const ProbabilityDistribution q = make_distribution({0.5, 0.3, 0.2});
    CHECK(ks_distance(p, p) == 0.0);
    CHECK(ks_distance(make_distribution({1.0, 0.0}), make_distribution({0.0, 1.0})) == 1.0);
    // cumulatives (0.2, 0.5) vs (0.5, 0.8): the largest gap is 0.3
    CHECK(ks_distance(p, q) == doctest::Approx(0.3).epsilon(1e-12));

    // brute-force maximum over indices agrees
    double brute = 0.0;
    double cp = 0.0, cq = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        cp += p.probs[i];
        cq += q.probs[i];
        brute = std::max(brute, std::fabs(cp - cq));
    }
    CHECK(ks_distance(p, q) == doctest::Approx(brute).epsilon(1e-15));
}

TEST_CASE("ks distance rejects length mismatch") {
    CHECK_THROWS_AS(ks_distance(make_distribution({0.5, 0.5}), make_distribution({0.3, 0.3, 0.4})),
                    std::invalid_argument);
}

TEST_CASE("ks distance is a bounded metric on random triples") {
    Rng rng(31);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t c = 2 + trial % 5;
        const ProbabilityDistribution p = random_distribution(rng, c);
        const ProbabilityDistribution q = random_distribution(rng, c);
        const ProbabilityDistribution r = random_distribution(rng, c);
        const double pq = ks_distance(p, q);
        const double qp = ks_distance(q, p);
        const double pr = ks_distance(p, r);
        const double rq = ks_distance(r, q);
        CHECK(pq == qp);
        CHECK(pq >= 0.0);
        CHECK(pq <= 1.0);
        CHECK(pq <= pr + rq + 1e-12);
    }
}

TEST_CASE("kl divergence basics") {
    const ProbabilityDistribution p = make_distribution({0.5, 0.5});
    CHECK(kl_divergence(p, p) == 0.0);
    CHECK(kl_divergence(make_distribution({1.0, 0.0}), make_distribution({0.5, 0.5})) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
    // 0.5 log(0.5/0.9) + 0.5 log(0.5/0.1) = log(5/3)
    CHECK(kl_divergence(p, make_distribution({0.9, 0.1})) ==
          doctest::Approx(std::log(5.0 / 3.0)).epsilon(1e-14));
    CHECK(std::isinf(kl_divergence(make_distribution({0.5, 0.5}), make_distribution({1.0, 0.0}))));
}

TEST_CASE("kl divergence is nonnegative, zero only at equality") {
    Rng rng(32);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t c = 2 + trial % 5;
        const ProbabilityDistribution p = random_distribution(rng, c);
        const ProbabilityDistribution q = random_distribution(rng, c);
        const double d = kl_divergence(p, q);
        CHECK(d >= 0.0);
        double max_gap = 0.0;
        for (std::size_t i = 0; i < c; ++i) {
            max_gap = std::max(max_gap, std::fabs(p.probs[i] - q.probs[i]));
        }
        if (d <= 1e-12) CHECK(max_gap <= 1e-5);
        if (max_gap <= 1e-12) CHECK(d <= 1e-12);
    }
}

TEST_CASE("chi squared divergence") {
    const ProbabilityDistribution p = make_distribution({0.5, 0.5});
    CHECK(chi2_divergence(p, p) == 0.0);
    // sum (q - p)^2 / p = 2 * 0.25^2 / 0.5 = 0.25
    CHECK(chi2_divergence(p, make_distribution({0.25, 0.75})) ==
          doctest::Approx(0.25).epsilon(1e-14));
    // 0 * f(0/0) = 0 convention
    CHECK(chi2_divergence(make_distribution({1.0, 0.0}), make_distribution({1.0, 0.0})) == 0.0);
    // support failure
    CHECK(std::isinf(
        chi2_divergence(make_distribution({0.5, 0.5}), make_distribution({1.0, 0.0}))));

    // Csiszar form evaluated term by term as an independent cross-check
    Rng rng(33);
    for (int trial = 0; trial < 500; ++trial) {
        const ProbabilityDistribution a = random_distribution(rng, 3);
        const ProbabilityDistribution b = random_distribution(rng, 3);
        double expected = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            const double u = a.probs[i] / b.probs[i];
            expected += b.probs[i] * (1.0 - u) * (1.0 - u) / u;
        }
        CHECK(chi2_divergence(a, b) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(chi2_divergence(a, b) >= 0.0);
    }
}

TEST_CASE("marginal difference") {
    const ProbabilityDistribution p = make_distribution({0.2, 0.3, 0.5});
    const ProbabilityDistribution q = make_distribution({0.5, 0.3, 0.2});
    // identical first arguments cancel exactly
    CHECK(marginal_difference(p, p, q, DivergenceKind::kolmogorov_smirnov) == 0.0);
    CHECK(marginal_difference(p, p, q, DivergenceKind::kullback_leibler) == 0.0);
    // D(P, Q) - D(Q, Q) = 0.3
    CHECK(marginal_difference(p, q, q, DivergenceKind::kolmogorov_smirnov) ==
          doctest::Approx(0.3).epsilon(1e-12));
    // moving away from the reference scores negative
    const ProbabilityDistribution far = make_distribution({1.0, 0.0, 0.0});
    CHECK(marginal_difference(q, far, q, DivergenceKind::kolmogorov_smirnov) < 0.0);
}
