#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "impshap/divergence.hpp"
#include "impshap/ks_bounds.hpp"
#include "impshap/montecarlo.hpp"
#include "impshap/rng.hpp"
#include "oracles.hpp"

using namespace impshap;

TEST_CASE("degenerate boxes reproduce the precise difference") {
    Rng rng(51);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t c = 2 + trial % 4;
        const ProbabilityDistribution p = oracles::random_distribution(rng, c);
        const ProbabilityDistribution r = oracles::random_distribution(rng, c);
        const ProbabilityDistribution q = oracles::random_distribution(rng, c);
        const BoundProblemInputs in = make_bound_inputs(
            build_credal_box(p, 0.0), build_credal_box(r, 0.0), build_credal_box(q, 0.0));
        const double exact = ks_distance(p, q) - ks_distance(r, q);
        CHECK(lower_difference_bound(in) == doctest::Approx(exact).epsilon(1e-12));
        CHECK(upper_difference_bound(in) == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("sharing a box between P and R keeps the lower bound nonpositive") {
    Rng rng(52);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t c = 2 + trial % 4;
        const CredalBox shared =
            build_credal_box(oracles::random_distribution(rng, c), rng.uniform(0.01, 0.5));
        const CredalBox q =
            build_credal_box(oracles::random_distribution(rng, c), rng.uniform(0.01, 0.5));
        const BoundProblemInputs in = make_bound_inputs(shared, shared, q);
        CHECK(lower_difference_bound(in) <= 1e-10);
        CHECK(upper_difference_bound(in) >= -1e-10);
    }
}

TEST_CASE("three-class boxes agree with the grid oracle") {
    const BoundProblemInputs in{
        {make_interval(0.1, 0.3), make_interval(0.5, 0.7)},
        {make_interval(0.2, 0.4), make_interval(0.6, 0.8)},
        {make_interval(0.15, 0.25), make_interval(0.55, 0.65)},
    };
    const double lower = lower_difference_bound(in);
    const double upper = upper_difference_bound(in);
    const oracles::GridBounds grid = oracles::grid_difference_bounds(in, 0.005);
    CHECK(lower <= grid.lower + 1e-9);
    CHECK(std::fabs(lower - grid.lower) <= 0.01);
    CHECK(upper >= grid.upper - 1e-9);
    CHECK(std::fabs(upper - grid.upper) <= 0.01);
}

TEST_CASE("bounds bracket the center difference and sampled triples") {
    Rng rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t c = 2 + trial % 3;
        const oracles::BoxTriple boxes =
            oracles::random_box_triple(rng, c, rng.uniform(0.02, 0.3));
        const BoundProblemInputs in = make_bound_inputs(boxes.p, boxes.r, boxes.q);
        const double lower = lower_difference_bound(in);
        const double upper = upper_difference_bound(in);
        CHECK(upper >= lower - 1e-12);

        const double center_diff = ks_distance(boxes.p.center, boxes.q.center) -
                                   ks_distance(boxes.r.center, boxes.q.center);
        CHECK(center_diff >= lower - 1e-9);
        CHECK(center_diff <= upper + 1e-9);

        const std::size_t samples = 500;
        const auto ps = sample_credal(boxes.p, samples, rng.next_u64());
        const auto rs = sample_credal(boxes.r, samples, rng.next_u64());
        const auto qs = sample_credal(boxes.q, samples, rng.next_u64());
        for (std::size_t s = 0; s < samples; ++s) {
            const double diff = ks_distance(ps[s], qs[s]) - ks_distance(rs[s], qs[s]);
            CHECK(diff >= lower - 1e-8);
            CHECK(diff <= upper + 1e-8);
        }
    }
}

TEST_CASE("growing epsilon never shrinks the difference bounds") {
    Rng rng(54);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t c = 2 + trial % 3;
        const ProbabilityDistribution p = oracles::random_distribution(rng, c);
        const ProbabilityDistribution r = oracles::random_distribution(rng, c);
        const ProbabilityDistribution q = oracles::random_distribution(rng, c);
        double previous_lower = 1e9;
        double previous_upper = -1e9;
        bool first = true;
        for (const double eps : {0.0, 0.05, 0.1, 0.2, 0.5}) {
            const BoundProblemInputs in =
                make_bound_inputs(build_credal_box(p, eps), build_credal_box(r, eps),
                                  build_credal_box(q, eps));
            const double lower = lower_difference_bound(in);
            const double upper = upper_difference_bound(in);
            if (!first) {
                CHECK(lower <= previous_lower + 1e-9);
                CHECK(upper >= previous_upper - 1e-9);
            }
            previous_lower = lower;
            previous_upper = upper;
            first = false;
        }
    }
}

TEST_CASE("binary closed form: degenerate intervals give zero") {
    const Interval point = make_interval(0.4, 0.4);
    const Interval bounds = binary_difference_bounds(point, point, point);
    CHECK(bounds.lo == 0.0);
    CHECK(bounds.hi == 0.0);
}

TEST_CASE("binary closed form: separated boxes") {
    // values frozen from the fine 1-D scan below: the reference interval sits
    // above both boxes, so L = tau_lo - pi_hi and U = pi_hi - tau_lo
    const Interval bounds = binary_difference_bounds(make_interval(0.1, 0.2),
                                                     make_interval(0.1, 0.2),
                                                     make_interval(0.5, 0.6));
    CHECK(bounds.lo == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(bounds.hi == doctest::Approx(0.1).epsilon(1e-12));
}

namespace {

// 1-D scan over alpha at the given step; pi and tau are optimized exactly
Interval scan_binary(const Interval& pi, const Interval& tau, const Interval& alpha,
                     double step) {
    double lo = 1e9, hi = -1e9;
    for (double a = alpha.lo;; a += step) {
        a = std::min(a, alpha.hi);
        const double near_pi = a < pi.lo ? pi.lo - a : (a > pi.hi ? a - pi.hi : 0.0);
        const double far_pi = std::max(pi.hi - a, a - pi.lo);
        const double near_tau = a < tau.lo ? tau.lo - a : (a > tau.hi ? a - tau.hi : 0.0);
        const double far_tau = std::max(tau.hi - a, a - tau.lo);
        lo = std::min(lo, near_pi - far_tau);
        hi = std::max(hi, far_pi - near_tau);
        if (a >= alpha.hi) break;
    }
    return Interval{lo, hi};
}

}  // namespace

TEST_CASE("binary closed form matches a fine 1-D scan") {
    Rng rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        const auto random_interval = [&]() {
            const double a = rng.uniform(0.0, 1.0);
            const double b = rng.uniform(0.0, 1.0);
            return make_interval(std::min(a, b), std::max(a, b));
        };
        const Interval pi = random_interval();
        const Interval tau = random_interval();
        const Interval alpha = random_interval();
        const Interval closed = binary_difference_bounds(pi, tau, alpha);
        const Interval scanned = scan_binary(pi, tau, alpha, 1e-4);
        CHECK(closed.lo <= scanned.lo + 1e-12);
        CHECK(closed.hi >= scanned.hi - 1e-12);
        CHECK(std::fabs(closed.lo - scanned.lo) <= 3e-4);
        CHECK(std::fabs(closed.hi - scanned.hi) <= 3e-4);
    }
}

TEST_CASE("binary closed form equals the LP route") {
    Rng rng(56);
    for (int trial = 0; trial < 1000; ++trial) {
        const oracles::BoxTriple boxes = oracles::random_box_triple(rng, 2, rng.uniform(0.0, 1.0));
        const BoundProblemInputs in = make_bound_inputs(boxes.p, boxes.r, boxes.q);
        const Interval closed = binary_difference_bounds(in.pi[0], in.tau[0], in.alpha[0]);
        CHECK(closed.lo == doctest::Approx(lower_difference_bound(in)).epsilon(1e-9));
        CHECK(closed.hi == doctest::Approx(upper_difference_bound(in)).epsilon(1e-9));
    }
}

TEST_CASE("binary closed form rejects malformed intervals") {
    CHECK_THROWS_AS(binary_difference_bounds(make_interval(0.1, 0.2), make_interval(0.1, 0.2),
                                             make_interval(-0.5, 0.6)),
                    std::invalid_argument);
}

TEST_CASE("total gain bounds") {
    Rng rng(57);

    SUBCASE("degenerate boxes give the exact distance") {
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t c = 2 + trial % 4;
            const ProbabilityDistribution p = oracles::random_distribution(rng, c);
            const ProbabilityDistribution q = oracles::random_distribution(rng, c);
            const Interval gain =
                total_gain_bounds(free_cumulative_bounds(build_credal_box(p, 0.0)),
                                  free_cumulative_bounds(build_credal_box(q, 0.0)));
            const double exact = ks_distance(p, q);
            CHECK(gain.lo == doctest::Approx(exact).epsilon(1e-12));
            CHECK(gain.hi == doctest::Approx(exact).epsilon(1e-12));
        }
    }

    SUBCASE("identical boxes have zero lower bound") {
        for (int trial = 0; trial < 30; ++trial) {
            const CredalBox box = build_credal_box(oracles::random_distribution(rng, 3),
                                                   rng.uniform(0.01, 0.5));
            const Interval gain = total_gain_bounds(free_cumulative_bounds(box),
                                                    free_cumulative_bounds(box));
            CHECK(gain.lo <= 1e-10);
        }
    }

    SUBCASE("three-class boxes agree with the grid oracle") {
        for (int trial = 0; trial < 20; ++trial) {
            const CredalBox p = build_credal_box(oracles::random_distribution(rng, 3),
                                                 rng.uniform(0.02, 0.3));
            const CredalBox q = build_credal_box(oracles::random_distribution(rng, 3),
                                                 rng.uniform(0.02, 0.3));
            const auto pi = free_cumulative_bounds(p);
            const auto alpha = free_cumulative_bounds(q);
            const Interval gain = total_gain_bounds(pi, alpha);
            CHECK(gain.lo >= 0.0);
            CHECK(gain.hi <= 1.0);
            CHECK(gain.lo <= gain.hi);

            const double grid_lower = oracles::grid_gain_lower(pi, alpha, 0.005);
            CHECK(gain.lo <= grid_lower + 1e-9);
            CHECK(std::fabs(gain.lo - grid_lower) <= 0.01);

            // the closed-form upper bound equals the farthest monotone pair
            const double grid_upper = oracles::grid_gain_upper(pi, alpha, 0.005);
            CHECK(gain.hi >= grid_upper - 1e-9);
            CHECK(std::fabs(gain.hi - grid_upper) <= 0.01);
        }
    }
}

TEST_CASE("bound inputs are validated") {
    CHECK_THROWS_AS(lower_difference_bound(BoundProblemInputs{{}, {}, {}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(lower_difference_bound(BoundProblemInputs{{make_interval(0.0, 0.5)},
                                                              {make_interval(0.0, 0.5)},
                                                              {}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(upper_difference_bound(BoundProblemInputs{{make_interval(0.0, 1.5)},
                                                              {make_interval(0.0, 0.5)},
                                                              {make_interval(0.0, 0.5)}}),
                    std::invalid_argument);
}
