#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "bandopt/confidence.hpp"
#include "bandopt/dense.hpp"
#include "bandopt/rng.hpp"
#include "bandopt/running_estimate.hpp"

using namespace bandopt;

TEST_CASE("sample_sq_coord basics") {
    const std::vector<double> x{3.0, 4.0};
    const std::vector<double> y{0.0, 0.0};
    REQUIRE(sample_sq_coord(x, x, 0) == 0.0);
    REQUIRE(sample_sq_coord(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 0.0}, 0) ==
            1.0);
    REQUIRE((sample_sq_coord(x, y, 0) + sample_sq_coord(x, y, 1)) / 2.0 == 12.5);
    REQUIRE_THROWS_AS(sample_sq_coord(x, y, 2), std::out_of_range);
    REQUIRE_THROWS_AS(sample_sq_coord(x, y, -1), std::out_of_range);
}

TEST_CASE("exact_mean basics") {
    const std::vector<double> x{3.0, 4.0};
    const std::vector<double> y{0.0, 0.0};
    REQUIRE(exact_mean(x, x) == 0.0);
    REQUIRE(exact_mean(x, y) == 12.5);
    REQUIRE(exact_mean(std::vector<double>{5.0}, std::vector<double>{2.0}) == 9.0);
    REQUIRE_THROWS_AS(exact_mean(x, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("running estimate matches closed forms") {
    RunningEstimate est;
    est.add(5.0);
    REQUIRE(est.mean() == 5.0);
    REQUIRE(est.count() == 1);
    RunningEstimate two;
    two.add(2.0);
    two.add(4.0);
    REQUIRE(two.mean() == 3.0);
}

TEST_CASE("streamed mean and sigma match batch recomputation within 1e-9") {
    Rng rng(42);
    for (int rep = 0; rep < 5; ++rep) {
        RunningEstimate est;
        std::vector<double> samples;
        for (int i = 0; i < 1000; ++i) {
            const double v = rng.uniform01();
            samples.push_back(v);
            est.add(v);
        }
        double mean = 0.0;
        for (const double v : samples) mean += v;
        mean /= static_cast<double>(samples.size());
        double m2 = 0.0;
        for (const double v : samples) m2 += (v - mean) * (v - mean);
        const double sigma = std::sqrt(m2 / static_cast<double>(samples.size() - 1));
        REQUIRE(est.mean() == Catch::Approx(mean).epsilon(1e-9));
        REQUIRE(est.sigma_hat() == Catch::Approx(sigma).epsilon(1e-9));
    }
}

TEST_CASE("unbiasedness: enumerating all coordinates reproduces exact_mean") {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const std::int64_t d = 1 + rng.below(16);
        std::vector<double> x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
        for (auto& v : x) v = rng.normal();
        for (auto& v : y) v = rng.normal();
        double sum = 0.0;
        for (std::int64_t t = 0; t < d; ++t) sum += sample_sq_coord(x, y, t);
        REQUIRE(sum / static_cast<double>(d) == exact_mean(x, y));
    }
}

TEST_CASE("confidence half-width formula and scaling") {
    const double delta = 2.0 / std::exp(2.0);  // log(2/delta) = 2
    REQUIRE(ci_half_width(1.0, delta, 4) == Catch::Approx(1.0).margin(1e-12));
    // quadrupling the pulls halves the width
    REQUIRE(ci_half_width(1.0, delta, 16) == Catch::Approx(0.5).margin(1e-12));

    RunningEstimate est;
    const double a = std::sqrt(3.0) / 2.0;
    est.add(-a);
    est.add(a);
    est.add(-a);
    est.add(a);  // sigma_hat = 1 at l = 4
    const ConfidenceBound cb = confidence(est, delta, false);
    REQUIRE(cb.width == Catch::Approx(2.0).margin(1e-9));
    REQUIRE(cb.lcb <= est.mean());
    REQUIRE(cb.ucb >= est.mean());

    const ConfidenceBound ex = confidence(est, delta, true);
    REQUIRE(ex.width == 0.0);
    REQUIRE(ex.lcb == est.mean());

    RunningEstimate empty;
    REQUIRE_THROWS_AS(confidence(empty, 0.01, false), std::logic_error);
}

TEST_CASE("coverage of the sub-gaussian interval with known sigma") {
    // gaussian samples, fixed true sigma, delta = 0.05: the interval must
    // contain the true mean in at least (1-delta) of trials (3 binomial SE)
    const double delta = 0.05;
    const double sigma = 1.0;
    const int trials = 10000;
    const int per_trial = 16;
    Rng rng(2024);
    int covered = 0;
    for (int t = 0; t < trials; ++t) {
        double sum = 0.0;
        for (int i = 0; i < per_trial; ++i) sum += 0.5 + sigma * rng.normal();
        const double mean = sum / per_trial;
        const double c = ci_half_width(sigma, delta, per_trial);
        if (std::abs(mean - 0.5) <= c) ++covered;
    }
    const double rate = static_cast<double>(covered) / trials;
    const double tol = 3.0 * std::sqrt(delta * (1 - delta) / trials);
    REQUIRE(rate >= 1.0 - delta - tol);
}

TEST_CASE("delta_confidence reduces to confidence for the identity wrap") {
    RunningEstimate est;
    est.add(3.0);
    est.add(5.0);
    est.add(4.0);
    const SmoothWrap identity{[](double v) { return v; }, [](double) { return 1.0; }, 1.0, 0.0};
    const ConfidenceBound plain = confidence(est, 0.01, false);
    const ConfidenceBound wrapped = delta_confidence(est, identity, 0.01, false);
    REQUIRE(wrapped.lcb == Catch::Approx(plain.lcb).margin(1e-12));
    REQUIRE(wrapped.ucb == Catch::Approx(plain.ucb).margin(1e-12));
}

TEST_CASE("delta_confidence on sqrt matches the hand-computed half width") {
    // mean 4, C = 0.1, kappa = 1/32: half = 0.1/4 + (1/32)(0.1^2)/2
    RunningEstimate est;
    // two samples straddling 4 so that mean = 4 and C(l=2) = 0.1:
    // C = sigma * sqrt(2 log(2/delta) / 2) with delta = 2/e^2 gives
    // C = sigma * sqrt(2); choose sigma via samples 4 +/- s, sigma_hat = s*sqrt(2)
    const double delta = 2.0 / std::exp(2.0);
    const double s = 0.1 / 2.0;  // sigma_hat = s*sqrt(2), C = s*sqrt(2)*sqrt(2) = 0.1
    est.add(4.0 - s);
    est.add(4.0 + s);
    const SmoothWrap root{[](double v) { return std::sqrt(v); },
                          [](double v) { return 0.5 / std::sqrt(v); }, 0.25, 1.0 / 32.0};
    const ConfidenceBound cb = delta_confidence(est, root, delta, false);
    const double expected_half = 0.1 * 0.25 + (1.0 / 32.0) * 0.01 / 2.0;
    REQUIRE(cb.width == Catch::Approx(2.0 * expected_half).margin(1e-9));
    REQUIRE((cb.ucb + cb.lcb) / 2.0 == Catch::Approx(2.0).margin(1e-12));

    const ConfidenceBound ex = delta_confidence(est, root, delta, true);
    REQUIRE(ex.width == 0.0);
    REQUIRE(ex.lcb == 2.0);
}

TEST_CASE("strictly increasing transforms preserve the argmin of exact means") {
    Rng rng(99);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> means(8);
        for (auto& m : means) m = 1.0 + 10.0 * rng.uniform01();
        std::int64_t argmin_raw = 0, argmin_g = 0;
        for (std::int64_t i = 1; i < 8; ++i) {
            if (means[static_cast<std::size_t>(i)] < means[static_cast<std::size_t>(argmin_raw)])
                argmin_raw = i;
            if (std::sqrt(means[static_cast<std::size_t>(i)]) <
                std::sqrt(means[static_cast<std::size_t>(argmin_g)]))
                argmin_g = i;
        }
        REQUIRE(argmin_raw == argmin_g);
    }
}

TEST_CASE("normal quantile round-trips the normal CDF") {
    const double z = normal_quantile(0.975);
    REQUIRE(z == Catch::Approx(1.959963984540054).margin(1e-9));
    REQUIRE(normal_quantile(0.5) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(normal_quantile(0.005) == Catch::Approx(-2.5758293035489004).margin(1e-9));
    REQUIRE_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
}
