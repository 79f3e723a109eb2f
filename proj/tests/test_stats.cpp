#include "fraclab/stats.hpp"
#include "fraclab/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace fraclab;

TEST_CASE("linear fit recovers an exact line") {
    std::vector<double> x = {1, 2, 3, 4, 5}, y;
    for (double v : x) y.push_back(2.5 * v - 1.0);
    auto f = linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(f.slope_se == doctest::Approx(0.0));
}

TEST_CASE("linear fit rejects degenerate input") {
    std::vector<double> one = {1.0};
    CHECK_THROWS_AS(linear_fit(one, one), std::invalid_argument);
}

TEST_CASE("exponent fit: clean power law is untouched") {
    std::vector<double> x, y;
    for (int k = 2; k <= 8; ++k) {
        x.push_back(k * std::log(2.0));
        y.push_back(1.7 * k * std::log(2.0) + 0.3);
    }
    auto f = fit_exponent(x, y, true, 2.5);
    CHECK(f.value == doctest::Approx(1.7).epsilon(1e-6));
    CHECK_FALSE(f.corrected_used);
}

TEST_CASE("exponent fit: log-deficient curve is recovered") {
    // y = 2x - log(x): the plain slope underestimates, the corrected fit does not
    std::vector<double> x, y;
    for (int k = 2; k <= 9; ++k) {
        double xv = k * std::log(2.0);
        x.push_back(xv);
        y.push_back(2.0 * xv - std::log(xv));
    }
    auto f = fit_exponent(x, y, true, 2.5);
    CHECK(f.plain < 1.9);
    CHECK(f.value == doctest::Approx(2.0).epsilon(0.01));
    CHECK(f.corrected_used);
}

TEST_CASE("envelopes bracket a noisy curve") {
    std::vector<double> x, y;
    for (int k = 0; k < 12; ++k) {
        x.push_back(k);
        y.push_back(0.8 * k + ((k % 2) ? 0.3 : -0.3));
    }
    double lo = envelope_slope(x, y, false);
    double hi = envelope_slope(x, y, true);
    CHECK(lo <= 0.8);
    CHECK(hi >= 0.8);
    auto [cl, ch] = extreme_chord_slopes(x, y, 3.0);
    CHECK(cl <= 0.8);
    CHECK(ch >= 0.8);
}

TEST_CASE("quantiles are deterministic order statistics") {
    std::vector<double> v = {5, 1, 4, 2, 3};
    CHECK(quantile(v, 0.0) == 1);
    CHECK(quantile(v, 1.0) == 5);
    CHECK(quantile(v, 0.5) == 3);
}

TEST_CASE("two-sample KS accepts same law and rejects a shift") {
    RngStream rng(Seed{42, 0});
    std::vector<double> a(4000), b(4000), c(4000);
    for (auto& v : a) v = rng.gauss();
    for (auto& v : b) v = rng.gauss();
    for (auto& v : c) v = rng.gauss() + 0.2;
    CHECK(ks_two_sample(a, b, 0.01).pass);
    CHECK_FALSE(ks_two_sample(a, c, 0.01).pass);
}

TEST_CASE("one-sample KS against the normal cdf") {
    RngStream rng(Seed{43, 0});
    std::vector<double> a(4000);
    for (auto& v : a) v = rng.gauss();
    CHECK(ks_one_sample(a, &normal_cdf, 0.01).pass);
}
