#include "fraclab/stable.hpp"
#include "fraclab/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fraclab;

TEST_CASE("sas: alpha=2 draws are Gaussian with variance 2 sigma^2") {
    const double sigma = 0.7;
    auto x = sample_sas({2.0, sigma}, 1u << 20, Seed{101, 0});
    double var = variance(x);
    CHECK(var == doctest::Approx(2.0 * sigma * sigma).epsilon(0.02));
}

TEST_CASE("sas: alpha=1 is Cauchy (median and tail oracle)") {
    auto x = sample_sas({1.0, 1.0}, 1u << 20, Seed{102, 0});
    CHECK(std::fabs(quantile(x, 0.5)) < 0.01);
    double tail = 0;
    for (double v : x) tail += std::fabs(v) > 10.0 ? 1.0 : 0.0;
    tail /= x.size();
    const double want = 1.0 - (2.0 / std::numbers::pi) * std::atan(10.0);  // 0.06345
    CHECK(tail == doctest::Approx(want).epsilon(0.05));
}

TEST_CASE("sas: contract errors") {
    CHECK_THROWS_AS(sample_sas({2.0, 1.0}, 0, Seed{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sample_sas({0.0, 1.0}, 10, Seed{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sample_sas({2.5, 1.0}, 10, Seed{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sample_sas({1.5, 0.0}, 10, Seed{1, 0}), std::invalid_argument);
}

TEST_CASE("sas: symmetry within the binomial band") {
    auto x = sample_sas({1.5, 1.0}, 100000, Seed{103, 0});
    double signs = 0;
    for (double v : x) signs += v > 0 ? 1.0 : 0.0;
    double p = signs / x.size();
    CHECK(std::fabs(p - 0.5) < 3.0 * 0.5 / std::sqrt(static_cast<double>(x.size())));
}

TEST_CASE("sas: scaling property via two-sample KS at level 0.01") {
    const double c = 2.3;
    auto a = sample_sas({1.5, c * 1.0}, 100000, Seed{104, 0});
    auto b = sample_sas({1.5, 1.0}, 100000, Seed{105, 0});
    for (double& v : b) v *= c;
    CHECK(ks_two_sample(a, b, 0.01).pass);
}

TEST_CASE("sas: bit-identical under the same seed") {
    auto a = sample_sas({1.3, 1.0}, 1000, Seed{106, 5});
    auto b = sample_sas({1.3, 1.0}, 1000, Seed{106, 5});
    CHECK(a == b);
    auto cdiff = sample_sas({1.3, 1.0}, 1000, Seed{106, 6});
    CHECK(a != cdiff);
}

TEST_CASE("lepage terms: arrivals, phases, marks") {
    auto t = lepage_terms(1.5, 200, Seed{107, 0});
    REQUIRE(t.gammas.size() == 200);
    for (std::size_t k = 1; k < t.gammas.size(); ++k) CHECK(t.gammas[k] > t.gammas[k - 1]);
    for (double p : t.phases) {
        CHECK(p >= 0.0);
        CHECK(p < 2.0 * std::numbers::pi);
    }
    CHECK(t.marks.size() == 400);
    CHECK_THROWS_AS(lepage_terms(1.5, 10, Seed{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(lepage_terms(2.0, 200, Seed{1, 0}), std::invalid_argument);
}

TEST_CASE("lepage terms: first arrival is unit-mean exponential") {
    double acc = 0;
    const int reps = 10000;
    for (int i = 0; i < reps; ++i)
        acc += lepage_terms(1.5, 100, Seed{108, static_cast<std::uint64_t>(i)}).gammas[0];
    CHECK(acc / reps == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("poisson cloud: count and marks") {
    FrequencyWindow w{1.0, 2.0};  // |xi| in [1,2], Lebesgue length 2
    double acc = 0;
    const int reps = 10000;
    for (int i = 0; i < reps; ++i) {
        auto pts = poisson_cloud(w, 1.0, Seed{109, static_cast<std::uint64_t>(i)});
        acc += static_cast<double>(pts.size());
        if (i < 50)
            for (const auto& p : pts) {
                CHECK(std::abs(p.mark) == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(std::fabs(p.xi) >= 1.0);
                CHECK(std::fabs(p.xi) <= 2.0);
            }
    }
    double mean_count = acc / reps;
    // Poisson(2): se of the mean over 10^4 reps is sqrt(2/10^4)
    CHECK(std::fabs(mean_count - 2.0) < 3.0 * std::sqrt(2.0 / reps));
    CHECK_THROWS_AS(poisson_cloud(FrequencyWindow{2.0, 2.0}, 1.0, Seed{1, 0}),
                    std::invalid_argument);
}
