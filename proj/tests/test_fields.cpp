#include "fraclab/fields.hpp"
#include "fraclab/stats.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <cmath>

using namespace fraclab;

namespace {

FieldSpec spec_of(Law law, double H, double alpha, double kappa, int d, std::size_t n) {
    FieldSpec s;
    s.law = law;
    s.H = H;
    s.alpha = alpha;
    s.kappa = kappa;
    s.d = d;
    s.grid_n = n;
    return s;
}

}  // namespace

TEST_CASE("fbm: starts at zero and is deterministic per seed") {
    auto a = simulate_fbm(0.6, 256, Seed{201, 0});
    auto b = simulate_fbm(0.6, 256, Seed{201, 0});
    CHECK(a.values[0] == 0.0);
    CHECK(a.values == b.values);
    auto c = simulate_fbm(0.6, 256, Seed{201, 1});
    CHECK(a.values != c.values);
}

TEST_CASE("fbm: Brownian covariance E[X(1)X(1/2)] = 1/2") {
    const int reps = 10000;
    double acc = 0;
    for (int i = 0; i < reps; ++i) {
        auto p = simulate_fbm(0.5, 256, Seed{202, static_cast<std::uint64_t>(i)});
        acc += p.values[128] * p.values[256];
    }
    CHECK(acc / reps == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("fbm: variance follows t^{2H} for H = 0.7") {
    const int reps = 10000;
    std::vector<double> v(3, 0.0);
    const std::size_t idx[3] = {64, 128, 256};
    for (int i = 0; i < reps; ++i) {
        auto p = simulate_fbm(0.7, 256, Seed{203, static_cast<std::uint64_t>(i)});
        for (int k = 0; k < 3; ++k) v[k] += p.values[idx[k]] * p.values[idx[k]];
    }
    for (int k = 0; k < 3; ++k) {
        double t = idx[k] / 256.0;
        CHECK(v[k] / reps == doctest::Approx(std::pow(t, 1.4)).epsilon(0.05));
    }
}

TEST_CASE("fbm: parameter contract") {
    CHECK_THROWS_AS(simulate_fbm(0.5, 100, Seed{1, 0}), std::invalid_argument);   // not a power of two
    CHECK_THROWS_AS(simulate_fbm(0.5, 128, Seed{1, 0}), std::invalid_argument);   // below 2^8
    CHECK_THROWS_AS(simulate_fbm(1.2, 256, Seed{1, 0}), std::invalid_argument);
}

TEST_CASE("lfsm: alpha=2 marginal is Gaussian (KS at level 0.01)") {
    const int reps = 2000;
    std::vector<double> x(reps);
    for (int i = 0; i < reps; ++i)
        x[i] = simulate_lfsm(2.0, 0.75, 512, Seed{204, static_cast<std::uint64_t>(i)}).values[512];
    double sd = std::sqrt(variance(x));
    for (double& v : x) v /= sd;
    CHECK(ks_one_sample(x, &normal_cdf, 0.01).pass);
}

TEST_CASE("lfsm: starts at zero; rejects alpha*H <= 1 citing unboundedness") {
    auto p = simulate_lfsm(1.5, 0.8, 256, Seed{205, 0});
    CHECK(p.values[0] == 0.0);
    try {
        simulate_lfsm(1.5, 0.5, 256, Seed{205, 0});
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("unbounded") != std::string::npos);
    }
}

TEST_CASE("hfsm: starts at zero; K floor enforced") {
    auto p = simulate_hfsm(1.5, 0.6, 256, Seed{206, 0}, 500);
    CHECK(p.values[0] == 0.0);
    CHECK_THROWS_AS(simulate_hfsm(1.5, 0.6, 256, Seed{206, 0}, 50), std::invalid_argument);
}

TEST_CASE("hfsm: self-similar quantile scaling within 7%") {
    const int reps = 10000;
    const double H = 0.6;
    std::vector<double> half(reps), one(reps);
    FieldSpec spec = spec_of(Law::hfsm, H, 1.5, 0, 1, 512);
    spec.hfsm_terms = 2000;
    const std::vector<double> ts = {0.5, 1.0};
    for (int i = 0; i < reps; ++i) {
        auto v = simulate_at_times(spec, ts, Seed{207, static_cast<std::uint64_t>(i)});
        half[i] = std::fabs(v[0]);
        one[i] = std::fabs(v[1]);
    }
    double q_half = quantile(half, 0.9), q_one = quantile(one, 0.9);
    CHECK(q_half / q_one == doctest::Approx(std::pow(0.5, H)).epsilon(0.07));
}

TEST_CASE("hfsm: grid maximum increment shrinks as the grid refines") {
    auto median_max_step = [](std::size_t n) {
        std::vector<double> maxima;
        for (int i = 0; i < 32; ++i) {
            auto p = simulate_hfsm(1.5, 0.6, n, Seed{208, static_cast<std::uint64_t>(i)}, 2000);
            double m = 0;
            for (std::size_t j = 1; j < p.values.size(); ++j)
                m = std::max(m, std::fabs(p.values[j] - p.values[j - 1]));
            maxima.push_back(m);
        }
        return fraclab::quantile(maxima, 0.5);
    };
    double m256 = median_max_step(256), m512 = median_max_step(512), m1024 = median_max_step(1024);
    CHECK(m512 < m256);
    CHECK(m1024 < m512);
}

TEST_CASE("rhflm: starts at zero; all-moment stability across seed batches") {
    auto p = simulate_rhflm(0.55, 256, Seed{209, 0});
    CHECK(p.values[0] == 0.0);

    FieldSpec spec = spec_of(Law::rhflm, 0.55, 0, 0, 1, 256);
    const std::vector<double> t1 = {1.0};
    for (int batch = 0; batch < 10; ++batch) {
        std::vector<double> x(1000);
        for (int i = 0; i < 1000; ++i)
            x[i] = simulate_at_times(spec, t1, Seed{210, static_cast<std::uint64_t>(batch * 1000 + i)})[0];
        double m = mean(x), v = variance(x), m4 = 0;
        for (double xv : x) m4 += std::pow(xv - m, 4.0);
        double kurt = m4 / x.size() / (v * v);
        CHECK(kurt > 1.5);
        CHECK(kurt < 6.0);  // bounded, no divergence across batches
    }
}

TEST_CASE("rhflm: increment variance scales like h^{2H}") {
    const double H = 0.55;
    const std::size_t n = 512;
    FieldSpec spec = spec_of(Law::rhflm, H, 0, 0, 1, n);
    std::vector<double> lags = {1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4};
    std::vector<double> acc(lags.size(), 0.0);
    std::size_t cnt = 0;
    for (int i = 0; i < 384; ++i) {
        auto p = simulate_rhflm(H, n, Seed{211, static_cast<std::uint64_t>(i)});
        for (std::size_t li = 0; li < lags.size(); ++li) {
            std::size_t lag = static_cast<std::size_t>(lags[li] * n);
            for (std::size_t j = 0; j + lag <= n; j += lag)
                acc[li] += std::pow(p.values[j + lag] - p.values[j], 2.0);
        }
        ++cnt;
    }
    std::vector<double> lx, ly;
    for (std::size_t li = 0; li < lags.size(); ++li) {
        std::size_t lag = static_cast<std::size_t>(lags[li] * n);
        double n_incr = static_cast<double>(n / lag) * cnt;
        lx.push_back(std::log(lags[li]));
        ly.push_back(std::log(acc[li] / n_incr));
    }
    double slope = linear_fit(lx, ly).slope;
    CHECK(slope == doctest::Approx(2.0 * H).epsilon(0.1 / (2.0 * H)));
}

TEST_CASE("rosenblatt: exact chaos variance matches the brute-force double sum") {
    for (auto [kappa, n, T] : {std::tuple{0.35, std::size_t{16}, 2.0},
                               std::tuple{0.42, std::size_t{8}, 1.0}}) {
        double direct = oracle::rosenblatt_variance_direct(kappa, n, T);
        double table = rosenblatt_chaos_variance(kappa, n, T);
        CHECK(table == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("rosenblatt: unit variance at t = 1 over 10^4 paths") {
    const int reps = 10000;
    std::vector<double> y(reps);
    for (int i = 0; i < reps; ++i)
        y[i] = simulate_rosenblatt(0.35, 128, Seed{212, static_cast<std::uint64_t>(i)}).values[128];
    CHECK(mean(y) == doctest::Approx(0.0).epsilon(0.05));
    CHECK(variance(y) == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("rosenblatt: variance curve follows t^{4 kappa}") {
    const double kappa = 0.35;
    const std::size_t n = 512;
    // exact discrete variances, no Monte Carlo noise
    std::vector<double> lx, ly;
    for (std::size_t k = n / 8; k <= n; k *= 2) {
        lx.push_back(std::log(static_cast<double>(k) / n));
        ly.push_back(std::log(rosenblatt_chaos_variance_partial(kappa, n, k)));
    }
    double slope = linear_fit(lx, ly).slope;
    CHECK(slope == doctest::Approx(4.0 * kappa).epsilon(0.05 / (4.0 * kappa)));
}

TEST_CASE("rosenblatt: starts at zero; parameter contract") {
    auto p = simulate_rosenblatt(0.3, 64, Seed{213, 0});
    CHECK(p.values[0] == 0.0);
    CHECK_THROWS_AS(simulate_rosenblatt(0.2, 64, Seed{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(simulate_rosenblatt(0.5, 64, Seed{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(simulate_rosenblatt(0.35, 8192, Seed{1, 0}), std::invalid_argument);
}

TEST_CASE("vectorize: identity, independence, and contracts") {
    FieldSpec spec = spec_of(Law::fbm, 0.5, 0, 0, 1, 256);
    auto p1 = simulate(spec, Seed{214, 0});
    auto v1 = vectorize({p1});
    CHECK(v1.values == p1.values);

    auto p2 = simulate(spec, Seed{214, 0});
    CHECK_THROWS_AS(vectorize({p1, p2}), std::invalid_argument);  // shared seed

    auto p3 = simulate(spec, Seed{214, 1});
    FieldSpec other = spec_of(Law::fbm, 0.5, 0, 0, 1, 512);
    auto p4 = simulate(other, Seed{214, 2});
    CHECK_THROWS_AS(vectorize({p1, p4}), std::invalid_argument);  // mismatched grids

    auto v2 = vectorize({p1, p3});
    CHECK(v2.spec.d == 2);
    CHECK(v2.at(100)[0] == p1.values[100]);
    CHECK(v2.at(100)[1] == p3.values[100]);
}

TEST_CASE("vectorize: empirical cross-correlation of components vanishes") {
    FieldSpec spec = spec_of(Law::fbm, 0.5, 0, 0, 3, 256);
    const int reps = 3000;
    double c01 = 0, c02 = 0, c12 = 0, v0 = 0, v1 = 0, v2 = 0;
    for (int i = 0; i < reps; ++i) {
        auto p = simulate_field(spec, Seed{215, static_cast<std::uint64_t>(i)});
        const double* x = p.at(256);
        c01 += x[0] * x[1]; c02 += x[0] * x[2]; c12 += x[1] * x[2];
        v0 += x[0] * x[0]; v1 += x[1] * x[1]; v2 += x[2] * x[2];
    }
    double band = 3.0 / std::sqrt(static_cast<double>(reps));
    CHECK(std::fabs(c01 / std::sqrt(v0 * v1)) < band);
    CHECK(std::fabs(c02 / std::sqrt(v0 * v2)) < band);
    CHECK(std::fabs(c12 / std::sqrt(v1 * v2)) < band);
}

TEST_CASE("image points: origin, cardinality, duplicates, domain errors") {
    auto path = simulate_fbm(0.5, 256, Seed{216, 0});
    PointCloud e;
    e.dim = 1;
    e.coords = {0.0};
    auto img = image_points(path, e);
    CHECK(img.n_points() == 1);
    CHECK(img.point(0)[0] == 0.0);

    e.coords = {0.25, 0.25, 0.5};  // duplicates retained
    img = image_points(path, e);
    CHECK(img.n_points() == 3);
    CHECK(img.point(0)[0] == img.point(1)[0]);

    e.coords = {1.5};
    CHECK_THROWS_AS(image_points(path, e), std::invalid_argument);
}

TEST_CASE("image measure: pushforward preserves masses exactly") {
    auto path = simulate_fbm(0.5, 256, Seed{217, 0});
    IntervalSet iv = interval_set(256);
    auto img = image_measure(path, iv.measure);
    CHECK(img.total_mass == iv.measure.total_mass);
    double tot = 0;
    for (double m : img.masses) tot += m;
    CHECK(std::fabs(tot - img.total_mass) <= 1e-12);

    DiscreteMeasure pm;
    pm.support.dim = 1;
    pm.support.coords = {0.0};
    pm.masses = {1.0};
    pm.total_mass = 1.0;
    auto ipm = image_measure(path, pm);
    CHECK(ipm.support.point(0)[0] == 0.0);

    DiscreteMeasure off;
    off.support.dim = 1;
    off.support.coords = {1.0 / 3.0};
    off.masses = {1.0};
    off.total_mass = 1.0;
    CHECK_THROWS_AS(image_measure(path, off), std::invalid_argument);
}

TEST_CASE("snap_to_grid: merges colliding atoms, preserves total mass") {
    DiscreteMeasure mu;
    mu.support.dim = 1;
    mu.support.coords = {0.1001, 0.1002, 0.5};
    mu.masses = {0.25, 0.25, 0.5};
    mu.total_mass = 1.0;
    auto snapped = snap_to_grid(mu, 100);
    CHECK(snapped.support.n_points() == 2);
    CHECK(snapped.total_mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sssi scaling sanity for fbm (exact law)") {
    const int reps = 4000;
    FieldSpec spec = spec_of(Law::fbm, 0.7, 0, 0, 1, 256);
    std::vector<double> a(reps / 2), b(reps / 2);
    const std::vector<double> th = {0.5}, t1 = {1.0};
    for (int i = 0; i < reps / 2; ++i) {
        a[i] = simulate_at_times(spec, th, Seed{218, static_cast<std::uint64_t>(2 * i)})[0] /
               std::pow(0.5, 0.7);
        b[i] = simulate_at_times(spec, t1, Seed{218, static_cast<std::uint64_t>(2 * i + 1)})[0];
    }
    CHECK(ks_two_sample(a, b, 0.01).pass);
}
