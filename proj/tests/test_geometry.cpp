#include "fraclab/geometry.hpp"
#include "fraclab/rng.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <algorithm>
#include <cmath>

using namespace fraclab;

TEST_CASE("dyadic grid: cell counts and centers") {
    Grid g1 = make_dyadic_grid(1, 1);
    CHECK(g1.cell_count() == 2);
    CHECK(g1.cell_center(0)[0] == doctest::Approx(0.25));
    CHECK(g1.cell_center(1)[0] == doctest::Approx(0.75));

    CHECK(make_dyadic_grid(3, 1).cell_count() == 8);
    CHECK(make_dyadic_grid(2, 2).cell_count() == 16);

    CHECK_THROWS_AS(make_dyadic_grid(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_dyadic_grid(25, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_dyadic_grid(4, 0), std::invalid_argument);
}

TEST_CASE("cantor set: counts, dimension metadata, uniform measure") {
    auto c = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 10, 1));
    CHECK(c.cloud.n_points() == 1024);
    REQUIRE(c.analytic_dim.has_value());
    CHECK(*c.analytic_dim == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));

    // natural measure exactly uniform
    double m0 = c.measure.masses[0], tot = 0;
    for (double m : c.measure.masses) {
        CHECK(std::fabs(m - m0) <= 1e-12);
        tot += m;
    }
    CHECK(std::fabs(tot - c.measure.total_mass) <= 1e-12);

    // strictly positive pairwise gap
    auto pts = c.cloud.coords;
    std::sort(pts.begin(), pts.end());
    double gap = 1.0;
    for (std::size_t i = 1; i < pts.size(); ++i) gap = std::min(gap, pts[i] - pts[i - 1]);
    CHECK(gap > 0.0);
}

TEST_CASE("cantor set: degenerate ratio fills the dyadic grid") {
    auto c = cantor_set(CantorSpec::homogeneous(2, 0.5, 8, 1));
    CHECK(c.cloud.n_points() == 256);
    CHECK(*c.analytic_dim == doctest::Approx(1.0));
    auto pts = c.cloud.coords;
    std::sort(pts.begin(), pts.end());
    for (std::size_t j = 0; j < 256; ++j)
        CHECK(pts[j] == doctest::Approx(j / 256.0).epsilon(1e-12));
}

TEST_CASE("cantor set: (3, 1/5) dimension and overlap error") {
    auto c = cantor_set(CantorSpec::homogeneous(3, 0.2, 8, 1));
    CHECK(*c.analytic_dim == doctest::Approx(std::log(3.0) / std::log(5.0)).epsilon(1e-12));
    CHECK_THROWS_AS(cantor_set(CantorSpec::homogeneous(3, 0.4, 4, 1)), std::runtime_error);
    CHECK_THROWS_AS(cantor_set(CantorSpec::homogeneous(1, 0.3, 4, 1)), std::invalid_argument);
}

TEST_CASE("two-phase cantor: equal phases reproduce the plain construction") {
    auto spec = CantorSpec::homogeneous(2, 1.0 / 3.0, 8, 1);
    auto tp = two_phase_cantor(spec, spec, 3);
    auto cs = cantor_set(spec);
    REQUIRE(tp.cloud.n_points() == cs.cloud.n_points());
    for (std::size_t i = 0; i < tp.cloud.coords.size(); ++i)
        CHECK(tp.cloud.coords[i] == doctest::Approx(cs.cloud.coords[i]).epsilon(1e-12));
    CHECK(tp.target_dim_hausdorff == doctest::Approx(tp.target_dim_packing));
}

TEST_CASE("two-phase cantor: metadata targets are min and max") {
    auto a = CantorSpec::homogeneous(2, 1.0 / 3.0, 18, 1);
    auto b = CantorSpec::homogeneous(2, 0.5, 18, 1);
    auto tp = two_phase_cantor(a, b, 3);
    CHECK(tp.target_dim_hausdorff == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
    CHECK(tp.target_dim_packing == doctest::Approx(1.0));
    CHECK(tp.cloud.n_points() == (1u << 18));
    CHECK_THROWS_AS(two_phase_cantor(a, b, 1), std::invalid_argument);
}

TEST_CASE("ball mass: point mass cases") {
    DiscreteMeasure mu;
    mu.support.dim = 1;
    mu.support.coords = {0.0};
    mu.masses = {2.5};
    mu.total_mass = 2.5;
    CHECK(ball_mass(mu, {0.0}, 0.3) == doctest::Approx(2.5));
    CHECK(ball_mass(mu, {0.8}, 0.4) == doctest::Approx(0.0));
    CHECK_THROWS_AS(ball_mass(mu, {0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("ball mass: uniform grid against exact count oracle") {
    IntervalSet iv = interval_set(1023);  // 1024 atoms
    double got = ball_mass(iv.measure, {0.5}, 0.25);
    double want = oracle::grid_ball_mass(1023, 0.5, 0.25);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
    CHECK(got == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("ball mass: monotone in radius") {
    auto c = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 8, 1));
    RngStream rng(Seed{7, 0});
    for (int t = 0; t < 32; ++t) {
        std::vector<double> x = {rng.u01()};
        double r1 = 0.001 + 0.3 * rng.u01();
        double r2 = r1 * (1.0 + rng.u01());
        CHECK(ball_mass(c.measure, x, r2) >= ball_mass(c.measure, x, r1) - 1e-15);
    }
}

TEST_CASE("distance profile agrees with direct ball mass") {
    auto c = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 9, 1));
    auto dp = distance_profile(c.measure, {0.4});
    for (double r : {0.01, 0.05, 0.2, 0.7})
        CHECK(dp.ball_mass(r) == doctest::Approx(ball_mass(c.measure, {0.4}, r)).epsilon(1e-12));
}

TEST_CASE("cantor measure: exact self-similar ball masses at 3^-j radii") {
    const int depth = 12;
    auto c = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, depth, 1));
    RngStream rng(Seed{8, 0});
    for (int t = 0; t < 24; ++t) {
        std::size_t i = rng.index(c.cloud.n_points());
        std::vector<double> x = {c.cloud.coords[i]};
        for (int j = 2; j <= 6; ++j) {
            double mass = ball_mass(c.measure, x, std::pow(3.0, -j));
            double lo = std::pow(2.0, -j), hi = std::pow(2.0, -j + 1);
            bool ok = std::fabs(mass - lo) <= 1e-12 || std::fabs(mass - hi) <= 1e-12;
            CHECK(ok);
        }
    }
}

TEST_CASE("product cantor in two dimensions") {
    auto c = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 5, 2));
    CHECK(c.cloud.dim == 2);
    CHECK(c.cloud.n_points() == (1u << 10));  // (2^2)^5
}

TEST_CASE("measure validation catches broken invariants") {
    DiscreteMeasure mu;
    mu.support.dim = 1;
    mu.support.coords = {0.1, 0.2};
    mu.masses = {0.5, -0.1};
    mu.total_mass = 0.4;
    CHECK_THROWS_AS(mu.validate(), std::invalid_argument);
    mu.masses = {0.5, 0.1};
    mu.total_mass = 0.7;  // inconsistent total
    CHECK_THROWS_AS(mu.validate(), std::invalid_argument);
}
