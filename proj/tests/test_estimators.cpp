#include "fraclab/estimators.hpp"
#include "fraclab/fields.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <cmath>

using namespace fraclab;

namespace {

PointCloud left_grid(std::size_t n) {  // {j/n : j = 0..n-1}
    PointCloud c;
    c.dim = 1;
    for (std::size_t j = 0; j < n; ++j) c.coords.push_back(static_cast<double>(j) / n);
    return c;
}

}  // namespace

TEST_CASE("box counts: dyadic grid, single point, cantor at construction scales") {
    auto grid = left_grid(256);
    std::vector<double> scales = {0.5, 0.25, 0.125, 0.0625};
    auto counts = box_counts(grid, scales);
    CHECK(counts[0] == 2);
    CHECK(counts[1] == 4);
    CHECK(counts[2] == 8);
    CHECK(counts[3] == 16);

    PointCloud pt;
    pt.dim = 1;
    pt.coords = {0.37};
    auto single = box_counts(pt, scales);
    for (auto c : single) CHECK(c == 1);

    auto cs = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 12, 1));
    std::vector<double> tri;
    for (int j = 1; j <= 6; ++j) tri.push_back(std::pow(3.0, -j));
    auto cc = box_counts(cs.cloud, tri);
    for (int j = 1; j <= 6; ++j) CHECK(cc[j - 1] == (1u << j));

    PointCloud empty;
    empty.dim = 1;
    CHECK_THROWS_AS(box_counts(empty, scales), std::invalid_argument);
    CHECK_THROWS_AS(box_counts(grid, {0.5}), std::invalid_argument);
}

TEST_CASE("box dimension: full square, cantor, single point") {
    PointCloud sq;
    sq.dim = 2;
    for (int i = 0; i < 256; ++i)
        for (int j = 0; j < 256; ++j) {
            sq.coords.push_back(i / 256.0);
            sq.coords.push_back(j / 256.0);
        }
    auto est = box_dimension(sq);
    CHECK(est.value == doctest::Approx(2.0).epsilon(0.05 / 2.0));

    auto cs = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 12, 1));
    BoxOptions opt;
    for (int j = 1; j <= 7; ++j) opt.scales.push_back(std::pow(3.0, -j));
    auto cest = box_dimension(cs.cloud, opt);
    CHECK(cest.value == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(0.03));

    // default dyadic window lands close as well
    auto cest2 = box_dimension(cs.cloud);
    CHECK(cest2.value == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(0.08));

    PointCloud pt;
    pt.dim = 1;
    pt.coords = {0.37};
    CHECK(box_dimension(pt).value == doctest::Approx(0.0));
}

TEST_CASE("lower/upper box: homogeneous close, two-phase split, interval exact") {
    auto cs = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 12, 1));
    auto lu = lower_upper_box(cs.cloud);
    CHECK(lu.lower.value <= lu.upper.value);
    CHECK(std::fabs(lu.upper.value - lu.lower.value) < 0.12);

    // envelope oracle on the analytic two-phase count sequence, then the
    // estimator itself
    auto a = CantorSpec::homogeneous(2, 1.0 / 3.0, 18, 1);
    auto b = CantorSpec::homogeneous(2, 0.5, 18, 1);
    auto tp = two_phase_cantor(a, b, 3);
    auto pc = oracle::two_phase_counts(tp.phase_per_level, 2, 1.0 / 3.0, 2, 0.5);
    auto [olo, ohi] = oracle::chord_extremes(pc, 3.0 * std::log(2.0));
    CHECK(olo == doctest::Approx(tp.target_dim_hausdorff).epsilon(0.08));
    CHECK(ohi == doctest::Approx(tp.target_dim_packing).epsilon(0.08));

    auto tplu = lower_upper_box(tp.cloud);
    CHECK(tplu.lower.value == doctest::Approx(tp.target_dim_hausdorff).epsilon(0.08 / 0.63));
    CHECK(tplu.upper.value == doctest::Approx(tp.target_dim_packing).epsilon(0.08));

    auto iv = left_grid(1 << 12);
    auto ilu = lower_upper_box(iv);
    CHECK(ilu.lower.value == doctest::Approx(1.0).epsilon(0.02));
    CHECK(ilu.upper.value == doctest::Approx(1.0).epsilon(0.02));

    // shallow construction: window insufficient
    auto shallow = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 4, 1));
    auto slu = lower_upper_box(shallow.cloud);
    CHECK(slu.window_insufficient);
}

TEST_CASE("local dims: point mass gives zero exponents") {
    DiscreteMeasure pm;
    pm.support.dim = 1;
    pm.support.coords = {0.3};
    pm.masses = {1.0};
    pm.total_mass = 1.0;
    LocalDimOptions opt;
    opt.n_probe = 8;
    auto f = measure_local_dims(pm, opt, Seed{301, 0});
    for (double b : f.exponents) CHECK(b == doctest::Approx(0.0));
    CHECK(f.quantile_lower(0.05) == doctest::Approx(0.0));
}

TEST_CASE("local dims: uniform measure on [0,1]") {
    IntervalSet iv = interval_set(4096);
    LocalDimOptions opt;
    opt.n_probe = 48;
    auto sum = measure_dimension(iv.measure, opt, Seed{302, 0});
    CHECK(sum.dim_lower.value == doctest::Approx(1.0).epsilon(0.08));
    CHECK(sum.dim_upper.value == doctest::Approx(1.0).epsilon(0.08));
}

TEST_CASE("local dims: cantor natural measure at construction radii") {
    auto cs = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 12, 1));
    LocalDimOptions opt;
    opt.n_probe = 48;
    for (int j = 2; j <= 8; ++j) opt.radii.push_back(std::pow(3.0, -j));
    auto sum = measure_dimension(cs.measure, opt, Seed{303, 0});
    const double want = std::log(2.0) / std::log(3.0);
    CHECK(sum.dim_lower.value == doctest::Approx(want).epsilon(0.08 / want));
    CHECK(sum.dim_upper.value == doctest::Approx(want).epsilon(0.08 / want));
}

TEST_CASE("local dims: off-support probes are discarded and counted") {
    auto cs = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 8, 1));
    PointCloud probes;
    probes.dim = 1;
    probes.coords = {0.5, cs.cloud.coords[10]};  // 0.5 sits in the central gap
    LocalDimOptions opt;
    for (int j = 3; j <= 7; ++j) opt.radii.push_back(std::pow(3.0, -j));
    auto f = measure_local_dims_at(cs.measure, probes, opt);
    CHECK(f.discarded == 1);
    CHECK(f.exponents.size() == 1);
}

TEST_CASE("local dims: product of independent uniforms adds exponents") {
    PointCloud sq;
    sq.dim = 2;
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
            sq.coords.push_back(i / 64.0);
            sq.coords.push_back(j / 64.0);
        }
    auto mu = uniform_measure(sq);
    LocalDimOptions opt;
    opt.n_probe = 32;
    auto sum = measure_dimension(mu, opt, Seed{304, 0});
    CHECK(sum.dim_lower.value == doctest::Approx(2.0).epsilon(0.1 / 2.0));
}

TEST_CASE("hausdorff_dim_cloud: interval and cantor") {
    IntervalSet iv = interval_set(4096);
    LocalDimOptions opt;
    opt.n_probe = 48;
    auto est = hausdorff_dim_cloud(iv.cloud, iv.measure, opt, Seed{305, 0});
    CHECK(est.value == doctest::Approx(1.0).epsilon(0.08));

    auto cs = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 12, 1));
    LocalDimOptions copt;
    copt.n_probe = 48;
    for (int j = 2; j <= 8; ++j) copt.radii.push_back(std::pow(3.0, -j));
    auto cest = hausdorff_dim_cloud(cs.cloud, cs.measure, copt, Seed{306, 0});
    const double want = std::log(2.0) / std::log(3.0);
    CHECK(cest.value == doctest::Approx(want).epsilon(0.08 / want));
}

TEST_CASE("estimates stay in [0, ambient] and respect envelope order") {
    auto cs = cantor_set(CantorSpec::homogeneous(2, 1.0 / 3.0, 10, 1));
    auto est = box_dimension(cs.cloud);
    CHECK(est.value >= 0.0);
    CHECK(est.value <= 1.0 + 0.05);
    auto lu = lower_upper_box(cs.cloud);
    CHECK(lu.lower.value <= lu.upper.value + 1e-12);
}

TEST_CASE("saturated planar image: corrected estimators hit d = 2") {
    // occupation measures of critical (saturated) images carry a 1/log
    // factor; the corrected fits must recover the dimension where the plain
    // slopes stall well below it
    FieldSpec spec;
    spec.law = Law::fbm;
    spec.H = 0.5;
    spec.d = 2;
    spec.grid_n = 1u << 16;
    SamplePath path = simulate_field(spec, Seed{307, 0});
    DiscreteMeasure img = image_measure(path, interval_set(1u << 16).measure);

    BoxOptions bopt;
    bopt.log_correction = true;
    auto best = box_dimension(img.support, bopt);
    CHECK(best.log_corrected);
    CHECK(best.value == doctest::Approx(2.0).epsilon(0.15 / 2.0));

    LocalDimOptions lopt;
    lopt.n_probe = 96;
    lopt.quantile... // placeholder
}
