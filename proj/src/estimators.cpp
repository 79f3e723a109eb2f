#include "fraclab/estimators.hpp"

#include "fraclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fraclab {

namespace {

// deterministic cell assignment: a boundary point belongs to the cell whose
// lower edge it is (left-endpoint constructions stay one cell per branch)
inline std::int64_t cell_index(double x, double eps) {
    return static_cast<std::int64_t>(std::floor(x / eps));
}

}  // namespace

std::vector<std::size_t> box_counts(const PointCloud& cloud, const std::vector<double>& scales) {
    cloud.validate();
    if (cloud.n_points() == 0) throw std::invalid_argument("box_counts: empty cloud");
    if (scales.size() < 2) throw std::invalid_argument("box_counts: need >= 2 scales");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0)) throw std::invalid_argument("box_counts: scales must be positive");
        if (i > 0 && scales[i] >= scales[i - 1])
            throw std::invalid_argument("box_counts: scales must be strictly decreasing");
    }
    if (cloud.dim > 3) throw std::invalid_argument("box_counts: supported ambient dim <= 3");

    const std::size_t n = cloud.n_points();
    std::vector<std::size_t> out(scales.size());
    std::vector<std::uint64_t> keys(n);
    for (std::size_t si = 0; si < scales.size(); ++si) {
        const double eps = scales[si];
        for (std::size_t i = 0; i < n; ++i) {
            const double* p = cloud.point(i);
            std::uint64_t key = 0;
            for (int j = 0; j < cloud.dim; ++j) {
                std::int64_t c = cell_index(p[j], eps);
                if (c < -(1 << 20) || c >= (1 << 20))
                    throw std::invalid_argument("box_counts: scale too fine for coordinate range");
                key = (key << 21) | static_cast<std::uint64_t>(c + (1 << 20));
            }
            keys[i] = key;
        }
        std::sort(keys.begin(), keys.end());
        out[si] = static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
    }
    return out;
}

namespace {

struct ScaledCounts {
    std::vector<double> scales;        // decreasing
    std::vector<std::size_t> counts;
    bool touched_floor = false;
    bool trimmed = false;
};

// dyadic scan with the default trim: drop one coarsest and two finest octaves
// of the usable range (resolution floor and diameter saturation bias slopes)
ScaledCounts auto_counts(const PointCloud& cloud) {
    const std::size_t n = cloud.n_points();
    std::vector<double> scales;
    for (int k = 0; k <= 22; ++k) scales.push_back(std::pow(2.0, -k));
    auto counts = box_counts(cloud, scales);

    std::size_t first = 0;
    while (first + 1 < counts.size() && counts[first] < 4) ++first;
    std::size_t last = first;
    while (last + 1 < counts.size() && counts[last] < n / 2) ++last;

    ScaledCounts out;
    std::size_t lo = first, hi = last;
    if (hi > lo + 6) { lo += 1; hi -= 2; out.trimmed = true; }  // default trim
    for (std::size_t i = lo; i <= hi; ++i) {
        out.scales.push_back(scales[i]);
        out.counts.push_back(counts[i]);
    }
    out.touched_floor = (hi >= last);
    return out;
}

ScaledCounts gather_counts(const PointCloud& cloud, const BoxOptions& opt) {
    if (opt.scales.empty()) return auto_counts(cloud);
    ScaledCounts out;
    out.scales = opt.scales;
    out.counts = box_counts(cloud, opt.scales);
    const std::size_t n = cloud.n_points();
    out.touched_floor = out.counts.back() >= n / 2 && n > 8;
    return out;
}

}  // namespace

DimEstimate box_dimension(const PointCloud& cloud, const BoxOptions& opt) {
    ScaledCounts sc = gather_counts(cloud, opt);
    DimEstimate est;
    est.scale_min = sc.scales.back();
    est.scale_max = sc.scales.front();
    est.n_scales = static_cast<int>(sc.scales.size());
    est.window_warning = sc.touched_floor;
    if (sc.scales.size() < 2) { est.window_warning = true; return est; }

    std::vector<double> x, y;
    for (std::size_t i = 0; i < sc.scales.size(); ++i) {
        x.push_back(std::log(1.0 / sc.scales[i]));
        y.push_back(std::log(static_cast<double>(sc.counts[i])));
    }
    auto fit = fit_exponent(x, y, opt.log_correction, cloud.dim + 0.3);
    est.value = std::clamp(fit.value, 0.0, static_cast<double>(cloud.dim));
    est.std_error = fit.se;
    est.resid_rms = fit.resid_rms;
    est.log_corrected = fit.corrected_used;
    if (sc.scales.size() < 4) est.window_warning = true;
    return est;
}

LowerUpperBox lower_upper_box(const PointCloud& cloud, const BoxOptions& opt,
                              double min_span_octaves) {
    ScaledCounts sc = gather_counts(cloud, opt);
    LowerUpperBox out;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < sc.scales.size(); ++i) {
        x.push_back(std::log(1.0 / sc.scales[i]));
        y.push_back(std::log(static_cast<double>(sc.counts[i])));
    }
    const double span = min_span_octaves * std::log(2.0);
    if (x.size() < 2 || x.back() - x.front() < span + std::log(2.0)) {
        out.window_insufficient = true;
        return out;
    }
    auto [lo, hi] = extreme_chord_slopes(x, y, span);
    auto lf = linear_fit(x, y);
    auto fill = [&](DimEstimate& e, double v) {
        e.value = std::clamp(v, 0.0, static_cast<double>(cloud.dim));
        e.std_error = lf.slope_se;
        e.scale_min = sc.scales.back();
        e.scale_max = sc.scales.front();
        e.n_scales = static_cast<int>(sc.scales.size());
        e.resid_rms = lf.resid_rms;
        e.window_warning = sc.touched_floor;
    };
    fill(out.lower, lo);
    fill(out.upper, hi);
    return out;
}

double LocalExponentField::quantile_lower(double q) const { return quantile(exponents, q); }
double LocalExponentField::quantile_upper_tail(double q) const { return quantile(exponents, q); }

std::vector<double> default_radii(const DiscreteMeasure& mu, int max_octaves) {
    const std::size_t n = mu.support.n_points();
    const int dim = mu.support.dim;
    // bounding-box diameter
    double diam = 0;
    for (int j = 0; j < dim; ++j) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t i = 0; i < n; ++i) {
            lo = std::min(lo, mu.support.point(i)[j]);
            hi = std::max(hi, mu.support.point(i)[j]);
        }
        diam = std::max(diam, hi - lo);
    }
    if (diam <= 0) diam = 1.0;
    // nearest-neighbor spacing from a few evenly indexed atoms
    double floor_est = diam;
    const std::size_t samples = std::min<std::size_t>(n, 16);
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t i = s * (n / samples);
        const double* p = mu.support.point(i);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            double d2 = 0;
            for (int j = 0; j < dim; ++j) d2 += (p[j] - mu.support.point(k)[j]) * (p[j] - mu.support.point(k)[j]);
            best = std::min(best, d2);
        }
        if (best > 0 && std::isfinite(best)) floor_est = std::min(floor_est, std::sqrt(best));
    }
    double r_max = diam / 8.0;
    double r_min = std::max(4.0 * floor_est, diam / std::pow(2.0, max_octaves + 3));
    std::vector<double> radii;
    for (double r = r_max; r >= r_min && static_cast<int>(radii.size()) <= max_octaves; r *= 0.5)
        radii.push_back(r);
    if (radii.empty()) radii.push_back(r_max);
    while (radii.size() < 4) radii.push_back(radii.back() * 0.5);
    return radii;
}

LocalExponentField measure_local_dims_at(const DiscreteMeasure& mu, const PointCloud& probes,
                                         const LocalDimOptions& opt) {
    mu.validate();
    probes.validate();
    if (probes.dim != mu.support.dim)
        throw std::invalid_argument("measure_local_dims: probe dimension mismatch");
    std::vector<double> radii = opt.radii.empty() ? default_radii(mu) : opt.radii;
    if (radii.size() < 4 || radii.front() / radii.back() < 7.9)
        throw std::invalid_argument("measure_local_dims: radii must span >= 3 octaves");

    std::vector<double> lx;
    for (double r : radii) lx.push_back(std::log(r));

    LocalExponentField out;
    std::vector<double> sum_log_mass(radii.size(), 0.0);
    std::size_t used = 0;
    for (std::size_t pi = 0; pi < probes.n_points(); ++pi) {
        std::vector<double> x(probes.point(pi), probes.point(pi) + probes.dim);
        DistanceProfile dp = distance_profile(mu, x);
        if (dp.ball_mass(radii.back()) <= 0) { ++out.discarded; continue; }
        std::vector<double> ly(radii.size());
        for (std::size_t ri = 0; ri < radii.size(); ++ri)
            ly[ri] = std::log(dp.ball_mass(radii[ri]));
        out.exponents.push_back(envelope_slope(lx, ly, true));
        out.exponents_upper.push_back(envelope_slope(lx, ly, false));
        out.probe_coords.insert(out.probe_coords.end(), x.begin(), x.end());
        for (std::size_t ri = 0; ri < radii.size(); ++ri) sum_log_mass[ri] += ly[ri];
        ++used;
    }
    if (used == 0) throw std::runtime_error("measure_local_dims: all probes discarded");

    // common-mode recentring: fit the probe-averaged mass curve with the
    // slowly-varying correction and shift per-probe slopes onto that center
    std::vector<double> X, Y;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        X.push_back(-lx[ri]);
        Y.push_back(-sum_log_mass[ri] / static_cast<double>(used));
    }
    auto fit = fit_exponent(X, Y, opt.log_correction, mu.support.dim + 0.5);
    out.center = fit.value;
    out.log_corrected = fit.corrected_used;
    if (fit.corrected_used) {
        double m = mean(out.exponents);
        double shift = fit.value - m;
        for (double& b : out.exponents) b += shift;
        for (double& b : out.exponents_upper) b += shift;
    }
    return out;
}

namespace {

PointCloud draw_probes(const DiscreteMeasure& mu, std::size_t n_probe, Seed seed) {
    RngStream rng(seed);
    const std::size_t n = mu.support.n_points();
    std::vector<double> cum(n);
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) { acc += mu.masses[i]; cum[i] = acc; }
    PointCloud probes;
    probes.dim = mu.support.dim;
    for (std::size_t k = 0; k < n_probe; ++k) {
        double u = rng.u01() * acc;
        std::size_t i = static_cast<std::size_t>(
            std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        if (i >= n) i = n - 1;
        probes.push(mu.support.point(i));
    }
    return probes;
}

}  // namespace

LocalExponentField measure_local_dims(const DiscreteMeasure& mu, const LocalDimOptions& opt, Seed seed) {
    return measure_local_dims_at(mu, draw_probes(mu, opt.n_probe, seed), opt);
}

MeasureDimSummary measure_dimension(const DiscreteMeasure& mu, const LocalDimOptions& opt, Seed seed) {
    MeasureDimSummary out;
    out.field = measure_local_dims(mu, opt, seed);
    std::vector<double> radii = opt.radii.empty() ? default_radii(mu) : opt.radii;
    const double spread_se =
        std::sqrt(variance(out.field.exponents) / std::max<std::size_t>(out.field.exponents.size(), 1));
    auto fill = [&](DimEstimate& e, double v) {
        e.value = std::clamp(v, 0.0, static_cast<double>(mu.support.dim));
        e.std_error = spread_se;
        e.scale_min = radii.back();
        e.scale_max = radii.front();
        e.n_scales = static_cast<int>(radii.size());
        e.log_corrected = out.field.log_corrected;
    };
    fill(out.dim_lower, quantile(out.field.exponents, opt.lower_quantile));
    fill(out.dim_upper, quantile(out.field.exponents, opt.upper_quantile));
    return out;
}

DimEstimate hausdorff_dim_cloud(const PointCloud& cloud, const DiscreteMeasure& natural,
                                const LocalDimOptions& opt, Seed seed) {
    if (natural.support.n_points() != cloud.n_points())
        throw std::invalid_argument("hausdorff_dim_cloud: natural measure does not match cloud");
    return measure_dimension(natural, opt, seed).dim_lower;
}

}  // namespace fraclab
