#include "fraclab/profiles.hpp"

#include "fraclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fraclab {

double kernel_psi(double s, const std::vector<double>& x) {
    if (!(s > 0)) throw std::invalid_argument("kernel_psi: s must be > 0");
    double n2 = 0;
    for (double v : x) n2 += v * v;
    if (n2 <= 1.0) return 1.0;
    return std::pow(n2, -0.5 * s);
}

double potential_F(const DiscreteMeasure& mu, double s, const std::vector<double>& x, double r) {
    if (!(r > 0)) throw std::invalid_argument("potential_F: r must be > 0");
    if (!(s > 0)) throw std::invalid_argument("potential_F: s must be > 0");
    const std::size_t n = mu.support.n_points();
    const int dim = mu.support.dim;
    double acc = 0;
    std::vector<double> z(dim);
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = mu.support.point(i);
        for (int j = 0; j < dim; ++j) z[j] = (x[j] - p[j]) / r;
        acc += mu.masses[i] * kernel_psi(s, z);
    }
    return acc;
}

std::vector<double> potential_curve(const DistanceProfile& dp, double s,
                                    const std::vector<double>& radii) {
    const std::size_t n = dp.dist.size();
    // suffix[j] = sum_{i >= j} m_i d_i^{-s}, atoms at distance zero skipped
    // (they sit inside every ball and land on the mass side)
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t j = n; j-- > 0;) {
        double m = dp.cum_mass[j] - (j ? dp.cum_mass[j - 1] : 0.0);
        suffix[j] = suffix[j + 1] + (dp.dist[j] > 0 ? m * std::pow(dp.dist[j], -s) : 0.0);
    }
    std::vector<double> out(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double r = radii[k];
        auto it = std::upper_bound(dp.dist.begin(), dp.dist.end(), r);
        std::size_t j = static_cast<std::size_t>(it - dp.dist.begin());
        double inside = j ? dp.cum_mass[j - 1] : 0.0;
        out[k] = inside + std::pow(r, s) * suffix[j];
    }
    return out;
}

namespace {

PointCloud draw_probes_from(const DiscreteMeasure& mu, std::size_t n_probe, Seed seed) {
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

struct ProfileWork {
    std::vector<DistanceProfile> profiles;
    std::vector<double> radii;
    std::vector<double> log_r;
};

ProfileWork prepare(const DiscreteMeasure& mu, const ProfileOptions& opt, Seed seed) {
    mu.validate();
    ProfileWork w;
    w.radii = opt.radii.empty() ? default_radii(mu) : opt.radii;
    if (w.radii.size() < 4 || w.radii.front() / w.radii.back() < 7.9)
        throw std::invalid_argument("profile: radii must span >= 3 octaves");
    for (double r : w.radii) w.log_r.push_back(std::log(r));
    PointCloud probes = draw_probes_from(mu, opt.n_probe, seed);
    for (std::size_t i = 0; i < probes.n_points(); ++i) {
        std::vector<double> x(probes.point(i), probes.point(i) + probes.dim);
        w.profiles.push_back(distance_profile(mu, x));
    }
    return w;
}

ProfileEstimate estimate_from_work(const ProfileWork& w, double s, int ambient_dim,
                                   const ProfileOptions& opt) {
    const double cap = std::min(s, static_cast<double>(ambient_dim));
    std::vector<double> slopes;
    std::vector<double> sum_log_f(w.radii.size(), 0.0);
    bool degenerate = false;
    for (const auto& dp : w.profiles) {
        auto F = potential_curve(dp, s, w.radii);
        std::vector<double> ly(F.size());
        for (std::size_t k = 0; k < F.size(); ++k) ly[k] = std::log(F[k]);
        if (std::fabs(ly.front() - ly.back()) < 1e-12) {
            degenerate = true;
            slopes.push_back(0.0);
        } else {
            slopes.push_back(envelope_slope(w.log_r, ly, false));  // lower envelope: liminf
        }
        for (std::size_t k = 0; k < F.size(); ++k) sum_log_f[k] += ly[k];
    }
    // recenter on the log-corrected fit of the probe-averaged curve
    std::vector<double> X, Y;
    for (std::size_t k = 0; k < w.radii.size(); ++k) {
        X.push_back(-w.log_r[k]);
        Y.push_back(-sum_log_f[k] / static_cast<double>(w.profiles.size()));
    }
    auto fit = fit_exponent(X, Y, opt.log_correction, cap + 0.5);
    ProfileEstimate out;
    out.degenerate = degenerate;
    out.log_corrected = fit.corrected_used;
    if (fit.corrected_used && !degenerate) {
        double shift = fit.value - mean(slopes);
        for (double& b : slopes) b += shift;
    }
    for (double& b : slopes) b = std::clamp(b, 0.0, cap);
    out.dim_lower = quantile(slopes, opt.lower_quantile);
    out.dim_upper = quantile(slopes, opt.upper_quantile);
    out.std_error = std::sqrt(variance(slopes) / std::max<std::size_t>(slopes.size(), 1)) +
                    0.5 * fit.se;
    return out;
}

}  // namespace

ProfileEstimate profile_measure(const DiscreteMeasure& mu, double s, const ProfileOptions& opt, Seed seed) {
    if (!(s > 0)) throw std::invalid_argument("profile_measure: s must be > 0");
    ProfileWork w = prepare(mu, opt, seed);
    return estimate_from_work(w, s, mu.support.dim, opt);
}

ProfileEstimate profile_set(const DiscreteMeasure& natural, double s, const ProfileOptions& opt, Seed seed) {
    return profile_measure(natural, s, opt, seed);
}

ProfileCurve profile_curve(const DiscreteMeasure& mu, const std::vector<double>& s_grid,
                           const ProfileOptions& opt, Seed seed) {
    if (s_grid.size() < 2) throw std::invalid_argument("profile_curve: need an s grid");
    for (std::size_t i = 1; i < s_grid.size(); ++i)
        if (s_grid[i] <= s_grid[i - 1])
            throw std::invalid_argument("profile_curve: s grid must be strictly increasing");
    ProfileWork w = prepare(mu, opt, seed);  // shared probes and radii across s
    ProfileCurve out;
    out.kind = "set";
    out.s_grid = s_grid;
    for (double s : s_grid) {
        auto est = estimate_from_work(w, s, mu.support.dim, opt);
        out.values.push_back(est.dim_lower);
        out.upper_values.push_back(est.dim_upper);
        out.std_errors.push_back(est.std_error);
    }
    return out;
}

std::vector<double> default_s_grid(int ambient_dim, std::size_t count) {
    const double lo = 0.05, hi = ambient_dim + 1.0;
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    return g;
}

}  // namespace fraclab
