#include "fraclab/probes.hpp"

#include "fraclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fraclab {

namespace {

double euclid(const double* a, const double* b, int d) {
    double s = 0;
    for (int j = 0; j < d; ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s);
}

// tail exponent from the deep-tail window p in [max(50/reps, 0.005), 0.02];
// probabilities below 50/reps are floored out (their relative MC error
// explodes)
double fit_tail_exponent(const std::vector<double>& samples, std::size_t reps,
                         std::vector<double>* u_out, std::vector<double>* p_out) {
    const double p_floor = std::max(50.0 / static_cast<double>(reps), 0.005);
    const double p_hi = std::max(0.02, 2.5 * p_floor);
    std::vector<double> us, ps;
    const int npts = 8;
    for (int i = 0; i < npts; ++i) {
        double p = p_hi * std::pow(p_floor / p_hi, static_cast<double>(i) / (npts - 1));
        double u = quantile(samples, 1.0 - p);
        double tail = 0;
        for (double s : samples) tail += s > u ? 1.0 : 0.0;
        tail /= static_cast<double>(samples.size());
        if (tail <= 0 || u <= 0) continue;
        us.push_back(std::log(u));
        ps.push_back(std::log(tail));
        if (u_out) u_out->push_back(u);
        if (p_out) p_out->push_back(tail);
    }
    if (us.size() < 3) return 0.0;
    return -linear_fit(us, ps).slope;
}

}  // namespace

ProbeReport probe_c1(const FieldSpec& spec, double h1, std::vector<double> h_grid,
                     std::vector<double> u_grid, std::size_t reps, Seed seed) {
    spec.validate();
    if (reps < 1000) throw std::invalid_argument("probe_c1: need reps >= 10^3");
    if (h_grid.empty()) h_grid = {1.0, 0.25, 0.0625};
    std::sort(h_grid.begin(), h_grid.end(), std::greater<>());
    for (double h : h_grid)
        if (!(h > 0) || h > 1.0) throw std::invalid_argument("probe_c1: h must be in (0, 1]");

    const std::size_t n = spec.grid_n;
    // scaled sups per h across replicas; anchor t = 0 (stationary increments)
    std::vector<std::vector<double>> sups(h_grid.size(), std::vector<double>(reps));
    for (std::size_t rep = 0; rep < reps; ++rep) {
        SamplePath path = simulate_field(spec, seed.sub(rep));
        for (std::size_t hi = 0; hi < h_grid.size(); ++hi) {
            const std::size_t jmax = static_cast<std::size_t>(h_grid[hi] * static_cast<double>(n));
            double m = 0;
            for (std::size_t j = 1; j <= jmax; ++j)
                m = std::max(m, euclid(path.at(j), path.at(0), spec.d));
            sups[hi][rep] = m / std::pow(h_grid[hi], h1);
        }
    }

    ProbeReport out;
    out.condition = "C1";
    out.exponent = h1;
    out.seed = seed;

    out.beta_hat = fit_tail_exponent(sups[0], reps, nullptr, nullptr);

    // constant fitted on the coarsest h, then the bound shape is checked on
    // every finer h at the same u values
    if (u_grid.empty())
        for (double p : {0.10, 0.05, 0.02, 0.01, 0.005})
            if (p * static_cast<double>(reps) >= 50.0) u_grid.push_back(quantile(sups[0], 1.0 - p));
    std::sort(u_grid.begin(), u_grid.end());

    double k_hat = 0;
    for (double u : u_grid) {
        double tail = 0;
        for (double s : sups[0]) tail += s >= u ? 1.0 : 0.0;
        tail /= static_cast<double>(reps);
        k_hat = std::max(k_hat, tail * std::pow(u, out.beta_hat));
    }
    out.fitted_constant = k_hat;

    for (std::size_t hi = 0; hi < h_grid.size(); ++hi)
        for (double u : u_grid) {
            double tail = 0;
            for (double s : sups[hi]) tail += s >= u ? 1.0 : 0.0;
            tail /= static_cast<double>(reps);
            out.curve_scale.push_back(h_grid[hi]);
            out.curve_x.push_back(u);
            out.curve_y.push_back(tail);
            ++out.total_checks;
            double bound = k_hat * std::pow(u, -out.beta_hat);
            double se = std::sqrt(std::max(bound * (1 - bound), 1e-12) / static_cast<double>(reps));
            if (tail > 1.5 * bound + 3.0 * se) ++out.violations;
        }
    out.verdict = out.violations > 0 ? "violated" : "consistent";
    return out;
}

ProbeReport probe_c2(const FieldSpec& spec, double h2, std::vector<double> r_grid,
                     std::size_t pair_count, std::size_t reps, Seed seed) {
    spec.validate();
    if (reps < 1000) throw std::invalid_argument("probe_c2: need reps >= 10^3");
    if (pair_count < 2 || pair_count > 12)
        throw std::invalid_argument("probe_c2: pair_count (dyadic separations) must be in [2, 12]");
    if (r_grid.empty()) r_grid = {2.0, 1.0, 0.5, 0.25, 0.125, 0.0625};
    std::sort(r_grid.begin(), r_grid.end(), std::greater<>());

    std::vector<double> seps(pair_count);
    for (std::size_t l = 0; l < pair_count; ++l) seps[l] = std::pow(2.0, -static_cast<double>(l));

    const std::size_t n = spec.grid_n;
    std::vector<std::vector<double>> z(pair_count, std::vector<double>(reps));
    for (std::size_t rep = 0; rep < reps; ++rep) {
        SamplePath path = simulate_field(spec, seed.sub(rep));
        for (std::size_t l = 0; l < pair_count; ++l) {
            std::size_t j = static_cast<std::size_t>(seps[l] * static_cast<double>(n));
            z[l][rep] = euclid(path.at(j), path.at(0), spec.d) / std::pow(seps[l], h2);
        }
    }

    ProbeReport out;
    out.condition = "C2";
    out.exponent = h2;
    out.seed = seed;

    auto prob = [&](std::size_t l, double r) {
        double c = 0;
        for (double v : z[l]) c += v <= r ? 1.0 : 0.0;
        return c / static_cast<double>(reps);
    };

    double k_hat = 0;
    for (double r : r_grid)
        k_hat = std::max(k_hat, prob(0, r) / std::min(1.0, std::pow(r, spec.d)));
    out.fitted_constant = k_hat;

    for (std::size_t l = 0; l < pair_count; ++l)
        for (double r : r_grid) {
            double p = prob(l, r);
            out.curve_scale.push_back(seps[l]);
            out.curve_x.push_back(r);
            out.curve_y.push_back(p);
            ++out.total_checks;
            double bound = k_hat * std::min(1.0, std::pow(r, spec.d));
            double se = std::sqrt(std::max(p * (1 - p), 1e-12) / static_cast<double>(reps));
            if (p > 1.5 * bound + 3.0 * se) ++out.violations;
        }

    // small-r slope on the finest separation (d-dimensional density check)
    {
        std::vector<double> lx, ly;
        for (double r : r_grid) {
            double p = prob(pair_count - 1, r);
            if (r <= 0.5 && p > 20.0 / static_cast<double>(reps)) {
                lx.push_back(std::log(r));
                ly.push_back(std::log(p));
            }
        }
        if (lx.size() >= 3) out.small_ball_slope = linear_fit(lx, ly).slope;
    }

    out.verdict = out.violations > 0 ? "violated" : "consistent";
    return out;
}

double phi_kernel(std::span<const double> x, double r) {
    if (!(r > 0)) throw std::invalid_argument("phi_kernel: r must be > 0");
    double prod = 1.0;
    for (double xj : x) {
        double u = 2.0 * r * xj;
        double factor;
        if (std::fabs(u) < 1e-4) {
            factor = (2.0 * r / std::numbers::pi) * (0.5 - u * u / 24.0);
        } else {
            factor = (1.0 - std::cos(u)) / (2.0 * std::numbers::pi * r * xj * xj);
        }
        prod *= factor;
    }
    return prod;
}

double phi_hat(std::span<const double> z, double r) {
    if (!(r > 0)) throw std::invalid_argument("phi_hat: r must be > 0");
    double prod = 1.0;
    for (double zj : z) {
        double f = 1.0 - std::fabs(zj) / (2.0 * r);
        if (f <= 0) return 0.0;
        prod *= f;
    }
    return prod;
}

ProbeReport fourier_c2_criterion(const FieldSpec& spec, double h2, std::vector<double> r_grid,
                                 std::vector<double> separations, std::size_t mc_reps,
                                 const QuadSpec& quad, Seed seed) {
    spec.validate();
    if (mc_reps < 500) throw std::invalid_argument("fourier_c2_criterion: need mc_reps >= 500");
    if (r_grid.empty()) r_grid = {2.0, 1.0, 0.5, 0.25, 0.125};
    std::sort(r_grid.begin(), r_grid.end(), std::greater<>());
    if (separations.empty()) separations = {1.0, 0.25, 0.0625};
    for (double s : separations)
        if (!(s > 0) || s > 1.0)
            throw std::invalid_argument("fourier_c2_criterion: separations must be in (0, 1]");

    FieldSpec scalar = spec;
    scalar.d = 1;

    ProbeReport out;
    out.condition = "C2-fourier";
    out.exponent = h2;
    out.seed = seed;

    double k_hat = 0;
    std::vector<std::vector<double>> integrals(separations.size(),
                                               std::vector<double>(r_grid.size()));
    for (std::size_t si = 0; si < separations.size(); ++si) {
        const double delta = separations[si];
        const double scale = std::pow(delta, h2);
        // scalar increments (X(delta) - X(0)) / delta^H2 by MC
        std::vector<double> w(mc_reps);
        const std::vector<double> ts = {delta};
        for (std::size_t rep = 0; rep < mc_reps; ++rep)
            w[rep] = simulate_at_times(scalar, ts, seed.sub(7000 + si * mc_reps + rep))[0] / scale;

        const std::size_t n_cf = std::min(quad.cf_samples, w.size());
        const std::size_t stride = std::max<std::size_t>(1, w.size() / n_cf);
        auto cf_at = [&](double x) {
            double c = 0;
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < w.size(); i += stride) { c += std::cos(x * w[i]); ++cnt; }
            return c / static_cast<double>(cnt);
        };

        // effective support: where the cosine average sinks into MC noise
        double x0 = 1.0;
        const double noise = 3.0 / std::sqrt(static_cast<double>(n_cf));
        for (double x = 0.5; x <= 512.0; x *= 1.5)
            if (std::fabs(cf_at(x)) > noise) x0 = x;

        for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
            const double r = r_grid[ri];
            double L = std::max({4.0 * x0, 8.0 / r, 16.0});
            // per-side truncated phi mass is <= 1/(pi r L); widen if over tolerance
            while (2.0 / (std::numbers::pi * r * L) > quad.tol && L < 1e7) L *= 4.0;
            const double trunc_err = 2.0 / (std::numbers::pi * r * L);
            if (trunc_err > quad.tol)
                throw std::runtime_error("fourier_c2_criterion: quadrature truncation above tolerance");

            const std::size_t nodes = quad.nodes | 1;  // odd for Simpson
            const double hstep = L / static_cast<double>(nodes - 1);
            double integral = 0;
            for (std::size_t k = 0; k < nodes; ++k) {
                const double x = static_cast<double>(k) * hstep;
                const double xv[1] = {x};
                double f = phi_kernel(std::span<const double>(xv, 1), r) * cf_at(x);
                double simpson = (k == 0 || k == nodes - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
                integral += simpson * f;
            }
            integral *= hstep / 3.0;
            integral *= 2.0;  // even integrand
            double i_d = std::pow(std::max(integral, 0.0), spec.d);
            integrals[si][ri] = i_d;
            if (si == 0) k_hat = std::max(k_hat, i_d / std::min(1.0, std::pow(r, spec.d)));
        }
    }
    out.fitted_constant = k_hat;

    const double mc_se = 3.0 / std::sqrt(static_cast<double>(mc_reps));
    for (std::size_t si = 0; si < separations.size(); ++si)
        for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
            out.curve_scale.push_back(separations[si]);
            out.curve_x.push_back(r_grid[ri]);
            out.curve_y.push_back(integrals[si][ri]);
            ++out.total_checks;
            double bound = k_hat * std::min(1.0, std::pow(r_grid[ri], spec.d));
            if (integrals[si][ri] > 1.5 * bound + mc_se) ++out.violations;
        }
    out.verdict = out.violations > 0 ? "violated" : "consistent";
    out.notes.push_back("indicator sandwich factors: 2^d below, 2*sqrt(d)*r above");
    return out;
}

}  // namespace fraclab
