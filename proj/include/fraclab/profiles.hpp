#pragma once

#include "fraclab/estimators.hpp"
#include "fraclab/geometry.hpp"
#include "fraclab/rng.hpp"

#include <vector>

namespace fraclab {

// kernel psi_s(x) = min{1, ||x||^{-s}}
double kernel_psi(double s, const std::vector<double>& x);

// potential F_s^mu(x, r) = sum_i m_i psi_s((x - y_i)/r)
double potential_F(const DiscreteMeasure& mu, double s, const std::vector<double>& x, double r);

// potential curve over radii from a precomputed distance profile:
// F(r) = mass(d <= r) + r^s * sum_{d > r} m_i d^{-s}
std::vector<double> potential_curve(const DistanceProfile& dp, double s,
                                    const std::vector<double>& radii);

struct ProfileOptions {
    std::vector<double> radii;     // decreasing; empty = auto
    std::size_t n_probe = 48;
    bool log_correction = true;
    double lower_quantile = 0.05;
    double upper_quantile = 0.95;
};

struct ProfileEstimate {
    double dim_lower = 0.0;   // Dim_s proxy (lower quantile over probes)
    double dim_upper = 0.0;   // Dim_s* proxy (upper quantile)
    double std_error = 0.0;
    bool degenerate = false;  // constant potential encountered
    bool log_corrected = false;
};

// per-probe exponent = slope of the lower envelope of log F_s vs log r
// (liminf criterion); estimates clamped into the feasible range
// [0, min(s, N)].
ProfileEstimate profile_measure(const DiscreteMeasure& mu, double s, const ProfileOptions& opt, Seed seed);

// set profile through the natural measure; exact for homogeneous
// self-similar sets, a lower bound otherwise (flag it when calling on
// inhomogeneous sets)
ProfileEstimate profile_set(const DiscreteMeasure& natural, double s, const ProfileOptions& opt, Seed seed);

struct ProfileCurve {
    std::vector<double> s_grid;
    std::vector<double> values;
    std::vector<double> std_errors;
    std::vector<double> upper_values;  // Dim_s* track
    std::string kind;                  // "measure-lower" | "measure-upper" | "set"
};

// pointwise profile over an s-grid with shared probes and radii
ProfileCurve profile_curve(const DiscreteMeasure& mu, const std::vector<double>& s_grid,
                           const ProfileOptions& opt, Seed seed);

// default grid: log-spaced points in [0.05, N + 1]
std::vector<double> default_s_grid(int ambient_dim, std::size_t count = 32);

}  // namespace fraclab
