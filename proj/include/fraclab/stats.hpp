#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fraclab {

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double resid_rms = 0.0;
};

LinFit linear_fit(std::span<const double> x, std::span<const double> y);

// Scaling-exponent fit for log-log curves.  The plain estimate is the LS
// slope.  The corrected estimate fits  y = b*x - log(c1 + c2*x)  (c2 >= 0),
// which absorbs slowly varying factors like the 1/log(1/eps) occupancy
// deficit of critical (saturated) image sets; on clean power laws it reduces
// to the plain slope.  `corrected_used` is true when the log model cut the
// residual enough to be adopted.
struct ExponentFit {
    double value = 0.0;       // adopted exponent
    double plain = 0.0;       // uncorrected LS slope
    double se = 0.0;          // LS slope standard error (reported for both)
    double resid_rms = 0.0;
    bool corrected_used = false;
};

ExponentFit fit_exponent(std::span<const double> x, std::span<const double> y,
                         bool allow_log_correction, double b_max);

// Indices of the lower / upper convex envelope (monotone chain) of a curve
// given by strictly increasing x.
std::vector<std::size_t> lower_envelope(std::span<const double> x, std::span<const double> y);
std::vector<std::size_t> upper_envelope(std::span<const double> x, std::span<const double> y);

// LS slope restricted to envelope points.
double envelope_slope(std::span<const double> x, std::span<const double> y, bool upper);

// min / max chord slope over spans of at least `min_span` in x
std::pair<double, double> extreme_chord_slopes(std::span<const double> x,
                                               std::span<const double> y,
                                               double min_span);

double quantile(std::vector<double> v, double q);  // by-value: sorts a copy
double mean(std::span<const double> v);
double variance(std::span<const double> v);  // unbiased

struct KsResult {
    double statistic = 0.0;
    double threshold = 0.0;  // critical value at the requested level
    bool pass = false;       // statistic <= threshold
};

// two-sample Kolmogorov-Smirnov at level in {0.01, 0.05, 0.10}
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double level);

// one-sample against a cdf
KsResult ks_one_sample(std::vector<double> a, double (*cdf)(double), double level);

double normal_cdf(double x);

}  // namespace fraclab
