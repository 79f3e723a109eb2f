#include "fraclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fraclab {

LinFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 matched points");
    const std::size_t n = x.size();
    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < n; ++i) { xm += x[i]; ym += y[i]; }
    xm /= n; ym /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    if (sxx == 0) throw std::invalid_argument("linear_fit: degenerate x");
    LinFit f;
    f.slope = sxy / sxx;
    f.intercept = ym - f.slope * xm;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - f.intercept - f.slope * x[i];
        ss += r * r;
    }
    f.resid_rms = std::sqrt(ss / n);
    f.slope_se = n > 2 ? std::sqrt(ss / (n - 2) / sxx) : 0.0;
    return f;
}

namespace {

// given b, least squares for (c1, c2 >= 0) in exp(b*x - y) ~ c1 + c2*x;
// returns SSE of b*x - log(c1 + c2*x) - y, or infinity if infeasible
double logcorr_sse(std::span<const double> x, std::span<const double> y, double b) {
    const std::size_t n = x.size();
    double sx = 0, sxx = 0, st = 0, sxt = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double t = std::exp(b * x[i] - y[i]);
        sx += x[i]; sxx += x[i] * x[i]; st += t; sxt += x[i] * t;
    }
    double det = n * sxx - sx * sx;
    double c2 = (n * sxt - sx * st) / det;
    double c1 = (st - c2 * sx) / n;
    if (c2 < 0) { c2 = 0; c1 = st / n; }
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = c1 + c2 * x[i];
        if (pred <= 0) return std::numeric_limits<double>::infinity();
        double r = b * x[i] - std::log(pred) - y[i];
        sse += r * r;
    }
    return sse;
}

}  // namespace

ExponentFit fit_exponent(std::span<const double> x, std::span<const double> y,
                         bool allow_log_correction, double b_max) {
    LinFit lf = linear_fit(x, y);
    ExponentFit out;
    out.plain = lf.slope;
    out.se = lf.slope_se;
    out.value = lf.slope;
    out.resid_rms = lf.resid_rms;
    if (!allow_log_correction || x.size() < 4) return out;

    double best_b = lf.slope, best_sse = std::numeric_limits<double>::infinity();
    const double lo = std::max(0.0, lf.slope - 0.1), hi = b_max + 1e-12;
    for (double b = lo; b <= hi; b += 0.0025) {
        double sse = logcorr_sse(x, y, b);
        if (sse < best_sse) { best_sse = sse; best_b = b; }
    }
    double plain_sse = lf.resid_rms * lf.resid_rms * x.size();
    // adopt only on a decisive residual win; a marginal one is curve noise
    if (best_sse < 0.25 * plain_sse && best_b > lf.slope) {
        out.value = best_b;
        out.resid_rms = std::sqrt(best_sse / x.size());
        out.corrected_used = true;
    }
    return out;
}

namespace {

std::vector<std::size_t> hull_chain(std::span<const double> x, std::span<const double> y, double sign) {
    // monotone chain; sign=+1 keeps the lower hull, -1 the upper hull
    std::vector<std::size_t> h;
    for (std::size_t i = 0; i < x.size(); ++i) {
        while (h.size() >= 2) {
            std::size_t a = h[h.size() - 2], b = h[h.size() - 1];
            double cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a]);
            if (sign * cross <= 0) h.pop_back();
            else break;
        }
        h.push_back(i);
    }
    return h;
}

}  // namespace

std::vector<std::size_t> lower_envelope(std::span<const double> x, std::span<const double> y) {
    return hull_chain(x, y, +1.0);
}

std::vector<std::size_t> upper_envelope(std::span<const double> x, std::span<const double> y) {
    return hull_chain(x, y, -1.0);
}

double envelope_slope(std::span<const double> x, std::span<const double> y, bool upper) {
    auto idx = upper ? upper_envelope(x, y) : lower_envelope(x, y);
    if (idx.size() < 2) {
        // flat or single-point envelope: fall back to endpoint chord
        return (y.back() - y.front()) / (x.back() - x.front());
    }
    std::vector<double> ex, ey;
    for (auto i : idx) { ex.push_back(x[i]); ey.push_back(y[i]); }
    return linear_fit(ex, ey).slope;
}

std::pair<double, double> extreme_chord_slopes(std::span<const double> x,
                                               std::span<const double> y,
                                               double min_span) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (x[j] - x[i] < min_span) continue;
            double s = (y[j] - y[i]) / (x[j] - x[i]);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
    if (!std::isfinite(lo)) throw std::invalid_argument("extreme_chord_slopes: window too narrow");
    return {lo, hi};
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("quantile: empty sample");
    std::sort(v.begin(), v.end());
    if (q <= 0) return v.front();
    if (q >= 1) return v.back();
    double pos = q * (v.size() - 1);
    std::size_t i = static_cast<std::size_t>(pos);
    double frac = pos - i;
    return i + 1 < v.size() ? v[i] * (1 - frac) + v[i + 1] * frac : v[i];
}

double mean(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / v.size();
}

double variance(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    double m = mean(v), s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
}

namespace {

double ks_critical(double level) {
    if (level == 0.01) return 1.62762;
    if (level == 0.05) return 1.35810;
    if (level == 0.10) return 1.22385;
    throw std::invalid_argument("ks: supported levels are 0.01, 0.05, 0.10");
}

}  // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double level) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i; else ++j;
        double fa = static_cast<double>(i) / a.size();
        double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::fabs(fa - fb));
    }
    KsResult r;
    r.statistic = d;
    double n = static_cast<double>(a.size()), m = static_cast<double>(b.size());
    r.threshold = ks_critical(level) * std::sqrt((n + m) / (n * m));
    r.pass = r.statistic <= r.threshold;
    return r;
}

KsResult ks_one_sample(std::vector<double> a, double (*cdf)(double), double level) {
    if (a.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    std::sort(a.begin(), a.end());
    double d = 0;
    const double n = static_cast<double>(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        double f = cdf(a[i]);
        d = std::max(d, std::fabs(f - i / n));
        d = std::max(d, std::fabs((i + 1) / n - f));
    }
    KsResult r;
    r.statistic = d;
    r.threshold = ks_critical(level) / std::sqrt(n);
    r.pass = r.statistic <= r.threshold;
    return r;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace fraclab
