// independent oracles used by the tests; these stay deliberately dumb and
// separate from the library implementations they check
#pragma once

#include "fraclab/geometry.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

// exact count of grid atoms j/n (j = 0..n) within closed distance r of x
inline double grid_ball_mass(std::size_t n, double x, double r) {
    std::size_t count = 0;
    for (std::size_t j = 0; j <= n; ++j)
        if (std::fabs(static_cast<double>(j) / n - x) <= r) ++count;
    return static_cast<double>(count) / static_cast<double>(n + 1);
}

// dense Simpson quadrature of int_0^1 min{1, (|x-y|/r)^(-s)} dy
inline double potential_quadrature(double s, double x, double r, std::size_t nodes = 1 << 18) {
    const std::size_t n = nodes | 1;
    const double h = 1.0 / static_cast<double>(n - 1);
    double acc = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double y = k * h;
        double d = std::fabs(x - y);
        double f = d <= r ? 1.0 : std::pow(d / r, -s);
        double w = (k == 0 || k == n - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        acc += w * f;
    }
    return acc * h / 3.0;
}

// analytic count sequence of a two-phase construction: at the k-th
// construction scale the cloud occupies prod m_i cells of width prod r_i
struct PhaseCounts {
    std::vector<double> log_inv_scale;
    std::vector<double> log_count;
};

inline PhaseCounts two_phase_counts(const std::vector<int>& phases, int m_a, double r_a, int m_b,
                                    double r_b) {
    PhaseCounts out;
    double lc = 0, ls = 0;
    for (int ph : phases) {
        lc += std::log(static_cast<double>(ph == 0 ? m_a : m_b));
        ls += std::log(1.0 / (ph == 0 ? r_a : r_b));
        out.log_count.push_back(lc);
        out.log_inv_scale.push_back(ls);
    }
    return out;
}

// extreme chord slopes over spans of >= min_span in log(1/scale)
inline std::pair<double, double> chord_extremes(const PhaseCounts& pc, double min_span) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < pc.log_count.size(); ++i)
        for (std::size_t j = i + 1; j < pc.log_count.size(); ++j) {
            if (pc.log_inv_scale[j] - pc.log_inv_scale[i] < min_span) continue;
            double s = (pc.log_count[j] - pc.log_count[i]) /
                       (pc.log_inv_scale[j] - pc.log_inv_scale[i]);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
    return {lo, hi};
}

// brute-force variance of the discrete chaos sum: a_ij = sum_q w_q f_q(i) f_q(j)
// over the graded Gauss-Legendre nodes, Var = 2 du^2 sum_{i != j} a_ij^2
inline double rosenblatt_variance_direct(double kappa, std::size_t n, double burnin) {
    const double gl_x[4] = {0.0694318442029737, 0.3300094782075719, 0.6699905217924281,
                            0.9305681557970263};
    const double gl_w[4] = {0.1739274225687269, 0.3260725774312731, 0.3260725774312731,
                            0.1739274225687269};
    const double edges[5] = {0.0, 0.125, 0.25, 0.5, 1.0};
    std::vector<double> off, wgt;
    for (int seg = 0; seg < 4; ++seg)
        for (int q = 0; q < 4; ++q) {
            off.push_back(edges[seg] + (edges[seg + 1] - edges[seg]) * gl_x[q]);
            wgt.push_back((edges[seg + 1] - edges[seg]) * gl_w[q]);
        }

    const std::size_t tn = static_cast<std::size_t>(burnin * static_cast<double>(n));
    const std::size_t m = tn + n;
    const double du = 1.0 / static_cast<double>(n);

    std::vector<double> sq, wq;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < off.size(); ++a) {
            sq.push_back((static_cast<double>(k) + off[a]) * du);
            wq.push_back(wgt[a] * du);
        }

    std::vector<double> a_row(m);
    double total = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double ui = (static_cast<double>(i) - static_cast<double>(tn)) * du;
        for (std::size_t j = 0; j < m; ++j) a_row[j] = 0;
        for (std::size_t q = 0; q < sq.size(); ++q) {
            double fi = sq[q] - ui;
            if (fi <= 0) continue;
            fi = std::pow(fi, kappa - 1.0);
            for (std::size_t j = 0; j < m; ++j) {
                double fj = sq[q] - (static_cast<double>(j) - static_cast<double>(tn)) * du;
                if (fj <= 0) continue;
                a_row[j] += wq[q] * fi * std::pow(fj, kappa - 1.0);
            }
        }
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) total += a_row[j] * a_row[j];
    }
    return 2.0 * du * du * total;
}

}  // namespace oracle
