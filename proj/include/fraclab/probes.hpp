#pragma once

#include "fraclab/fields.hpp"
#include "fraclab/rng.hpp"

#include <span>
#include <string>
#include <vector>

namespace fraclab {

// one verdict row of a condition probe; curves kept for serialization
struct ProbeReport {
    std::string condition;        // "C1" | "C2" | "C2-fourier"
    double exponent = 0.0;        // the probed H1 or H2
    double beta_hat = 0.0;        // fitted tail exponent (C1)
    double fitted_constant = 0.0; // prefactor fitted on the coarsest scale
    double small_ball_slope = 0.0;  // log p vs log r slope at small r (C2)
    std::size_t violations = 0;
    std::size_t total_checks = 0;
    std::string verdict;          // "consistent" | "violated"
    Seed seed;
    std::vector<std::string> notes;

    // tail / envelope curves: one row per (scale, x, y)
    std::vector<double> curve_scale, curve_x, curve_y;

    bool violated() const { return verdict == "violated"; }
};

// local maximal inequality: tail of sup_{|s| <= h} ||X(s) - X(0)|| / h^H1
// against K u^{-beta}; the fitted constant absorbs scale, so the probe can
// refute but never certify
ProbeReport probe_c1(const FieldSpec& spec, double h1, std::vector<double> h_grid,
                     std::vector<double> u_grid, std::size_t reps, Seed seed);

// small-ball bound: P{||X(delta) - X(0)|| <= delta^H2 r} against
// K min{1, r^d} across dyadic separations delta (all <= 1)
ProbeReport probe_c2(const FieldSpec& spec, double h2, std::vector<double> r_grid,
                     std::size_t pair_count, std::size_t reps, Seed seed);

// phi_r(x) = prod_j (1 - cos(2 r x_j)) / (2 pi r x_j^2), with the removable
// singularity at x_j = 0 filled in
double phi_kernel(std::span<const double> x, double r);

// Fourier transform: prod_j (1 - |z_j| / (2r))^+
double phi_hat(std::span<const double> z, double r);

struct QuadSpec {
    double tol = 0.005;          // admissible truncation mass of phi_r
    std::size_t nodes = 4096;    // Simpson nodes on [0, L]
    std::size_t cf_samples = 2000;  // MC samples used in the cosine average
};

// left side of the criterion: int phi_r(x) E e^{i<x, dX>/|t-s|^H2} dx,
// characteristic function estimated by an MC cosine average (symmetric
// laws), quadrature over the effective support of phi_r; the verdict is
// checked against K min{1, r^d} exactly as in probe_c2
ProbeReport fourier_c2_criterion(const FieldSpec& spec, double h2, std::vector<double> r_grid,
                                 std::vector<double> separations, std::size_t mc_reps,
                                 const QuadSpec& quad, Seed seed);

}  // namespace fraclab
