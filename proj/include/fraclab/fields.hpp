#pragma once

#include "fraclab/geometry.hpp"
#include "fraclab/rng.hpp"
#include "fraclab/stable.hpp"

#include <string>
#include <vector>

namespace fraclab {

enum class Law { fbm, lfsm, hfsm, rhflm, rosenblatt };

std::string law_name(Law law);
Law law_from_name(const std::string& name);

struct FieldSpec {
    Law law = Law::fbm;
    double H = 0.5;          // self-similarity index; for rosenblatt H = 2*kappa
    double alpha = 2.0;      // stable index (lfsm, hfsm)
    double kappa = 0.35;     // rosenblatt parameter in (1/4, 1/2)
    int d = 1;               // target dimension
    std::size_t grid_n = 1024;  // time points, power of two

    // simulation knobs
    double lfsm_burnin = 8.0;        // moving-average history T
    std::size_t hfsm_terms = 10000;  // LePage truncation K
    double rhflm_mark_mass = 1.0;    // total mass of the unit-modulus mark law
    double rosenblatt_burnin = 8.0;
    FrequencyWindow window;          // hfsm / rhflm; zero = grid defaults

    double hurst() const { return law == Law::rosenblatt ? 2.0 * kappa : H; }
    void validate() const;
};

struct SamplePath {
    std::vector<double> times;   // j / n, j = 0..n
    std::vector<double> values;  // (n+1) * d, row-major
    FieldSpec spec;
    Seed seed;

    std::size_t n_steps() const { return times.size() - 1; }
    int dim() const { return spec.d; }
    const double* at(std::size_t j) const { return values.data() + j * spec.d; }
    void validate() const;
};

// exact-in-law Gaussian path via circulant embedding of fractional
// Gaussian noise; eigenvalues cached per (H, n)
SamplePath simulate_fbm(double H, std::size_t n, Seed seed);

// Riemann-sum moving average against SaS increments on [-T, 1] by fast
// convolution; requires alpha*H > 1 (paths are a.s. unbounded otherwise)
SamplePath simulate_lfsm(double alpha, double H, std::size_t n, Seed seed, double burnin = 8.0);

// truncated LePage series of the harmonizable stable integral; frequencies
// from a power-law proposal that exactly flattens the spectral weight
SamplePath simulate_hfsm(double alpha, double H, std::size_t n, Seed seed,
                         std::size_t k_terms = 10000, FrequencyWindow window = {});

// shot-noise sum over a Poisson frequency cloud; the compensator vanishes
// for the rotationally invariant mark law (zero mean), which is the default
SamplePath simulate_rhflm(double H, std::size_t n, Seed seed, FrequencyWindow window = {},
                          double mark_mass = 1.0);

// discretized double Wiener-Ito sum with diagonal excluded; graded
// Gauss-Legendre nodes per cell; normalized so Var Y(1) = 1 against the
// exact variance of the discrete chaos (see rosenblatt_chaos_variance)
SamplePath simulate_rosenblatt(double kappa, std::size_t n, Seed seed, double burnin = 8.0);

// exact Var of the *discrete* chaos sum at t = 1 before normalization;
// exposed because it doubles as the normalization oracle
double rosenblatt_chaos_variance(double kappa, std::size_t n, double burnin = 8.0);
// same restricted to the first `cells_used` cells of [0,1] (variance of Y(t))
double rosenblatt_chaos_variance_partial(double kappa, std::size_t n, std::size_t cells_used,
                                         double burnin = 8.0);

SamplePath simulate(const FieldSpec& spec, Seed seed);         // d = 1
SamplePath simulate_field(const FieldSpec& spec, Seed seed);   // d components, derived seeds

// componentwise assembly of d independent copies
SamplePath vectorize(const std::vector<SamplePath>& components);

// values of the scalar law at selected grid times (t must be multiples of
// 1/grid_n); avoids full-grid evaluation for the series-based laws
std::vector<double> simulate_at_times(const FieldSpec& spec, const std::vector<double>& ts, Seed seed);

// image set X(E): E in [0,1], snapped to the path grid; duplicates retained
PointCloud image_points(const SamplePath& path, const PointCloud& E);

// image measure mu_X = mu o X^{-1}: masses relocated to X(t); support must
// lie on the path grid (snap first if needed)
DiscreteMeasure image_measure(const SamplePath& path, const DiscreteMeasure& mu);

// project measure support onto the grid of size n (atoms may merge)
DiscreteMeasure snap_to_grid(const DiscreteMeasure& mu, std::size_t n);

}  // namespace fraclab
