#pragma once

#include "fraclab/rng.hpp"

#include <complex>
#include <vector>

namespace fraclab {

struct StableParams {
    double alpha = 2.0;   // stability index in (0, 2]
    double scale = 1.0;   // sigma > 0
    // symmetric throughout

    void validate() const;
};

// one SaS variate by the angle/exponential transform (exact in law)
double sas_draw(const StableParams& p, RngStream& rng);

// n i.i.d. SaS variates; deterministic given seed
std::vector<double> sample_sas(const StableParams& p, std::size_t n, Seed seed);

// scaffold for shot-noise series of stable integrals: unit-rate Poisson
// arrivals, uniform phases, standard Gaussian mark pairs
struct LePageTerms {
    std::vector<double> gammas;   // ascending arrival times, size K
    std::vector<double> phases;   // uniform on [0, 2*pi)
    std::vector<double> marks;    // 2K standard normals (complex pairs)
};

LePageTerms lepage_terms(double alpha, std::size_t k_terms, Seed seed);

// truncation window eps <= |xi| <= R on the frequency line
struct FrequencyWindow {
    double eps = 0.0;
    double radius = 0.0;

    void validate() const;
    double length() const { return 2.0 * (radius - eps); }
};

FrequencyWindow default_window(std::size_t grid_n);

// Poisson points on the window with rotationally invariant unit-modulus
// marks (nu_rho = point mass at rho = 1, total mass `mark_total_mass`)
struct PoissonPoint {
    double xi = 0.0;
    std::complex<double> mark;
};

std::vector<PoissonPoint> poisson_cloud(const FrequencyWindow& window, double mark_total_mass,
                                        Seed seed);

}  // namespace fraclab
