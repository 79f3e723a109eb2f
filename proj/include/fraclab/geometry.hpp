#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fraclab {

// dyadic mesh over [0,1]^N; cell centers enumerable in lexicographic order
struct Grid {
    int level = 1;
    int ambient_dim = 1;
    double extent = 1.0;
    std::vector<double> origin;  // size ambient_dim

    std::uint64_t cells_per_axis() const { return std::uint64_t{1} << level; }
    std::uint64_t cell_count() const;
    double cell_width() const { return extent / static_cast<double>(cells_per_axis()); }
    std::vector<double> cell_center(std::uint64_t index) const;
};

Grid make_dyadic_grid(int level, int ambient_dim);

// finite point set in R^n, row-major coordinates, optional weights
struct PointCloud {
    int dim = 1;
    std::vector<double> coords;            // size() == n_points()*dim
    std::vector<double> weights;           // empty or size n_points()

    std::size_t n_points() const { return dim ? coords.size() / dim : 0; }
    const double* point(std::size_t i) const { return coords.data() + i * dim; }
    void push(const double* p);
    void validate() const;
};

// weighted atoms; masses strictly positive
struct DiscreteMeasure {
    PointCloud support;
    std::vector<double> masses;
    double total_mass = 0.0;

    void validate() const;
};

struct CantorSpec {
    std::vector<int> branches;    // m_k >= 2, length == depth
    std::vector<double> ratios;   // r_k in (0, 1/m_k]
    int depth = 1;
    int ambient_dim = 1;

    static CantorSpec homogeneous(int m, double r, int depth, int ambient_dim = 1);
    bool is_homogeneous() const;
    void validate() const;
};

struct CantorSet {
    PointCloud cloud;
    DiscreteMeasure measure;
    int depth = 0;
    // analytic similarity dimension log m / log(1/r); set for homogeneous specs
    std::optional<double> analytic_dim;
};

CantorSet cantor_set(const CantorSpec& spec);

struct TwoPhaseSet {
    PointCloud cloud;
    DiscreteMeasure measure;
    std::vector<int> phase_per_level;  // 0 = A, 1 = B
    double target_dim_hausdorff = 0.0; // min of the two homogeneous dims
    double target_dim_packing = 0.0;   // max
    int depth = 0;
};

// alternates the two homogeneous constructions in blocks of levels whose
// lengths grow geometrically, so lower/upper box exponents separate toward
// min/max of the two dimensions
TwoPhaseSet two_phase_cantor(const CantorSpec& spec_a, const CantorSpec& spec_b, int block_growth);

// mass of the closed Euclidean ball B(x, r)
double ball_mass(const DiscreteMeasure& mu, const std::vector<double>& x, double r);

// sorted distances from one probe point to every atom, with cumulative
// masses; shared engine for ball-mass curves and kernel potentials
struct DistanceProfile {
    std::vector<double> dist;      // ascending
    std::vector<double> cum_mass;  // cum_mass[i] = mass of atoms with distance <= dist[i]
    double total_mass = 0.0;

    double ball_mass(double r) const;
};

DistanceProfile distance_profile(const DiscreteMeasure& mu, const std::vector<double>& x);

// uniform grid cloud over [0,1] at the given resolution (n+1 points), with
// its uniform measure; the discrete stand-in for E = [0,1]
struct IntervalSet {
    PointCloud cloud;
    DiscreteMeasure measure;
};
IntervalSet interval_set(std::size_t n);

DiscreteMeasure uniform_measure(const PointCloud& cloud);

}  // namespace fraclab
