#pragma once

#include "fraclab/geometry.hpp"
#include "fraclab/rng.hpp"

#include <vector>

namespace fraclab {

// slope-with-uncertainty record produced by every dimension estimator
struct DimEstimate {
    double value = 0.0;
    double std_error = 0.0;
    double scale_min = 0.0;    // finest scale used
    double scale_max = 0.0;    // coarsest scale used
    int n_scales = 0;
    double resid_rms = 0.0;
    bool window_warning = false;   // window touched the resolution floor
    bool log_corrected = false;    // slowly-varying correction adopted
};

// number of eps-mesh cells hit, one entry per scale; scales decreasing.
// Ties at cell boundaries go to the lower-index cell.
std::vector<std::size_t> box_counts(const PointCloud& cloud, const std::vector<double>& scales);

struct BoxOptions {
    // empty scales: auto dyadic levels with the default trim (drop the two
    // finest and one coarsest octave of the usable range)
    std::vector<double> scales;
    bool log_correction = false;
};

DimEstimate box_dimension(const PointCloud& cloud, const BoxOptions& opt = {});

// liminf / limsup split: min and max chord slopes (spans >= min_span_octaves)
// of the log-log count curve, for sets whose box exponents oscillate
struct LowerUpperBox {
    DimEstimate lower;
    DimEstimate upper;
    bool window_insufficient = false;
};
LowerUpperBox lower_upper_box(const PointCloud& cloud, const BoxOptions& opt = {},
                              double min_span_octaves = 3.0);

// per-probe local scaling exponents of mu(B(x, r))
struct LocalExponentField {
    std::vector<double> probe_coords;      // row-major, dim per point
    std::vector<double> exponents;         // lower local dim per probe (limsup criterion)
    std::vector<double> exponents_upper;   // upper local dim per probe (liminf side)
    std::size_t discarded = 0;             // probes with empty smallest ball
    double center = 0.0;                   // bias-corrected common exponent
    bool log_corrected = false;

    double quantile_lower(double q) const;   // summary over `exponents`
    double quantile_upper_tail(double q) const;
};

struct LocalDimOptions {
    std::vector<double> radii;     // decreasing; empty = auto from cloud resolution
    std::size_t n_probe = 64;
    bool log_correction = true;    // recenter per-probe slopes on the corrected fit
    double lower_quantile = 0.05;  // reported quantile levels
    double upper_quantile = 0.95;
};

// slope of log mu(B(x_i, r)) vs log r per probe, upper envelope (limsup
// criterion); probes drawn from mu. dim_H mu ~ lower quantile of exponents,
// dim_H* mu ~ upper quantile.
LocalExponentField measure_local_dims(const DiscreteMeasure& mu, const LocalDimOptions& opt, Seed seed);

// same but with caller-specified probe points (error path: off-support probes
// whose smallest ball is empty are discarded and counted)
LocalExponentField measure_local_dims_at(const DiscreteMeasure& mu, const PointCloud& probes,
                                         const LocalDimOptions& opt);

struct MeasureDimSummary {
    DimEstimate dim_lower;   // dim_H mu proxy
    DimEstimate dim_upper;   // dim_H* mu proxy
    LocalExponentField field;
};
MeasureDimSummary measure_dimension(const DiscreteMeasure& mu, const LocalDimOptions& opt, Seed seed);

// set estimate: natural-measure local dims, lower summary (sup over measures
// approximated by the natural measure)
DimEstimate hausdorff_dim_cloud(const PointCloud& cloud, const DiscreteMeasure& natural,
                                const LocalDimOptions& opt, Seed seed);

// default dyadic radii spanning the resolvable range of the measure support
std::vector<double> default_radii(const DiscreteMeasure& mu, int max_octaves = 8);

}  // namespace fraclab
