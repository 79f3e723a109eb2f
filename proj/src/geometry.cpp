#include "fraclab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fraclab {

std::uint64_t Grid::cell_count() const {
    return std::uint64_t{1} << (static_cast<unsigned>(level) * static_cast<unsigned>(ambient_dim));
}

std::vector<double> Grid::cell_center(std::uint64_t index) const {
    const std::uint64_t per_axis = cells_per_axis();
    std::vector<double> c(ambient_dim);
    for (int j = ambient_dim - 1; j >= 0; --j) {
        c[j] = origin[j] + (static_cast<double>(index % per_axis) + 0.5) * cell_width();
        index /= per_axis;
    }
    return c;
}

Grid make_dyadic_grid(int level, int ambient_dim) {
    if (level < 1 || level > 24)
        throw std::invalid_argument("make_dyadic_grid: level must be in [1, 24]");
    if (ambient_dim < 1)
        throw std::invalid_argument("make_dyadic_grid: ambient_dim must be >= 1");
    if (level * ambient_dim > 62)
        throw std::invalid_argument("make_dyadic_grid: cell count overflows");
    Grid g;
    g.level = level;
    g.ambient_dim = ambient_dim;
    g.extent = 1.0;
    g.origin.assign(ambient_dim, 0.0);
    return g;
}

void PointCloud::push(const double* p) { coords.insert(coords.end(), p, p + dim); }

void PointCloud::validate() const {
    if (dim < 1) throw std::invalid_argument("PointCloud: dim must be >= 1");
    if (coords.size() % dim != 0)
        throw std::invalid_argument("PointCloud: coordinate arity mismatch");
    if (!weights.empty()) {
        if (weights.size() != n_points())
            throw std::invalid_argument("PointCloud: weights size mismatch");
        for (double w : weights)
            if (w < 0) throw std::invalid_argument("PointCloud: negative weight");
    }
}

void DiscreteMeasure::validate() const {
    support.validate();
    if (masses.size() != support.n_points())
        throw std::invalid_argument("DiscreteMeasure: masses/support size mismatch");
    double s = 0;
    for (double m : masses) {
        if (m <= 0) throw std::invalid_argument("DiscreteMeasure: masses must be positive");
        s += m;
    }
    if (s <= 0 || std::fabs(s - total_mass) > 1e-12 * std::max(1.0, std::fabs(total_mass)))
        throw std::invalid_argument("DiscreteMeasure: total_mass inconsistent");
}

CantorSpec CantorSpec::homogeneous(int m, double r, int depth, int ambient_dim) {
    CantorSpec s;
    s.branches.assign(depth, m);
    s.ratios.assign(depth, r);
    s.depth = depth;
    s.ambient_dim = ambient_dim;
    return s;
}

bool CantorSpec::is_homogeneous() const {
    for (int k = 1; k < depth; ++k)
        if (branches[k] != branches[0] || ratios[k] != ratios[0]) return false;
    return true;
}

void CantorSpec::validate() const {
    if (depth < 1) throw std::invalid_argument("CantorSpec: depth must be >= 1");
    if (ambient_dim < 1) throw std::invalid_argument("CantorSpec: ambient_dim must be >= 1");
    if (static_cast<int>(branches.size()) != depth || static_cast<int>(ratios.size()) != depth)
        throw std::invalid_argument("CantorSpec: per-level sequences must have length depth");
    for (int k = 0; k < depth; ++k) {
        if (branches[k] < 2) throw std::invalid_argument("CantorSpec: m_k must be >= 2");
        if (!(ratios[k] > 0) || branches[k] * ratios[k] > 1.0 + 1e-12)
            throw std::runtime_error("CantorSpec: overlap, need m_k * r_k <= 1");
    }
}

namespace {

// child offsets within a cell of width w: first child at the left edge,
// last flush right, equal gaps between
std::vector<double> child_offsets(int m, double r, double w) {
    std::vector<double> off(m);
    if (m == 1) { off[0] = 0.0; return off; }
    double step = w * (1.0 - r) / (m - 1);
    for (int j = 0; j < m; ++j) off[j] = j * step;
    return off;
}

struct Construction {
    PointCloud cloud;
    DiscreteMeasure measure;
};

Construction build_cantor(const std::vector<int>& branches, const std::vector<double>& ratios,
                          int depth, int N) {
    double expected = 1.0;
    for (int k = 0; k < depth; ++k) expected *= std::pow(static_cast<double>(branches[k]), N);
    if (expected > (1u << 24))
        throw std::invalid_argument("cantor_set: construction exceeds 2^24 points");

    // per-level product construction: each surviving cell splits into m^N
    // subcells (the same offsets applied per axis); representative point is
    // the lexicographic (left) corner
    std::vector<double> pts(static_cast<std::size_t>(N), 0.0);  // one point at origin
    double w = 1.0;
    for (int k = 0; k < depth; ++k) {
        const int m = branches[k];
        const double r = ratios[k];
        auto off = child_offsets(m, r, w);
        const std::size_t n_old = pts.size() / N;
        std::vector<double> next;
        next.reserve(n_old * static_cast<std::size_t>(std::pow(m, N)) * N);
        // lexicographic order: existing point order outer, axis offsets inner
        std::vector<int> digit(N, 0);
        for (std::size_t i = 0; i < n_old; ++i) {
            std::fill(digit.begin(), digit.end(), 0);
            for (;;) {
                for (int j = 0; j < N; ++j) next.push_back(pts[i * N + j] + off[digit[j]]);
                int ax = N - 1;
                while (ax >= 0 && ++digit[ax] == m) digit[ax--] = 0;
                if (ax < 0) break;
            }
        }
        pts.swap(next);
        w *= r;
    }

    Construction out;
    out.cloud.dim = N;
    out.cloud.coords = std::move(pts);
    const std::size_t n = out.cloud.n_points();
    out.measure.support = out.cloud;
    out.measure.masses.assign(n, 1.0 / static_cast<double>(n));
    out.measure.total_mass = 1.0;
    return out;
}

}  // namespace

CantorSet cantor_set(const CantorSpec& spec) {
    spec.validate();
    auto c = build_cantor(spec.branches, spec.ratios, spec.depth, spec.ambient_dim);
    CantorSet out;
    out.cloud = std::move(c.cloud);
    out.measure = std::move(c.measure);
    out.depth = spec.depth;
    if (spec.is_homogeneous())
        out.analytic_dim = std::log(static_cast<double>(spec.branches[0])) / std::log(1.0 / spec.ratios[0]);
    return out;
}

TwoPhaseSet two_phase_cantor(const CantorSpec& spec_a, const CantorSpec& spec_b, int block_growth) {
    spec_a.validate();
    spec_b.validate();
    if (!spec_a.is_homogeneous() || !spec_b.is_homogeneous())
        throw std::invalid_argument("two_phase_cantor: phase specs must be homogeneous");
    if (spec_a.ambient_dim != spec_b.ambient_dim)
        throw std::invalid_argument("two_phase_cantor: ambient dims differ");
    if (spec_a.depth != spec_b.depth)
        throw std::invalid_argument("two_phase_cantor: phase specs must share depth");
    if (block_growth < 2)
        throw std::invalid_argument("two_phase_cantor: block_growth must be >= 2");

    const int depth = spec_a.depth;
    std::vector<int> phases;
    int block = 1, phase = 0;
    while (static_cast<int>(phases.size()) < depth) {
        for (int i = 0; i < block && static_cast<int>(phases.size()) < depth; ++i)
            phases.push_back(phase);
        block *= block_growth;
        phase ^= 1;
    }

    std::vector<int> branches(depth);
    std::vector<double> ratios(depth);
    for (int k = 0; k < depth; ++k) {
        branches[k] = phases[k] == 0 ? spec_a.branches[0] : spec_b.branches[0];
        ratios[k] = phases[k] == 0 ? spec_a.ratios[0] : spec_b.ratios[0];
    }
    auto c = build_cantor(branches, ratios, depth, spec_a.ambient_dim);

    auto dim_of = [](const CantorSpec& s) {
        return std::log(static_cast<double>(s.branches[0])) / std::log(1.0 / s.ratios[0]);
    };
    TwoPhaseSet out;
    out.cloud = std::move(c.cloud);
    out.measure = std::move(c.measure);
    out.phase_per_level = std::move(phases);
    out.depth = depth;
    out.target_dim_hausdorff = std::min(dim_of(spec_a), dim_of(spec_b));
    out.target_dim_packing = std::max(dim_of(spec_a), dim_of(spec_b));
    return out;
}

double ball_mass(const DiscreteMeasure& mu, const std::vector<double>& x, double r) {
    if (!(r > 0)) throw std::invalid_argument("ball_mass: r must be > 0");
    if (static_cast<int>(x.size()) != mu.support.dim)
        throw std::invalid_argument("ball_mass: dimension mismatch");
    const std::size_t n = mu.support.n_points();
    const double r2 = r * r;
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = mu.support.point(i);
        double d2 = 0;
        for (int j = 0; j < mu.support.dim; ++j) d2 += (p[j] - x[j]) * (p[j] - x[j]);
        if (d2 <= r2) s += mu.masses[i];
    }
    return s;
}

double DistanceProfile::ball_mass(double r) const {
    auto it = std::upper_bound(dist.begin(), dist.end(), r);
    if (it == dist.begin()) return 0.0;
    return cum_mass[static_cast<std::size_t>(it - dist.begin()) - 1];
}

DistanceProfile distance_profile(const DiscreteMeasure& mu, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != mu.support.dim)
        throw std::invalid_argument("distance_profile: dimension mismatch");
    const std::size_t n = mu.support.n_points();
    std::vector<std::pair<double, double>> dm(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = mu.support.point(i);
        double d2 = 0;
        for (int j = 0; j < mu.support.dim; ++j) d2 += (p[j] - x[j]) * (p[j] - x[j]);
        dm[i] = {std::sqrt(d2), mu.masses[i]};
    }
    std::sort(dm.begin(), dm.end());
    DistanceProfile out;
    out.dist.resize(n);
    out.cum_mass.resize(n);
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        out.dist[i] = dm[i].first;
        acc += dm[i].second;
        out.cum_mass[i] = acc;
    }
    out.total_mass = acc;
    return out;
}

IntervalSet interval_set(std::size_t n) {
    if (n < 1) throw std::invalid_argument("interval_set: n must be >= 1");
    IntervalSet out;
    out.cloud.dim = 1;
    out.cloud.coords.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        out.cloud.coords[i] = static_cast<double>(i) / static_cast<double>(n);
    out.measure = uniform_measure(out.cloud);
    return out;
}

DiscreteMeasure uniform_measure(const PointCloud& cloud) {
    cloud.validate();
    const std::size_t n = cloud.n_points();
    if (n == 0) throw std::invalid_argument("uniform_measure: empty cloud");
    DiscreteMeasure mu;
    mu.support = cloud;
    mu.masses.assign(n, 1.0 / static_cast<double>(n));
    mu.total_mass = 1.0;
    return mu;
}

}  // namespace fraclab
