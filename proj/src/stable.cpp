#include "fraclab/stable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fraclab {

void StableParams::validate() const {
    if (!(alpha > 0.0) || alpha > 2.0)
        throw std::invalid_argument("StableParams: alpha must be in (0, 2]");
    if (!(scale > 0.0)) throw std::invalid_argument("StableParams: scale must be > 0");
}

double sas_draw(const StableParams& p, RngStream& rng) {
    const double u = (rng.u01() - 0.5) * std::numbers::pi;  // uniform on (-pi/2, pi/2)
    if (std::fabs(p.alpha - 1.0) < 1e-12) return p.scale * std::tan(u);
    double w;
    do { w = rng.exp1(); } while (w == 0.0);
    const double a = p.alpha;
    const double t1 = std::sin(a * u) / std::pow(std::cos(u), 1.0 / a);
    const double t2 = std::pow(std::cos(u - a * u) / w, (1.0 - a) / a);
    return p.scale * t1 * t2;
}

std::vector<double> sample_sas(const StableParams& p, std::size_t n, Seed seed) {
    p.validate();
    if (n < 1) throw std::invalid_argument("sample_sas: n must be >= 1");
    RngStream rng(seed);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = sas_draw(p, rng);
    return out;
}

LePageTerms lepage_terms(double alpha, std::size_t k_terms, Seed seed) {
    if (!(alpha > 0.0) || alpha >= 2.0)
        throw std::invalid_argument("lepage_terms: alpha must be in (0, 2)");
    if (k_terms < 100) throw std::invalid_argument("lepage_terms: need K >= 100 terms");
    RngStream rng(seed);
    LePageTerms t;
    t.gammas.resize(k_terms);
    t.phases.resize(k_terms);
    t.marks.resize(2 * k_terms);
    double acc = 0.0;
    for (std::size_t k = 0; k < k_terms; ++k) {
        acc += rng.exp1();
        t.gammas[k] = acc;
    }
    for (std::size_t k = 0; k < k_terms; ++k) t.phases[k] = rng.u01() * 2.0 * std::numbers::pi;
    for (std::size_t k = 0; k < 2 * k_terms; ++k) t.marks[k] = rng.gauss();
    return t;
}

void FrequencyWindow::validate() const {
    if (!(eps > 0.0) || !(radius > eps))
        throw std::invalid_argument("FrequencyWindow: need 0 < eps < R");
}

FrequencyWindow default_window(std::size_t grid_n) {
    // resolvable band of an n-point grid on [0,1]
    FrequencyWindow w;
    w.eps = 2.0 * std::numbers::pi / static_cast<double>(grid_n);
    w.radius = std::numbers::pi * static_cast<double>(grid_n);
    return w;
}

std::vector<PoissonPoint> poisson_cloud(const FrequencyWindow& window, double mark_total_mass,
                                        Seed seed) {
    window.validate();
    if (!(mark_total_mass > 0.0))
        throw std::invalid_argument("poisson_cloud: mark law total mass must be > 0");
    RngStream rng(seed);
    const double mean = window.length() * mark_total_mass;
    const std::uint64_t count = rng.poisson(mean);
    std::vector<PoissonPoint> pts(count);
    for (auto& p : pts) {
        double a = window.eps + (window.radius - window.eps) * rng.u01();
        p.xi = rng.u01() < 0.5 ? -a : a;
        double theta = rng.u01() * 2.0 * std::numbers::pi;
        p.mark = {std::cos(theta), std::sin(theta)};
    }
    return pts;
}

}  // namespace fraclab
