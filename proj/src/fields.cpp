#include "fraclab/fields.hpp"

#include "fraclab/fft.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace fraclab {

std::string law_name(Law law) {
    switch (law) {
        case Law::fbm: return "fbm";
        case Law::lfsm: return "lfsm";
        case Law::hfsm: return "hfsm";
        case Law::rhflm: return "rhflm";
        case Law::rosenblatt: return "rosenblatt";
    }
    return "?";
}

Law law_from_name(const std::string& name) {
    if (name == "fbm") return Law::fbm;
    if (name == "lfsm") return Law::lfsm;
    if (name == "hfsm") return Law::hfsm;
    if (name == "rhflm") return Law::rhflm;
    if (name == "rosenblatt") return Law::rosenblatt;
    throw std::invalid_argument("unknown law: " + name);
}

namespace {

bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void FieldSpec::validate() const {
    if (d < 1) throw std::invalid_argument("FieldSpec: d must be >= 1");
    if (!is_pow2(grid_n)) throw std::invalid_argument("FieldSpec: grid_n must be a power of two");
    switch (law) {
        case Law::fbm:
            if (!(H > 0 && H < 1)) throw std::invalid_argument("FieldSpec: fbm needs H in (0,1)");
            if (grid_n < 256 || grid_n > (1u << 22))
                throw std::invalid_argument("FieldSpec: fbm grid_n must be in [2^8, 2^22]");
            break;
        case Law::lfsm:
            if (!(H > 0 && H < 1)) throw std::invalid_argument("FieldSpec: lfsm needs H in (0,1)");
            if (!(alpha > 1 && alpha <= 2))
                throw std::invalid_argument("FieldSpec: lfsm needs alpha in (1, 2]");
            if (!(alpha * H > 1))
                throw std::invalid_argument(
                    "FieldSpec: lfsm needs alpha*H > 1; otherwise paths are a.s. unbounded on every interval");
            break;
        case Law::hfsm:
            if (!(H > 0 && H < 1)) throw std::invalid_argument("FieldSpec: hfsm needs H in (0,1)");
            if (!(alpha > 0 && alpha < 2))
                throw std::invalid_argument("FieldSpec: hfsm needs alpha in (0, 2)");
            break;
        case Law::rhflm:
            if (!(H > 0 && H < 1)) throw std::invalid_argument("FieldSpec: rhflm needs H in (0,1)");
            break;
        case Law::rosenblatt:
            if (!(kappa > 0.25 && kappa < 0.5))
                throw std::invalid_argument("FieldSpec: rosenblatt needs kappa in (1/4, 1/2)");
            if (grid_n > 4096)
                throw std::invalid_argument("FieldSpec: rosenblatt grid_n capped at 2^12 (O(n^2) chaos sum)");
            break;
    }
}

void SamplePath::validate() const {
    if (times.empty() || values.size() != times.size() * static_cast<std::size_t>(spec.d))
        throw std::invalid_argument("SamplePath: shape mismatch");
    for (int j = 0; j < spec.d; ++j)
        if (values[j] != 0.0) throw std::invalid_argument("SamplePath: X(0) must be 0");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("SamplePath: non-finite value");
}

// ---------------------------------------------------------------- fbm

namespace {

struct FbmKey {
    double H;
    std::size_t n;
    bool operator<(const FbmKey& o) const { return H < o.H || (H == o.H && n < o.n); }
};

struct FbmEigs {
    std::size_t m = 0;           // embedding size
    std::vector<double> eigs;    // nonnegative circulant eigenvalues
};

std::mutex g_fbm_mutex;

double fgn_autocov(double H, double k) {
    return 0.5 * (std::pow(std::fabs(k + 1), 2 * H) - 2 * std::pow(std::fabs(k), 2 * H) +
                  std::pow(std::fabs(k - 1), 2 * H));
}

const FbmEigs& fbm_eigs(double H, std::size_t n) {
    static std::map<FbmKey, FbmEigs> cache;
    std::lock_guard<std::mutex> lock(g_fbm_mutex);
    auto it = cache.find({H, n});
    if (it != cache.end()) return it->second;

    for (std::size_t m = 2 * n; m <= 8 * n; m *= 2) {
        std::vector<std::complex<double>> c(m);
        for (std::size_t j = 0; j < m; ++j) {
            double lag = static_cast<double>(std::min(j, m - j));
            c[j] = fgn_autocov(H, lag);
        }
        fft(c, false);
        double max_eig = 0;
        for (auto& z : c) max_eig = std::max(max_eig, z.real());
        double worst = 0;
        for (auto& z : c) worst = std::min(worst, z.real());
        if (worst >= -1e-8 * max_eig) {
            FbmEigs e;
            e.m = m;
            e.eigs.resize(m);
            for (std::size_t j = 0; j < m; ++j) e.eigs[j] = std::max(0.0, c[j].real());
            return cache.emplace(FbmKey{H, n}, std::move(e)).first->second;
        }
    }
    throw std::runtime_error("simulate_fbm: circulant embedding not nonnegative definite");
}

}  // namespace

SamplePath simulate_fbm(double H, std::size_t n, Seed seed) {
    FieldSpec spec;
    spec.law = Law::fbm;
    spec.H = H;
    spec.grid_n = n;
    spec.validate();

    const FbmEigs& e = fbm_eigs(H, n);
    const std::size_t m = e.m;
    RngStream rng(seed);
    std::vector<std::complex<double>> a(m);
    a[0] = std::sqrt(e.eigs[0]) * rng.gauss();
    a[m / 2] = std::sqrt(e.eigs[m / 2]) * rng.gauss();
    for (std::size_t j = 1; j < m / 2; ++j) {
        double s = std::sqrt(e.eigs[j] / 2.0);
        std::complex<double> z{s * rng.gauss(), s * rng.gauss()};
        a[j] = z;
        a[m - j] = std::conj(z);
    }
    fft(a, false);

    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
    const double step_scale = std::pow(static_cast<double>(n), -H);
    SamplePath path;
    path.spec = spec;
    path.seed = seed;
    path.times.resize(n + 1);
    path.values.resize(n + 1);
    path.values[0] = 0.0;
    double acc = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        path.times[k] = static_cast<double>(k) / static_cast<double>(n);
        if (k > 0) {
            acc += a[k - 1].real() * inv_sqrt_m;
            path.values[k] = step_scale * acc;
        }
    }
    return path;
}

// ---------------------------------------------------------------- lfsm

SamplePath simulate_lfsm(double alpha, double H, std::size_t n, Seed seed, double burnin) {
    FieldSpec spec;
    spec.law = Law::lfsm;
    spec.alpha = alpha;
    spec.H = H;
    spec.grid_n = n;
    spec.lfsm_burnin = burnin;
    spec.validate();
    if (!(burnin >= 1)) throw std::invalid_argument("simulate_lfsm: burnin must be >= 1");

    const std::size_t tn = static_cast<std::size_t>(burnin * static_cast<double>(n));
    const std::size_t m = tn + n;  // increments on [-T, 1)
    const double exponent = H - 1.0 / alpha;

    std::vector<double> kernel(m + 1, 0.0);
    for (std::size_t l = 1; l <= m; ++l)
        kernel[l] = std::pow(static_cast<double>(l) / static_cast<double>(n), exponent);

    StableParams p{alpha, std::pow(1.0 / static_cast<double>(n), 1.0 / alpha)};
    std::vector<double> dm = sample_sas(p, m, seed);

    std::vector<double> conv = convolve(kernel, dm);  // conv[i] = sum_j kernel[i-j] dm[j]

    SamplePath path;
    path.spec = spec;
    path.seed = seed;
    path.times.resize(n + 1);
    path.values.resize(n + 1);
    const double base = conv[tn];
    for (std::size_t k = 0; k <= n; ++k) {
        path.times[k] = static_cast<double>(k) / static_cast<double>(n);
        path.values[k] = conv[tn + k] - base;
    }
    path.values[0] = 0.0;
    return path;
}

// ---------------------------------------------------------------- hfsm

namespace {

struct HfsmTerms {
    std::vector<double> coef;       // C * Gamma_k^{-1/alpha}
    std::vector<double> freq;       // lambda_k
    std::vector<std::complex<double>> mark;  // isotropic complex Gaussian
};

HfsmTerms hfsm_draw_terms(double alpha, double h_exp, std::size_t K, const FrequencyWindow& w,
                          Seed seed) {
    HfsmTerms t;
    LePageTerms lp = lepage_terms(alpha, K, seed.sub(1));
    RngStream rng(seed.sub(2));
    const double ha = h_exp * alpha;
    const double lo = std::pow(w.eps, -ha), hi = std::pow(w.radius, -ha);
    // proposal q(lambda) ~ |lambda|^{-1-H*alpha} on the window: raised to
    // 1/alpha it cancels the spectral weight exactly, so every term is bounded
    const double cq = ha / (2.0 * (lo - hi));
    const double c = std::pow(cq, -1.0 / alpha);
    t.coef.resize(K);
    t.freq.resize(K);
    t.mark.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        t.coef[k] = c * std::pow(lp.gammas[k], -1.0 / alpha);
        double u = rng.u01();
        double mag = std::pow(lo - u * (lo - hi), -1.0 / ha);
        t.freq[k] = rng.u01() < 0.5 ? -mag : mag;
        t.mark[k] = {lp.marks[2 * k] / std::sqrt(2.0), lp.marks[2 * k + 1] / std::sqrt(2.0)};
    }
    return t;
}

}  // namespace

SamplePath simulate_hfsm(double alpha, double H, std::size_t n, Seed seed,
                         std::size_t k_terms, FrequencyWindow window) {
    FieldSpec spec;
    spec.law = Law::hfsm;
    spec.alpha = alpha;
    spec.H = H;
    spec.grid_n = n;
    spec.hfsm_terms = k_terms;
    spec.validate();
    if (k_terms < 100) throw std::invalid_argument("simulate_hfsm: K below floor of 100 terms");
    if (window.radius == 0.0) window = default_window(n);
    window.validate();
    spec.window = window;

    HfsmTerms t = hfsm_draw_terms(alpha, H + 1.0 / alpha, k_terms, window, seed);

    SamplePath path;
    path.spec = spec;
    path.seed = seed;
    path.times.resize(n + 1);
    path.values.assign(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k)
        path.times[k] = static_cast<double>(k) / static_cast<double>(n);

    for (std::size_t i = 0; i < k_terms; ++i) {
        const std::complex<double> rot{std::cos(t.freq[i] / n), std::sin(t.freq[i] / n)};
        std::complex<double> w{1.0, 0.0};
        const std::complex<double> g = t.mark[i];
        const double c = t.coef[i];
        for (std::size_t j = 1; j <= n; ++j) {
            w *= rot;
            path.values[j] += c * (g * (w - 1.0)).real();
        }
    }
    return path;
}

// ---------------------------------------------------------------- rhflm

SamplePath simulate_rhflm(double H, std::size_t n, Seed seed, FrequencyWindow window,
                          double mark_mass) {
    FieldSpec spec;
    spec.law = Law::rhflm;
    spec.H = H;
    spec.grid_n = n;
    spec.rhflm_mark_mass = mark_mass;
    spec.validate();
    if (window.radius == 0.0) window = default_window(n);
    window.validate();
    spec.window = window;

    auto cloud = poisson_cloud(window, mark_mass, seed);

    SamplePath path;
    path.spec = spec;
    path.seed = seed;
    path.times.resize(n + 1);
    path.values.assign(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k)
        path.times[k] = static_cast<double>(k) / static_cast<double>(n);

    for (const auto& p : cloud) {
        const double wgt = 2.0 * std::pow(std::fabs(p.xi), -(H + 0.5));
        const std::complex<double> rot{std::cos(-p.xi / n), std::sin(-p.xi / n)};
        std::complex<double> w{1.0, 0.0};
        for (std::size_t j = 1; j <= n; ++j) {
            w *= rot;
            path.values[j] += wgt * ((w - 1.0) * p.mark).real();
        }
    }
    return path;
}

// ---------------------------------------------------------------- rosenblatt

namespace {

// graded Gauss-Legendre nodes on (0,1): 4-point rule on each of
// [0,1/8], [1/8,1/4], [1/4,1/2], [1/2,1]; the grading resolves the
// (s-u)^(kappa-1) edge singularity of the chaos kernel
struct CellRule {
    std::vector<double> off;  // node offsets in (0,1)
    std::vector<double> wgt;  // weights summing to 1
};

const CellRule& cell_rule() {
    static CellRule rule = [] {
        const double gl_x[4] = {0.0694318442029737, 0.3300094782075719,
                                0.6699905217924281, 0.9305681557970263};
        const double gl_w[4] = {0.1739274225687269, 0.3260725774312731,
                                0.3260725774312731, 0.1739274225687269};
        const double edges[5] = {0.0, 0.125, 0.25, 0.5, 1.0};
        CellRule r;
        for (int seg = 0; seg < 4; ++seg) {
            double a = edges[seg], b = edges[seg + 1];
            for (int q = 0; q < 4; ++q) {
                r.off.push_back(a + (b - a) * gl_x[q]);
                r.wgt.push_back((b - a) * gl_w[q]);
            }
        }
        return r;
    }();
    return rule;
}

struct RosenKey {
    double kappa;
    std::size_t n;
    std::size_t cells;
    double burnin;
    bool operator<(const RosenKey& o) const {
        return std::tie(kappa, n, cells, burnin) < std::tie(o.kappa, o.n, o.cells, o.burnin);
    }
};

std::mutex g_rosen_mutex;

double rosen_variance_impl(double kappa, std::size_t n, std::size_t cells_used, double burnin) {
    const auto& rule = cell_rule();
    const std::size_t A = rule.off.size();
    const std::size_t tn = static_cast<std::size_t>(burnin * static_cast<double>(n));
    const std::size_t m = tn + n;
    const double du = 1.0 / static_cast<double>(n);

    // tab[a][p] = (p + off_a)^(kappa-1)
    std::vector<std::vector<double>> tab(A, std::vector<double>(m));
    for (std::size_t a = 0; a < A; ++a)
        for (std::size_t p = 0; p < m; ++p)
            tab[a][p] = std::pow(static_cast<double>(p) + rule.off[a], kappa - 1.0);

    const double wq_scale = du * std::pow(du, 2.0 * (kappa - 1.0));
    const std::size_t ncells = cells_used;

    // Var = 4 du^2 sum_{d>=1} sum_{j'} a(d, j')^2 with
    // a(d, j') = sum_a w_a [T_a(d, ncells-1-j') - (j'<0) T_a(d, -j'-1)]
    auto worker = [&](std::size_t d_lo, std::size_t d_hi) {
        std::vector<double> acc(m);
        double partial = 0.0;
        for (std::size_t d = d_lo; d < d_hi; ++d) {
            const std::size_t len = m - d;
            std::fill(acc.begin(), acc.begin() + len, 0.0);
            for (std::size_t a = 0; a < A; ++a) {
                const double w = rule.wgt[a] * wq_scale;
                const double* t = tab[a].data();
                double run = 0.0;
                for (std::size_t l = 0; l < len; ++l) {
                    run += t[l] * t[l + d];
                    acc[l] += w * run;  // acc[l] accumulates T(d, l) over node offsets
                }
            }
            // j' ranges over cell positions of the larger index: j' in [-tn + d, ncells)
            const std::int64_t j_lo = -static_cast<std::int64_t>(tn) + static_cast<std::int64_t>(d);
            for (std::int64_t jp = j_lo; jp < static_cast<std::int64_t>(ncells); ++jp) {
                const std::int64_t Lhi = static_cast<std::int64_t>(ncells) - 1 - jp;
                if (Lhi < 0 || Lhi >= static_cast<std::int64_t>(len)) continue;
                double v = acc[Lhi];
                if (jp < 0) {
                    const std::int64_t Llo = -jp - 1;
                    if (Llo < static_cast<std::int64_t>(len)) v -= acc[Llo];
                }
                partial += v * v;
            }
        }
        return partial;
    };

    // fixed chunking keeps the reduction order deterministic
    const std::size_t chunks = 8;
    std::vector<double> partials(chunks, 0.0);
    std::vector<std::thread> threads;
    const std::size_t per = (m - 1 + chunks - 1) / chunks;
    for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t lo = 1 + c * per, hi = std::min<std::size_t>(1 + (c + 1) * per, m);
        if (lo >= hi) continue;
        threads.emplace_back([&partials, c, lo, hi, &worker] { partials[c] = worker(lo, hi); });
    }
    for (auto& th : threads) th.join();
    double total = 0.0;
    for (double p : partials) total += p;
    return 4.0 * du * du * total;
}

double rosen_variance_cached(double kappa, std::size_t n, std::size_t cells_used, double burnin) {
    static std::map<RosenKey, double> cache;
    {
        std::lock_guard<std::mutex> lock(g_rosen_mutex);
        auto it = cache.find({kappa, n, cells_used, burnin});
        if (it != cache.end()) return it->second;
    }
    double v = rosen_variance_impl(kappa, n, cells_used, burnin);
    std::lock_guard<std::mutex> lock(g_rosen_mutex);
    cache.emplace(RosenKey{kappa, n, cells_used, burnin}, v);
    return v;
}

}  // namespace

double rosenblatt_chaos_variance(double kappa, std::size_t n, double burnin) {
    return rosen_variance_cached(kappa, n, n, burnin);
}

double rosenblatt_chaos_variance_partial(double kappa, std::size_t n, std::size_t cells_used,
                                         double burnin) {
    if (cells_used < 1 || cells_used > n)
        throw std::invalid_argument("rosenblatt_chaos_variance_partial: cells out of range");
    return rosen_variance_cached(kappa, n, cells_used, burnin);
}

namespace {

// cached per (kappa, n, burnin): kernel-channel spectra so each path costs
// two forward transforms plus one inverse per channel
struct RosenEngine {
    std::size_t n = 0, tn = 0, m = 0, p = 0;  // p = fft size
    std::vector<std::vector<std::complex<double>>> tab_hat, tab2_hat;
};

std::mutex g_rosen_engine_mutex;

const RosenEngine& rosen_engine(double kappa, std::size_t n, double burnin) {
    struct Key {
        double kappa, burnin;
        std::size_t n;
        bool operator<(const Key& o) const {
            return std::tie(kappa, burnin, n) < std::tie(o.kappa, o.burnin, o.n);
        }
    };
    static std::map<Key, RosenEngine> cache;
    std::lock_guard<std::mutex> lock(g_rosen_engine_mutex);
    auto it = cache.find(Key{kappa, burnin, n});
    if (it != cache.end()) return it->second;

    const auto& rule = cell_rule();
    RosenEngine e;
    e.n = n;
    e.tn = static_cast<std::size_t>(burnin * static_cast<double>(n));
    e.m = e.tn + n;
    e.p = 1;
    while (e.p < 2 * e.m) e.p <<= 1;
    for (std::size_t a = 0; a < rule.off.size(); ++a) {
        std::vector<std::complex<double>> t(e.p), t2(e.p);
        for (std::size_t q = 0; q < e.m; ++q) {
            double v = std::pow(static_cast<double>(q) + rule.off[a], kappa - 1.0);
            t[q] = v;
            t2[q] = v * v;
        }
        fft(t, false);
        fft(t2, false);
        e.tab_hat.push_back(std::move(t));
        e.tab2_hat.push_back(std::move(t2));
    }
    return cache.emplace(Key{kappa, burnin, n}, std::move(e)).first->second;
}

}  // namespace

SamplePath simulate_rosenblatt(double kappa, std::size_t n, Seed seed, double burnin) {
    FieldSpec spec;
    spec.law = Law::rosenblatt;
    spec.kappa = kappa;
    spec.H = 2.0 * kappa;
    spec.grid_n = n;
    spec.rosenblatt_burnin = burnin;
    spec.validate();

    const auto& rule = cell_rule();
    const RosenEngine& eng = rosen_engine(kappa, n, burnin);
    const std::size_t A = rule.off.size();
    const std::size_t tn = eng.tn, m = eng.m, P = eng.p;
    const double du = 1.0 / static_cast<double>(n);

    RngStream rng(seed);
    std::vector<std::complex<double>> xi_hat(P), xi2_hat(P);
    for (std::size_t i = 0; i < m; ++i) {
        double g = rng.gauss();
        xi_hat[i] = g;
        xi2_hat[i] = g * g;
    }
    fft(xi_hat, false);
    fft(xi2_hat, false);

    // G at node (k, a) = du^(kappa-1) sqrt(du) * sum_p tab[a][p] xi[k+tn-p],
    // all k at once by convolution; D is the diagonal compensation with
    // tab^2 against xi^2
    std::vector<double> cell_sum(n, 0.0);
    std::vector<std::complex<double>> scratch(P);
    const double gscale = std::pow(du, kappa - 1.0) * std::sqrt(du);
    const double dscale = std::pow(du, 2.0 * (kappa - 1.0)) * du;
    const double inv_p = 1.0 / static_cast<double>(P);
    for (std::size_t a = 0; a < A; ++a) {
        for (std::size_t i = 0; i < P; ++i) scratch[i] = eng.tab_hat[a][i] * xi_hat[i];
        fft(scratch, true);
        const double w = rule.wgt[a] * du;
        std::vector<double> gv(n);
        for (std::size_t k = 0; k < n; ++k)
            gv[k] = gscale * scratch[k + tn].real() * inv_p;
        for (std::size_t i = 0; i < P; ++i) scratch[i] = eng.tab2_hat[a][i] * xi2_hat[i];
        fft(scratch, true);
        for (std::size_t k = 0; k < n; ++k) {
            const double dd = dscale * scratch[k + tn].real() * inv_p;
            cell_sum[k] += w * (gv[k] * gv[k] - dd);
        }
    }

    const double norm = 1.0 / std::sqrt(rosenblatt_chaos_variance(kappa, n, burnin));
    SamplePath path;
    path.spec = spec;
    path.seed = seed;
    path.times.resize(n + 1);
    path.values.resize(n + 1);
    path.values[0] = 0.0;
    path.times[0] = 0.0;
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        acc += cell_sum[k - 1];
        path.times[k] = static_cast<double>(k) / static_cast<double>(n);
        path.values[k] = norm * acc;
    }
    return path;
}

// ---------------------------------------------------------------- assembly

SamplePath simulate(const FieldSpec& spec, Seed seed) {
    spec.validate();
    switch (spec.law) {
        case Law::fbm: return simulate_fbm(spec.H, spec.grid_n, seed);
        case Law::lfsm: return simulate_lfsm(spec.alpha, spec.H, spec.grid_n, seed, spec.lfsm_burnin);
        case Law::hfsm:
            return simulate_hfsm(spec.alpha, spec.H, spec.grid_n, seed, spec.hfsm_terms, spec.window);
        case Law::rhflm:
            return simulate_rhflm(spec.H, spec.grid_n, seed, spec.window, spec.rhflm_mark_mass);
        case Law::rosenblatt:
            return simulate_rosenblatt(spec.kappa, spec.grid_n, seed, spec.rosenblatt_burnin);
    }
    throw std::logic_error("simulate: unreachable");
}

SamplePath simulate_field(const FieldSpec& spec, Seed seed) {
    spec.validate();
    if (spec.d == 1) return simulate(spec, seed);
    std::vector<SamplePath> comps;
    comps.reserve(spec.d);
    FieldSpec scalar = spec;
    scalar.d = 1;
    for (int j = 0; j < spec.d; ++j) comps.push_back(simulate(scalar, seed.sub(1000 + j)));
    return vectorize(comps);
}

SamplePath vectorize(const std::vector<SamplePath>& components) {
    if (components.empty()) throw std::invalid_argument("vectorize: no components");
    const auto& first = components.front();
    for (const auto& c : components) {
        if (c.spec.d != 1) throw std::invalid_argument("vectorize: components must be scalar");
        if (c.times != first.times) throw std::invalid_argument("vectorize: mismatched grids");
        FieldSpec a = c.spec, b = first.spec;
        Seed sa = c.seed;
        a.d = b.d = 1;
        if (law_name(a.law) != law_name(b.law) || a.H != b.H || a.alpha != b.alpha ||
            a.kappa != b.kappa || a.grid_n != b.grid_n)
            throw std::invalid_argument("vectorize: component specs differ");
        (void)sa;
    }
    for (std::size_t i = 0; i < components.size(); ++i)
        for (std::size_t j = i + 1; j < components.size(); ++j)
            if (components[i].seed == components[j].seed)
                throw std::invalid_argument("vectorize: components share a seed (independence violation)");

    SamplePath out;
    out.spec = first.spec;
    out.spec.d = static_cast<int>(components.size());
    out.seed = first.seed;
    out.times = first.times;
    const std::size_t np = first.times.size();
    out.values.resize(np * components.size());
    for (std::size_t k = 0; k < np; ++k)
        for (std::size_t j = 0; j < components.size(); ++j)
            out.values[k * components.size() + j] = components[j].values[k];
    return out;
}

std::vector<double> simulate_at_times(const FieldSpec& spec, const std::vector<double>& ts, Seed seed) {
    spec.validate();
    if (spec.d != 1) throw std::invalid_argument("simulate_at_times: scalar law only");
    const std::size_t n = spec.grid_n;
    std::vector<std::size_t> idx(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double g = ts[i] * static_cast<double>(n);
        std::size_t j = static_cast<std::size_t>(std::llround(g));
        if (std::fabs(g - static_cast<double>(j)) > 1e-9 || ts[i] < 0 || ts[i] > 1)
            throw std::invalid_argument("simulate_at_times: t must be a grid multiple in [0,1]");
        idx[i] = j;
    }

    std::vector<double> out(ts.size(), 0.0);
    if (spec.law == Law::hfsm) {
        FrequencyWindow w = spec.window.radius == 0.0 ? default_window(n) : spec.window;
        HfsmTerms t = hfsm_draw_terms(spec.alpha, spec.H + 1.0 / spec.alpha, spec.hfsm_terms, w, seed);
        for (std::size_t k = 0; k < t.coef.size(); ++k)
            for (std::size_t i = 0; i < ts.size(); ++i) {
                std::complex<double> e{std::cos(ts[i] * t.freq[k]), std::sin(ts[i] * t.freq[k])};
                out[i] += t.coef[k] * (t.mark[k] * (e - 1.0)).real();
            }
        return out;
    }
    if (spec.law == Law::rhflm) {
        FrequencyWindow w = spec.window.radius == 0.0 ? default_window(n) : spec.window;
        auto cloud = poisson_cloud(w, spec.rhflm_mark_mass, seed);
        for (const auto& p : cloud) {
            const double wgt = 2.0 * std::pow(std::fabs(p.xi), -(spec.H + 0.5));
            for (std::size_t i = 0; i < ts.size(); ++i) {
                std::complex<double> e{std::cos(-ts[i] * p.xi), std::sin(-ts[i] * p.xi)};
                out[i] += wgt * ((e - 1.0) * p.mark).real();
            }
        }
        return out;
    }
    SamplePath path = simulate(spec, seed);
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] = path.values[idx[i]];
    return out;
}

PointCloud image_points(const SamplePath& path, const PointCloud& E) {
    if (E.dim != 1) throw std::invalid_argument("image_points: E must lie in [0,1] (dim 1)");
    const std::size_t n = path.n_steps();
    PointCloud out;
    out.dim = path.spec.d;
    out.coords.reserve(E.n_points() * path.spec.d);
    for (std::size_t i = 0; i < E.n_points(); ++i) {
        double t = E.point(i)[0];
        if (t < -1e-9 || t > 1.0 + 1e-9)
            throw std::invalid_argument("image_points: E must be contained in [0,1]");
        std::size_t j = static_cast<std::size_t>(std::llround(std::clamp(t, 0.0, 1.0) * n));
        out.push(path.at(j));
    }
    return out;
}

DiscreteMeasure image_measure(const SamplePath& path, const DiscreteMeasure& mu) {
    mu.validate();
    if (mu.support.dim != 1) throw std::invalid_argument("image_measure: mu must live on [0,1]");
    const std::size_t n = path.n_steps();
    DiscreteMeasure out;
    out.support.dim = path.spec.d;
    out.masses = mu.masses;
    out.total_mass = mu.total_mass;
    for (std::size_t i = 0; i < mu.support.n_points(); ++i) {
        double t = mu.support.point(i)[0];
        double g = t * static_cast<double>(n);
        std::size_t j = static_cast<std::size_t>(std::llround(g));
        if (t < -1e-9 || t > 1.0 + 1e-9 || std::fabs(g - static_cast<double>(j)) > 1e-6)
            throw std::invalid_argument("image_measure: support off the path grid");
        out.support.push(path.at(j));
    }
    return out;
}

DiscreteMeasure snap_to_grid(const DiscreteMeasure& mu, std::size_t n) {
    mu.validate();
    if (mu.support.dim != 1) throw std::invalid_argument("snap_to_grid: 1-d support only");
    std::map<std::size_t, double> agg;
    for (std::size_t i = 0; i < mu.support.n_points(); ++i) {
        double t = mu.support.point(i)[0];
        if (t < -1e-9 || t > 1.0 + 1e-9)
            throw std::invalid_argument("snap_to_grid: support must be in [0,1]");
        std::size_t j = static_cast<std::size_t>(std::llround(std::clamp(t, 0.0, 1.0) * n));
        agg[j] += mu.masses[i];
    }
    DiscreteMeasure out;
    out.support.dim = 1;
    double total = 0.0;
    for (const auto& [j, mass] : agg) {
        double t = static_cast<double>(j) / static_cast<double>(n);
        out.support.coords.push_back(t);
        out.masses.push_back(mass);
        total += mass;
    }
    out.total_mass = total;
    return out;
}

}  // namespace fraclab
