#include "fraclab/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fraclab {

namespace {

struct PlanEntry {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
};

std::mutex g_fft_mutex;
std::map<std::size_t, PlanEntry>& plan_cache() {
    static std::map<std::size_t, PlanEntry> cache;
    return cache;
}

PlanEntry& entry_for(std::size_t n) {
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    PlanEntry e;
    e.buf = fftw_alloc_complex(n);
    if (!e.buf) throw std::runtime_error("fft: allocation failed");
    e.fwd = fftw_plan_dft_1d(static_cast<int>(n), e.buf, e.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    e.inv = fftw_plan_dft_1d(static_cast<int>(n), e.buf, e.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    return cache.emplace(n, e).first->second;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

void fft(std::vector<std::complex<double>>& a, bool inverse) {
    if (a.empty()) throw std::invalid_argument("fft: empty input");
    std::lock_guard<std::mutex> lock(g_fft_mutex);
    PlanEntry& e = entry_for(a.size());
    std::memcpy(e.buf, a.data(), a.size() * sizeof(fftw_complex));
    fftw_execute(inverse ? e.inv : e.fwd);
    std::memcpy(a.data(), e.buf, a.size() * sizeof(fftw_complex));
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("convolve: empty input");
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t m = next_pow2(out_len);
    std::vector<std::complex<double>> fa(m), fb(m);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
    fft(fa, false);
    fft(fb, false);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    fft(fa, true);
    std::vector<double> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real() / static_cast<double>(m);
    return out;
}

}  // namespace fraclab
