#pragma once

#include <cstdint>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fraclab {

// Reproducible stream addressing: distinct (seed, stream) pairs give
// independent generators. Streams are cheap to derive, so every Monte Carlo
// replica gets its own.
struct Seed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    Seed with_stream(std::uint64_t s) const { return Seed{seed, s}; }
    Seed sub(std::uint64_t offset) const { return Seed{seed, stream * 0x9e3779b97f4a7c15ULL + offset + 1}; }
    bool operator==(const Seed&) const = default;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// mt19937_64 seeded from a splitmix64 expansion of (seed, stream).
// All transforms below are hand-rolled so output is bit-stable across
// standard library versions.
class RngStream {
public:
    explicit RngStream(Seed s) {
        std::uint64_t st = s.seed ^ (s.stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
        std::seed_seq seq{
            static_cast<std::uint32_t>(splitmix64(st)), static_cast<std::uint32_t>(splitmix64(st)),
            static_cast<std::uint32_t>(splitmix64(st)), static_cast<std::uint32_t>(splitmix64(st)),
            static_cast<std::uint32_t>(splitmix64(st)), static_cast<std::uint32_t>(splitmix64(st))};
        gen_.seed(seq);
    }

    std::uint64_t next_u64() { return gen_(); }

    // uniform on (0,1): 53-bit mantissa, zero excluded
    double u01() {
        for (;;) {
            double u = (gen_() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

    double uniform(double a, double b) { return a + (b - a) * u01(); }

    double exp1() { return -std::log(u01()); }

    // Marsaglia polar, one spare cached
    double gauss() {
        if (have_spare_) { have_spare_ = false; return spare_; }
        double u, v, q;
        do {
            u = 2.0 * u01() - 1.0;
            v = 2.0 * u01() - 1.0;
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        double f = std::sqrt(-2.0 * std::log(q) / q);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // count of unit-rate arrivals in [0, mean); exact and underflow-free
    std::uint64_t poisson(double mean) {
        if (mean < 0.0) throw std::invalid_argument("poisson: mean must be >= 0");
        double acc = 0.0;
        std::uint64_t k = 0;
        for (;;) {
            acc += exp1();
            if (acc >= mean) return k;
            ++k;
        }
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(u01() * static_cast<double>(n)) % n; }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace fraclab
