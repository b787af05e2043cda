#ifndef HETNET_SIM_RNG_HPP
#define HETNET_SIM_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <random>

// Deterministic substreams and samplers. Every (realization, purpose)
// pair hashes to its own generator, so estimates never depend on
// thread count or evaluation order, and all samplers are implemented
// here rather than via std::*_distribution (whose output is
// implementation-defined) to keep runs reproducible across toolchains.

namespace hetnet::sim::detail {

inline constexpr double kPi = 3.14159265358979323846;

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Stream purposes; combined with a small sub-tag into one 64-bit tag.
enum : std::uint64_t {
    tag_geometry = 1,
    tag_schedule = 2,
    tag_selection = 3,
    tag_channel = 4,
};

inline std::mt19937_64 derive_stream(std::uint64_t seed, std::uint64_t index,
                                     std::uint64_t tag) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ index);
    h = mix64(h ^ tag);
    return std::mt19937_64(h);
}

inline std::mt19937_64 purpose_stream(std::uint64_t seed, std::uint64_t index,
                                      std::uint64_t purpose,
                                      std::uint64_t sub) {
    return derive_stream(seed, index,
                         (purpose << 56) | (sub & 0x00FFFFFFFFFFFFFFull));
}

// Independent child seed for a nested sampler (e.g. one configuration
// within one realization of a sweep).
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b) {
    return mix64(mix64(mix64(seed) ^ a) ^ b);
}

// Tag sub-value identifying a threshold pair, for the grant-selection
// stream shared by all configurations with equal thresholds.
inline std::uint64_t threshold_tag(double t1, double t2) {
    std::uint64_t a, b;
    static_assert(sizeof(double) == sizeof(std::uint64_t));
    std::memcpy(&a, &t1, sizeof a);
    std::memcpy(&b, &t2, sizeof b);
    return mix64(a ^ mix64(b));
}

inline double uniform01(std::mt19937_64& g) {  // [0, 1)
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform_pos(std::mt19937_64& g) {  // (0, 1]
    return (static_cast<double>(g() >> 11) + 1.0) * 0x1.0p-53;
}

inline double exp1(std::mt19937_64& g) { return -std::log(uniform_pos(g)); }

// Unbiased integer in [0, n) by masked rejection.
inline std::uint64_t bounded(std::mt19937_64& g, std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t v;
    do {
        v = g() & mask;
    } while (v >= n);
    return v;
}

inline void normal_pair(std::mt19937_64& g, double& a, double& b) {
    const double r = std::sqrt(2.0 * exp1(g));
    const double th = 2.0 * kPi * uniform01(g);
    a = r * std::cos(th);
    b = r * std::sin(th);
}

// Exact Poisson sampler: sequential inversion for small means, and the
// convolution split Poisson(m) = Poisson(m/2) + Poisson(m - m/2) until
// the leaves are small (exp(-mean) would underflow long before the
// means used here, so the split also keeps the inversion stable).
inline int poisson(std::mt19937_64& g, double mean) {
    if (!(mean > 0.0)) return 0;
    if (mean > 30.0) {
        const double half = 0.5 * mean;
        const int a = poisson(g, half);
        return a + poisson(g, mean - half);
    }
    const double limit = std::exp(-mean);
    double prod = uniform_pos(g);
    int k = 0;
    while (prod > limit) {
        prod *= uniform_pos(g);
        ++k;
    }
    return k;
}

// Gamma(shape, 1) for integer shape, as a sum of unit exponentials.
inline double gamma_int(std::mt19937_64& g, int shape) {
    double s = 0.0;
    for (int i = 0; i < shape; ++i) s += exp1(g);
    return s;
}

// Standard complex Gaussian entries (unit variance per complex entry).
inline void fill_cn(std::mt19937_64& g, std::complex<double>* v, int n) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    for (int i = 0; i < n; ++i) {
        double a, b;
        normal_pair(g, a, b);
        v[i] = std::complex<double>(a * inv_sqrt2, b * inv_sqrt2);
    }
}

}  // namespace hetnet::sim::detail

#endif
