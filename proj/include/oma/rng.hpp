#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <string_view>

namespace oma {

// 64-bit FNV-1a. Used to derive stable sub-seeds; std::hash is not
// guaranteed stable across standard library versions.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t h = 14695981039346656037ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) {
    char buf[8];
    std::memcpy(buf, &seed, 8);
    return fnv1a64(tag, fnv1a64(std::string_view(buf, 8)));
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t n) {
    char buf[8];
    std::memcpy(buf, &n, 8);
    return mix_seed(seed, std::string_view(buf, 8));
}

// Seeded RNG with the few draws the toolkit needs. All sampling is
// hand-rolled on top of mt19937_64 so a given seed reproduces the same
// stream regardless of standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform in [0, n), n > 0; rejection sampling to avoid modulo bias
    std::size_t index(std::size_t n) {
        const std::uint64_t m = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % m;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return static_cast<std::size_t>(v % m);
    }

    // uniform in [0, 1)
    double real() { return (eng_() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double real(double lo, double hi) { return lo + (hi - lo) * real(); }

    // Knuth's product-of-uniforms method; normal approximation for large
    // lambda where exp(-lambda) underflows.
    std::uint64_t poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        if (lambda > 500.0) {
            double g = std::sqrt(lambda) * gaussian() + lambda;
            return g < 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(g));
        }
        const double threshold = std::exp(-lambda);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= real();
        } while (p > threshold);
        return k - 1;
    }

    double gaussian() {
        // Box-Muller, one value per call
        double u1 = real();
        while (u1 == 0.0) u1 = real();
        double u2 = real();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace oma
