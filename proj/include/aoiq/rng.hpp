#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace aoiq {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from a master seed. Used for the
// arrival/service stream split and for per-grid-point seeds in sweeps.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(seed ^ splitmix64(salt));
}

// mt19937_64 engine with hand-rolled variate transforms so that results are
// bit-identical across standard library implementations (std::*_distribution
// is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }  // [0,1)
    double u01p() { return 1.0 - u01(); }                                   // (0,1]

    double exponential(double rate) { return -std::log(u01p()) / rate; }

    // Standard normal, Marsaglia polar method (second root discarded).
    double normal() {
        for (;;) {
            double u = 2.0 * u01() - 1.0;
            double v = 2.0 * u01() - 1.0;
            double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    // Gamma(shape, rate) by Marsaglia & Tsang (2000), "A simple method for
    // generating gamma variables", ACM TOMS 26(3). The shape<1 case uses the
    // boosting identity G(k) = G(k+1) U^{1/k}.
    double gamma(double shape, double rate) {
        if (shape < 1.0) {
            double g = gamma(shape + 1.0, rate);
            return g * std::pow(u01p(), 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = u01p();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
        }
    }

    // Inverse Gaussian(mean, shape) by Michael, Schucany & Haas (1976),
    // "Generating random variates using transformations with multiple roots".
    double inverse_gaussian(double mean, double shape) {
        const double n = normal();
        const double y = n * n;
        double x = mean + mean * mean * y / (2.0 * shape)
                 - (mean / (2.0 * shape)) * std::sqrt(4.0 * mean * shape * y + mean * mean * y * y);
        if (x <= 0.0) x = std::numeric_limits<double>::min();  // fp guard, exact root is >= 0
        return (u01() <= mean / (mean + x)) ? x : mean * mean / x;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace aoiq
