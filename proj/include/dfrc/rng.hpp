#pragma once

#include <cstdint>
#include <random>

#include "dfrc/common.hpp"

namespace dfrc {

/// SplitMix64 finalizer. Used to derive well-separated seeds for
/// independent streams from (base seed, stream index) pairs.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seedable random source with a fixed, portable algorithm:
///   engine   std::mt19937_64 (fully specified by the standard)
///   uniform  top 53 bits of one engine draw, mapped to (0, 1)
///   normal   Marsaglia polar method, second variate cached
/// Distribution objects from <random> are avoided because their output is
/// implementation-defined, which would break bit-reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Independent stream `index` of the generator family rooted at `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        return Rng(splitmix64(seed) ^ splitmix64(index + 0xD1B54A32D192ED03ULL));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1).
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    /// Circularly-symmetric complex Gaussian with total variance `variance`
    /// (variance/2 per real component).
    cdouble complex_normal(double variance = 1.0) {
        const double sd = std::sqrt(variance / 2.0);
        const double re = normal();
        const double im = normal();
        return {sd * re, sd * im};
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace dfrc
