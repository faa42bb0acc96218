// Counter-based splittable RNG. Every draw is a pure function of
// (seed, stream, counter), so experiments are reproducible bit-for-bit
// regardless of evaluation order and can be sharded across streams.
#pragma once

#include <cstdint>
#include <cmath>

namespace specdim {

namespace detail {
// SplitMix64 finalizer; full-period 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(detail::mix64(seed ^ (0xda3e39cb94b95bdbULL * (stream + 1)))),
          counter_(0) {}

    // Independent generator for sample index i under the same seed.
    static Rng keyed(std::uint64_t seed, std::uint64_t index) {
        return Rng(seed, index);
    }

    std::uint64_t next_u64() {
        return detail::mix64(key_ ^ detail::mix64(++counter_));
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    // Integer in [0, n). n must be > 0; modulo bias is < 2^-40 for n < 2^24.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    double normal() {
        // Box-Muller; consumes two draws.
        double u1 = next_double(), u2 = next_double();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace specdim
