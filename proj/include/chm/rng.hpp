#pragma once

#include <cmath>
#include <cstdint>

namespace chm {

/// SplitMix64 generator. Fully specified arithmetic, so seeded runs produce
/// identical streams on every platform and toolchain, which is part of the
/// reproducibility contract of the perturbation reports.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Standard normal deviate (Box-Muller, one value per pair of uniforms).
    double normal() {
        const double u1 = (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Independent stream for a worker index; streams for distinct indices
    /// do not overlap in practice and depend only on (seed, index).
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 mixer(seed);
        const std::uint64_t a = mixer.next();
        return SplitMix64(a ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    }

  private:
    std::uint64_t state_;
};

}  // namespace chm
