#ifndef NSUM_RNG_HPP_
#define NSUM_RNG_HPP_

#include <cstdint>

namespace nsum {

// Deterministic, platform-independent RNG. std::uniform_int_distribution is
// implementation-defined, so all sampling goes through this engine to keep
// "same seed, same instance" reproducible across compilers.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, bound), bound >= 1. Rejection keeps it unbiased.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// Derives an independent stream from a master seed and up to three indices.
// Used for the per-instance / per-sample seed lineage: parallel and serial
// execution consume the same streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    auto mix = [](std::uint64_t h, std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        std::uint64_t z = h;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(master, 0x6a09e667f3bcc909ULL);
    h = mix(h, a);
    h = mix(h, b);
    h = mix(h, c);
    return h;
}

}  // namespace nsum

#endif  // NSUM_RNG_HPP_
