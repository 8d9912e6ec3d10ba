#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace robustlm {

// SplitMix64 finalizer; used to derive well-separated seeds from a master
// seed without coupling between replicate streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Counter-based seed derivation: replicate r / stream s of a master seed is
// reproducible in isolation.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate,
                                 std::uint64_t stream = 0) {
    std::uint64_t h = splitmix64(master ^ 0x6A09E667F3BCC909ULL);
    h = splitmix64(h ^ splitmix64(replicate));
    h = splitmix64(h ^ splitmix64(stream ^ 0xBB67AE8584CAA73BULL));
    return h;
}

// Seeded generator owned per call site. Gaussian draws use Box-Muller on
// explicit 53-bit uniforms so the stream depends only on mt19937_64, which
// the standard pins down exactly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform on (0,1), never exactly 0 or 1
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace robustlm
