#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace solidangle {

// SplitMix64 finalizer; used to derive independent substreams from
// (seed, index) pairs so population items are pure functions of their
// coordinates regardless of scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t salt = 0) {
    return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ull) ^ splitmix64(salt));
}

// Deterministic random source. std::mt19937_64 output is fully specified
// by the standard, and all mappings below are explicit, so streams are
// reproducible across runs on the same platform (standard distributions
// are deliberately avoided: their mappings are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [lo, hi]. Plain modulo: the bias is irrelevant at
    // the tiny ranges used here and the mapping stays reproducible.
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // Standard normal via Box-Muller on the explicit uniform mapping.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace solidangle
