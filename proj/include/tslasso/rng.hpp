#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace tslasso {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic stream derivation: hash(root, a, b). Used for per-cell /
/// per-replicate seeds so that parallel schedules never share a stream.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = root;
    std::uint64_t h = splitmix64(s);
    s ^= a * 0xd1342543de82ef95ULL;
    h ^= splitmix64(s);
    s ^= b * 0xaf251af3b0f025b5ULL;
    h ^= splitmix64(s);
    return h;
}

/// xoshiro256++ with explicit seeding. All samplers below are implemented
/// in-repo (no std:: distributions) so that streams are reproducible
/// bit-for-bit across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform01_open_left() { return 1.0 - uniform01(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::uint64_t uniform_index(std::uint64_t n) {
        // Lemire-style rejection; unbiased for any n >= 1.
        if (n == 0) throw std::invalid_argument("uniform_index: n must be >= 1");
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    /// Standard normal via Box-Muller (the spare is cached).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01_open_left();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * pi() * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Weibull(shape, scale 1) by inverse CDF: (-ln U)^(1/shape).
    double weibull(double shape) {
        if (!(shape > 0.0)) throw std::invalid_argument("weibull: shape must be > 0");
        return std::pow(-std::log(uniform01_open_left()), 1.0 / shape);
    }

    Rng derived(std::uint64_t a, std::uint64_t b = 0) { return Rng(derive_seed(next_u64(), a, b)); }

private:
    static constexpr double pi() { return 3.141592653589793238462643383279502884; }
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace tslasso
