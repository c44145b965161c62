#pragma once

// Deterministic random numbers for seeded, auditable trials.
//
// Generator: xoshiro256++ with splitmix64 state expansion of a 64-bit seed.
// Normal deviates come from Box-Muller on two uniforms. Trial i of a batch
// uses seed = base_seed XOR (0x9e3779b97f4a7c15 * i); the multiplier is odd,
// so distinct trials always get distinct seeds. The generator identifier
// below is recorded in result files so reruns can be audited.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace mub {

inline constexpr const char* kGeneratorId =
    "xoshiro256++(splitmix64-init);box-muller;trial_seed=base_seed^(0x9e3779b97f4a7c15*trial_id)";

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_id) {
    return base_seed ^ (kGoldenGamma * trial_id);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (std::uint64_t& word : state_) word = splitmix64(z);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
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

    // uniform on (0, 1]; safe as a log argument
    double uniform_open_01() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // uniform on [0, 1)
    double uniform_01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    std::pair<double, double> standard_normal_pair() {
        const double u1 = uniform_open_01();
        const double u2 = uniform_01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& z) {
        z += 0x9e3779b97f4a7c15ULL;
        std::uint64_t r = z;
        r = (r ^ (r >> 30)) * 0xbf58476d1ce4e5b9ULL;
        r = (r ^ (r >> 27)) * 0x94d049bb133111ebULL;
        return r ^ (r >> 31);
    }

    std::uint64_t state_[4];
};

}  // namespace mub
