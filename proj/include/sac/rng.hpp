#pragma once

#include <cmath>
#include <cstdint>

namespace sac {

// splitmix64 finalizer (Steele/Lea/Flood): mixing constants
// 0xbf58476d1ce4e5b9 and 0x94d049bb133111eb.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derive a stream seed from (seed, stream); stable keyed derivation so the
// same (seed, k) pair always names the same instance.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ull));
}

// Splittable 64-bit mixing generator (splitmix64, golden-ratio increment
// 0x9e3779b97f4a7c15). Deterministic per seed on every platform; no
// standard-library distributions are used anywhere so that sequences do not
// depend on the C++ runtime.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    // uniform double in (0, 1]; never 0, so log() is safe
    double next_uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; the second deviate of each pair is cached
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // independent child stream keyed by `stream`; does not advance this state
    SplitMix64 fork(std::uint64_t stream) const {
        return SplitMix64(derive_seed(state_, stream));
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace sac
