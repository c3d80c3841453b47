#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace awenc::num {

// Mixes a seed with stream tags so sub-generators are decorrelated but fully
// reproducible. splitmix64 finalizer.
std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t tag);

template <typename... Tags>
std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t tag, Tags... rest) {
    return seed_mix(seed_mix(seed, tag), rest...);
}

/// Deterministic random source. The engine (mt19937_64) is bit-exact across
/// platforms; the value transforms below are our own so results never depend
/// on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0,1), 53-bit resolution
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // inclusive bounds
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // Box-Muller; second value cached
    double normal(double mean = 0.0, double stddev = 1.0);

    /// Independent generator for a tagged substream.
    Rng fork(std::uint64_t tag) const { return Rng(seed_mix(state_seed_, tag)); }

private:
    friend class RngAccess;
    std::mt19937_64 engine_;
    std::uint64_t state_seed_ = 0;  // set by factory below
    bool have_cached_ = false;
    double cached_ = 0.0;

public:
    /// Factory keeping the originating seed so fork() derives substreams
    /// from the seed rather than engine state.
    static Rng from_seed(std::uint64_t seed) {
        Rng r(seed);
        r.state_seed_ = seed;
        return r;
    }
};

/// Fisher-Yates shuffle driven by Rng (std::shuffle is not reproducible
/// across standard libraries).
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace awenc::num
