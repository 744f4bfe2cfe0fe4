#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace scdg {

// Advances the state and returns 64 mixed bits (splitmix64). Fully specified,
// so corpora and fold assignments reproduce bit-for-bit on any platform;
// <random> distributions are implementation-defined and would not.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Deterministic random stream. split() derives an independent child stream
// without advancing the parent, so per-family / per-fold work can run in any
// order (or in parallel) and still produce identical results.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // one warm-up round so nearby seeds do not yield nearby first outputs
        splitmix64_next(state_);
    }

    std::uint64_t next() { return splitmix64_next(state_); }

    // Uniform in [0, n); n must be nonzero. Rejection sampling, bias-free.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform integer in [lo, hi], inclusive.
    std::uint32_t range_u32(std::uint32_t lo, std::uint32_t hi) {
        return lo + static_cast<std::uint32_t>(below(std::uint64_t(hi) - lo + 1));
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double unit() { return double(next() >> 11) * 0x1.0p-53; }

    Rng split(std::uint64_t tag) const {
        std::uint64_t s = state_ ^ (0x9e3779b97f4a7c15ull * (tag + 0x632be59bd9b4e019ull));
        splitmix64_next(s);
        return Rng(s);
    }

    Rng split(std::string_view tag) const { return split(fnv1a64(tag)); }

private:
    std::uint64_t state_;
};

// Fisher-Yates with an explicit source of randomness (std::shuffle is
// implementation-defined and therefore not reproducible across toolchains).
template <typename T>
void deterministic_shuffle(std::vector<T>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        using std::swap;
        swap(values[i - 1], values[j]);
    }
}

}  // namespace scdg
