#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace escapeflow::rng {

// All randomness in a run derives from one master seed through named
// substreams.  Streams are realized by hashing (seed, stream tag, key parts)
// into a splitmix64 state, so adding a new consumer never perturbs the
// draws of existing ones, and per-vertex draws are independent of
// evaluation order.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += kGolden);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    std::uint64_t s = h ^ (v * 0xD1B54A32D192ED03ULL + kGolden);
    return splitmix64_next(s);
}

enum class Stream : std::uint64_t {
    Weights = 0x5745494748545331ULL,
    Ties    = 0x5449455354524d31ULL,
    Shift   = 0x5348494654535431ULL,
    Init    = 0x494e495453545231ULL,
};

inline std::uint64_t stream_key(std::uint64_t seed, Stream s) {
    return hash_combine(seed, static_cast<std::uint64_t>(s));
}

inline std::uint64_t stream_key(std::uint64_t seed, Stream s, std::uint64_t a) {
    return hash_combine(stream_key(seed, s), a);
}

inline std::uint64_t stream_key(std::uint64_t seed, Stream s, std::uint64_t a,
                                std::uint64_t b) {
    return hash_combine(stream_key(seed, s, a), b);
}

/// Map a raw 64-bit word to a double in [0,1) with 53 random bits.
inline double u01(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// A deterministic sequence of draws rooted at a hashed key.
class Sequence {
public:
    explicit Sequence(std::uint64_t key) : state_(key) {}

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    double next_u01() { return u01(next_u64()); }

    /// Exactly uniform draw in [0, m) via rejection.
    std::uint64_t next_below(std::uint64_t m) {
        if (m == 0) throw std::invalid_argument("next_below: empty range");
        const std::uint64_t threshold = -m % m;  // 2^64 mod m
        for (;;) {
            std::uint64_t x = next_u64();
            if (x >= threshold) return x % m;
        }
    }

private:
    std::uint64_t state_;
};

/// Uniform tie choice for vertex x at step n: index into an argmax set of
/// size m.  Keyed so the result does not depend on evaluation order.
inline std::uint32_t tie_pick(std::uint64_t seed, std::uint64_t step,
                              std::uint64_t vertex, std::uint32_t m) {
    Sequence seq(stream_key(seed, Stream::Ties, step, vertex));
    return static_cast<std::uint32_t>(seq.next_below(m));
}

/// The random shift W: one uniform bit per dimension.
inline std::vector<int> draw_shift(std::uint64_t seed, int d) {
    Sequence seq(stream_key(seed, Stream::Shift));
    std::uint64_t bits = seq.next_u64();
    std::vector<int> w(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i)] = static_cast<int>((bits >> i) & 1u);
    return w;
}

}  // namespace escapeflow::rng
