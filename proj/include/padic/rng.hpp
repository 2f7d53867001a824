#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace padic {

// Deterministic generation scheme for procedural objects keyed by balls.
// The scheme is frozen: identical (seed, ball encoding) inputs must produce
// identical draws on every platform and in every release.
//
//   stream seed  s = splitmix64(user_seed XOR fnv1a64(encode_ball(B)))
//   draws        repeated splitmix64 steps starting from s
//   uniform(k)   rejection below floor(2^64/k)*k, then mod k
//   permutation  Fisher-Yates, index descending
//   matrix       row-major uniform residues, whole matrix rejected while
//                det == 0 mod p, then translation vector componentwise

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    return splitmix64_next(x);
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64_next(state_); }

    // Uniform integer in [0, k), k >= 1, by rejection.
    std::uint64_t uniform(std::uint64_t k) {
        if (k == 0) return 0;
        const std::uint64_t threshold = (~std::uint64_t{0} / k) * k;
        for (;;) {
            std::uint64_t w = next();
            if (w < threshold) return w % k;
        }
    }

    // Fisher-Yates with descending index over {0,...,n-1}.
    std::vector<std::uint32_t> permutation(std::uint32_t n) {
        std::vector<std::uint32_t> a(n);
        for (std::uint32_t i = 0; i < n; ++i) a[i] = i;
        for (std::uint32_t i = n; i-- > 1;) {
            std::uint64_t j = uniform(i + 1);
            std::swap(a[i], a[static_cast<std::uint32_t>(j)]);
        }
        return a;
    }

private:
    std::uint64_t state_;
};

// Stream for a (user seed, ball encoding) pair.
inline SplitMix64 ball_stream(std::uint64_t user_seed, std::string_view ball_encoding) {
    return SplitMix64(splitmix64(user_seed ^ fnv1a64(ball_encoding)));
}

} // namespace padic
