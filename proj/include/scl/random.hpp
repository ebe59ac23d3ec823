#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace scl {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a over a label, so stream names map to stable integers.
constexpr std::uint64_t label_hash(std::string_view label) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::string_view label) noexcept {
    return mix64(base ^ mix64(label_hash(label)));
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) noexcept {
    return mix64(base ^ mix64(salt + 0x632be59bd9b4e019ULL));
}

/// Seeded random stream with platform-independent draws.
///
/// std::mt19937_64 output is fully specified by the standard, the
/// distribution classes are not; the bounded draws below are done by hand
/// so a seed yields the same values with every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi], inclusive. Rejection sampling, no modulo bias.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (hi <= lo) return lo;
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} - span + 1) % span;
        std::uint64_t draw = next();
        while (draw < limit) draw = next();
        return lo + static_cast<std::int64_t>(draw % span);
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    template <class Container>
    void shuffle(Container& c) {
        for (std::size_t i = c.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
            using std::swap;
            swap(c[i - 1], c[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace scl
