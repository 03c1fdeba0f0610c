// Copyright 2026 The qabench Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#ifndef QABENCH_RANDOM_HPP_INCLUDED
#define QABENCH_RANDOM_HPP_INCLUDED

#include <cstdint>
#include <random>
#include <string_view>

namespace qabench {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Top 53 bits of a 64-bit word as a double in [0, 1).
constexpr double unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/**
 * Counter-based stream: draw k is mix64(key + (k + 1) * golden), i.e. the
 * k-th output of a SplitMix64 generator seeded with `key`. Any draw can be
 * computed without producing the ones before it.
 */
class CounterStream {
  public:
    explicit constexpr CounterStream(std::uint64_t key) : key_(key) {}

    constexpr std::uint64_t bits(std::uint64_t counter) const {
        return mix64(key_ + counter * 0x9E3779B97F4A7C15ULL);
    }

    constexpr double uniform(std::uint64_t counter) const { return unit_interval(bits(counter)); }

    constexpr std::uint64_t key() const { return key_; }

  private:
    std::uint64_t key_;
};

/// Seed for member `index` of an ensemble rooted at `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(mix64(seed) ^ mix64(index + 0x5851F42D4C957F2DULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
    return mix64(mix64(seed) ^ fnv1a64(label));
}

/**
 * Per-run generator. Wraps mt19937_64 with platform-independent
 * uniform and bounded-integer mappings, so a seed replays identically
 * across standard libraries.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    std::uint64_t bits() { return engine_(); }

    double uniform() { return unit_interval(engine_()); }

    /// Uniform integer in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        // Lemire's nearly-divisionless rejection.
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool coin() { return (engine_() >> 63) != 0; }

    std::int8_t spin() { return coin() ? std::int8_t{1} : std::int8_t{-1}; }

    template <typename It>
    void shuffle(It first, It last) {
        const auto n = static_cast<std::uint64_t>(last - first);
        for (std::uint64_t i = n; i > 1; --i) {
            const auto j = below(i);
            std::swap(first[i - 1], first[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace qabench

#endif  // QABENCH_RANDOM_HPP_INCLUDED
