// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_RNG_HPP
#define DPKI_RNG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "dpki/bytes.hpp"

namespace dpki {

// Deterministic RNG. All randomness in the simulator flows from one master
// seed through named forks, so equal seeds give byte-identical runs on any
// platform. std::uniform_int_distribution is implementation-defined, hence
// the modulo draw below.
class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, bound). bound == 0 is a contract violation.
    std::uint64_t below(std::uint64_t bound) {
        // Rejection sampling keeps the draw unbiased.
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    // Uniform in [lo, hi], inclusive.
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    void fill(std::span<Byte> out) {
        std::size_t i = 0;
        while (i < out.size()) {
            std::uint64_t v = engine_();
            for (int k = 0; k < 8 && i < out.size(); ++k, ++i)
                out[i] = static_cast<Byte>(v >> (8 * k));
        }
    }

    // Derives an independent stream seed from this RNG's seed and a label,
    // without disturbing this RNG's own sequence.
    static std::uint64_t fork_seed(std::uint64_t seed, std::string_view label,
                                   std::uint64_t index = 0) {
        // splitmix64-style mixing over seed, label bytes and index.
        std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ull;
        auto mix = [&h](std::uint64_t v) {
            h += v + 0x9e3779b97f4a7c15ull;
            h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
            h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
            h ^= h >> 31;
        };
        for (char c : label) mix(static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
        mix(index);
        return h;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace dpki

#endif  // DPKI_RNG_HPP
