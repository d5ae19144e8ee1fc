// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/keccak.hpp"

#include <cstring>

namespace dpki {

namespace {

constexpr int kRounds = 24;
constexpr std::size_t kRate = 136;  // 1088-bit rate for 256-bit output

constexpr std::uint64_t kRoundConstants[kRounds] = {
    0x0000000000000001ull, 0x0000000000008082ull, 0x800000000000808aull,
    0x8000000080008000ull, 0x000000000000808bull, 0x0000000080000001ull,
    0x8000000080008081ull, 0x8000000000008009ull, 0x000000000000008aull,
    0x0000000000000088ull, 0x0000000080008009ull, 0x000000008000000aull,
    0x000000008000808bull, 0x800000000000008bull, 0x8000000000008089ull,
    0x8000000000008003ull, 0x8000000000008002ull, 0x8000000000000080ull,
    0x000000000000800aull, 0x800000008000000aull, 0x8000000080008081ull,
    0x8000000000008080ull, 0x0000000080000001ull, 0x8000000080008008ull};

constexpr int kRotations[25] = {0,  1,  62, 28, 27, 36, 44, 6,  55, 20, 3,  10, 43,
                                25, 39, 41, 45, 15, 21, 8,  18, 2,  61, 56, 14};

inline std::uint64_t rotl(std::uint64_t v, int r) {
    return r == 0 ? v : (v << r) | (v >> (64 - r));
}

void keccak_f1600(std::uint64_t st[25]) {
    for (int round = 0; round < kRounds; ++round) {
        // theta
        std::uint64_t c[5], d[5];
        for (int x = 0; x < 5; ++x)
            c[x] = st[x] ^ st[x + 5] ^ st[x + 10] ^ st[x + 15] ^ st[x + 20];
        for (int x = 0; x < 5; ++x) {
            d[x] = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5) st[y + x] ^= d[x];
        }
        // rho and pi
        std::uint64_t b[25];
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y) {
                int xp = y;
                int yp = (2 * x + 3 * y) % 5;
                b[yp * 5 + xp] = rotl(st[y * 5 + x], kRotations[y * 5 + x]);
            }
        // chi
        for (int y = 0; y < 25; y += 5)
            for (int x = 0; x < 5; ++x)
                st[y + x] = b[y + x] ^ ((~b[y + (x + 1) % 5]) & b[y + (x + 2) % 5]);
        // iota
        st[0] ^= kRoundConstants[round];
    }
}

}  // namespace

Hash256 keccak256(std::span<const Byte> data) {
    std::uint64_t st[25] = {};
    std::size_t offset = 0;

    // Absorb full blocks.
    while (data.size() - offset >= kRate) {
        for (std::size_t i = 0; i < kRate / 8; ++i) {
            std::uint64_t lane;
            std::memcpy(&lane, data.data() + offset + i * 8, 8);
            st[i] ^= lane;  // little-endian hosts only; fine for this project
        }
        keccak_f1600(st);
        offset += kRate;
    }

    // Final partial block with 0x01 ... 0x80 padding.
    Byte block[kRate] = {};
    std::size_t rem = data.size() - offset;
    std::memcpy(block, data.data() + offset, rem);
    block[rem] = 0x01;
    block[kRate - 1] |= 0x80;
    for (std::size_t i = 0; i < kRate / 8; ++i) {
        std::uint64_t lane;
        std::memcpy(&lane, block + i * 8, 8);
        st[i] ^= lane;
    }
    keccak_f1600(st);

    Hash256 out;
    std::memcpy(out.bytes.data(), st, 32);
    return out;
}

}  // namespace dpki
