// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_BYTES_HPP
#define DPKI_BYTES_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpki {

using Byte = std::uint8_t;
using Bytes = std::vector<Byte>;

std::string to_hex(std::span<const Byte> data);
Bytes from_hex(const std::string& hex);  // throws std::invalid_argument on bad input

// Fixed-width byte string with a phantom tag so a Pid never silently becomes
// an Address.
template <class Tag, std::size_t N>
struct ByteArray {
    std::array<Byte, N> bytes{};

    static constexpr std::size_t size() { return N; }

    auto operator<=>(const ByteArray&) const = default;

    bool is_zero() const {
        for (Byte b : bytes)
            if (b != 0) return false;
        return true;
    }

    std::string hex() const { return to_hex(bytes); }

    static ByteArray from_hex(const std::string& h) {
        Bytes raw = dpki::from_hex(h);
        if (raw.size() != N) throw std::invalid_argument("hex length mismatch");
        ByteArray out;
        std::copy(raw.begin(), raw.end(), out.bytes.begin());
        return out;
    }
};

using Hash256 = ByteArray<struct Hash256Tag, 32>;
using Address = ByteArray<struct AddressTag, 20>;
using Pid = ByteArray<struct PidTag, 16>;

// FNV-1a over the raw bytes; good enough for hash-map keys.
template <class Tag, std::size_t N>
struct ByteArrayHasher {
    std::size_t operator()(const ByteArray<Tag, N>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (Byte b : v.bytes) h = (h ^ b) * 1099511628211ull;
        return h;
    }
};

using PidHasher = ByteArrayHasher<struct PidTag, 16>;
using AddressHasher = ByteArrayHasher<struct AddressTag, 20>;
using Hash256Hasher = ByteArrayHasher<struct Hash256Tag, 32>;

void append_u32_le(Bytes& out, std::uint32_t v);
void append_u64_le(Bytes& out, std::uint64_t v);
// Length-prefixed field append, the canonical serialization building block.
void append_field(Bytes& out, std::span<const Byte> field);

}  // namespace dpki

#endif  // DPKI_BYTES_HPP
