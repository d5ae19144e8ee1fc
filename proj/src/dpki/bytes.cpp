// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/bytes.hpp"

#include <stdexcept>

namespace dpki {

static constexpr char kHexDigits[] = "0123456789abcdef";

std::string to_hex(std::span<const Byte> data) {
    std::string out;
    out.reserve(data.size() * 2);
    for (Byte b : data) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0f]);
    }
    return out;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bytes from_hex(const std::string& hex) {
    std::size_t start = 0;
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) start = 2;
    if ((hex.size() - start) % 2 != 0) throw std::invalid_argument("odd-length hex string");
    Bytes out;
    out.reserve((hex.size() - start) / 2);
    for (std::size_t i = start; i < hex.size(); i += 2) {
        int hi = hex_nibble(hex[i]);
        int lo = hex_nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit");
        out.push_back(static_cast<Byte>((hi << 4) | lo));
    }
    return out;
}

void append_u32_le(Bytes& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<Byte>(v >> (8 * i)));
}

void append_u64_le(Bytes& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<Byte>(v >> (8 * i)));
}

void append_field(Bytes& out, std::span<const Byte> field) {
    append_u32_le(out, static_cast<std::uint32_t>(field.size()));
    out.insert(out.end(), field.begin(), field.end());
}

}  // namespace dpki
