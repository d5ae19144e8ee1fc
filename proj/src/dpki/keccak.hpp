// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_KECCAK_HPP
#define DPKI_KECCAK_HPP

#include <span>

#include "dpki/bytes.hpp"

namespace dpki {

// Keccak-256 as used by Ethereum: rate 1088, capacity 512, 0x01 domain
// padding (pre-NIST). Not FIPS-202 SHA3-256.
Hash256 keccak256(std::span<const Byte> data);

}  // namespace dpki

#endif  // DPKI_KECCAK_HPP
