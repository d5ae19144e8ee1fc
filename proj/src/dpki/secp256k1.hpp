// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_SECP256K1_HPP
#define DPKI_SECP256K1_HPP

#include <array>
#include <compare>

#include "dpki/bytes.hpp"

namespace dpki::secp {

// Scalar in big-endian; valid iff 0 < value < group order.
struct PrivateKey {
    std::array<Byte, 32> bytes{};
    auto operator<=>(const PrivateKey&) const = default;
};

// Uncompressed SEC1 encoding: 0x04 || X || Y.
struct PublicKey {
    std::array<Byte, 65> bytes{};
    auto operator<=>(const PublicKey&) const = default;
};

// Compact encoding: r || s, 32 bytes each, big-endian. Signatures produced
// here always carry the low-s form.
struct Signature {
    std::array<Byte, 64> bytes{};
    auto operator<=>(const Signature&) const = default;
};

bool scalar_valid(const PrivateKey& key);

// Throws CryptoError if the scalar is out of range.
PublicKey derive_public(const PrivateKey& key);

// True iff the encoding is well-formed and the point lies on the curve.
bool valid_public(const PublicKey& key);

// Deterministic ECDSA: the nonce is derived from the key and digest, so
// identical inputs give identical signatures. Throws CryptoError on an
// invalid private key.
Signature sign(const PrivateKey& key, const Hash256& digest);

// Standard ECDSA verification; accepts high-s as well as low-s.
bool verify(const PublicKey& key, const Hash256& digest, const Signature& sig);

}  // namespace dpki::secp

#endif  // DPKI_SECP256K1_HPP
