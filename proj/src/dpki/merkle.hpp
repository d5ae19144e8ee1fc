// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_MERKLE_HPP
#define DPKI_MERKLE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "dpki/bytes.hpp"
#include "dpki/contract.hpp"

namespace dpki::merkle {

// Length-prefixed concatenation of every transaction field in declaration
// order. The one canonical byte form: leaves, exports and digests all build
// on it.
Bytes canonical_serialization(const contract::SignedTransaction& tx);

Hash256 hash_leaf(const contract::SignedTransaction& tx);

Hash256 hash_pair(const Hash256& left, const Hash256& right);

struct MerkleTree {
    std::vector<std::vector<Hash256>> levels;  // levels[0] = leaves
    Hash256 root;
    std::size_t depth = 0;  // number of hashing levels; 0 for a single leaf
};

// Binary tree with the odd node at any level paired with a copy of itself.
// Throws LedgerError on an empty leaf list.
MerkleTree build_merkle(const std::vector<Hash256>& leaves);

// Root and depth over the transactions' leaves.
std::pair<Hash256, std::size_t> merkle_root(const std::vector<contract::SignedTransaction>& txs);

}  // namespace dpki::merkle

#endif  // DPKI_MERKLE_HPP
