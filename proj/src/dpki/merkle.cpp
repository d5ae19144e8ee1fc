// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/merkle.hpp"

#include "dpki/errors.hpp"
#include "dpki/keccak.hpp"

namespace dpki::merkle {

Bytes canonical_serialization(const contract::SignedTransaction& tx) {
    Bytes out;
    out.reserve(tx.payload.size() + 220);
    append_field(out, tx.tx_id.bytes);
    append_field(out, tx.payload);
    append_field(out, tx.sender_pid.bytes);
    append_field(out, tx.receiver_pid.bytes);
    append_field(out, tx.signer_claim.pid.bytes);
    Bytes rid;
    append_u64_le(rid, tx.signer_claim.rid);
    append_field(out, rid);
    append_field(out, tx.signer_claim.address.bytes);
    append_field(out, tx.signature.bytes);
    Bytes gas;
    append_u64_le(gas, tx.gas_used);
    append_field(out, gas);
    return out;
}

Hash256 hash_leaf(const contract::SignedTransaction& tx) {
    return keccak256(canonical_serialization(tx));
}

Hash256 hash_pair(const Hash256& left, const Hash256& right) {
    Bytes joined;
    joined.reserve(64);
    joined.insert(joined.end(), left.bytes.begin(), left.bytes.end());
    joined.insert(joined.end(), right.bytes.begin(), right.bytes.end());
    return keccak256(joined);
}

MerkleTree build_merkle(const std::vector<Hash256>& leaves) {
    if (leaves.empty()) throw LedgerError("merkle tree over an empty leaf list");
    MerkleTree tree;
    tree.levels.push_back(leaves);
    while (tree.levels.back().size() > 1) {
        const std::vector<Hash256>& prev = tree.levels.back();
        std::vector<Hash256> next;
        next.reserve((prev.size() + 1) / 2);
        for (std::size_t i = 0; i < prev.size(); i += 2) {
            const Hash256& left = prev[i];
            const Hash256& right = (i + 1 < prev.size()) ? prev[i + 1] : prev[i];
            next.push_back(hash_pair(left, right));
        }
        tree.levels.push_back(std::move(next));
    }
    tree.root = tree.levels.back().front();
    tree.depth = tree.levels.size() - 1;
    return tree;
}

std::pair<Hash256, std::size_t> merkle_root(
    const std::vector<contract::SignedTransaction>& txs) {
    std::vector<Hash256> leaves;
    leaves.reserve(txs.size());
    for (const contract::SignedTransaction& tx : txs) leaves.push_back(hash_leaf(tx));
    MerkleTree tree = build_merkle(leaves);
    return {tree.root, tree.depth};
}

}  // namespace dpki::merkle
