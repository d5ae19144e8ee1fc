// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_LEDGER_HPP
#define DPKI_LEDGER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dpki/contract.hpp"
#include "dpki/merkle.hpp"

namespace dpki::ledger {

struct BlockHeader {
    std::uint64_t height = 0;
    Hash256 prev_hash;   // all-zero for genesis
    Hash256 merkle_root;
    std::uint64_t timestamp = 0;  // simulated-time tick of production
    Pid producer_pid;
    secp::Signature producer_signature;  // over the other header fields
    bool operator==(const BlockHeader&) const = default;
};

// Digest the producer signs: every header field except the signature itself.
Hash256 header_signing_digest(const BlockHeader& header);

// Identity of the block for chain linking; covers the whole header.
Hash256 block_hash(const BlockHeader& header);

struct Block {
    BlockHeader header;
    std::vector<contract::SignedTransaction> transactions;
};

// Content-addressed payload store: the off-chain half of the ledger. Keys
// are payload digests, which equal the owning transaction's tx_id.
class OffchainStore {
  public:
    Hash256 put(Bytes payload);
    const Bytes* get(const Hash256& key) const;
    std::size_t size() const { return entries_.size(); }

    std::unordered_map<Hash256, Bytes, Hash256Hasher>& entries() { return entries_; }
    const std::unordered_map<Hash256, Bytes, Hash256Hasher>& entries() const { return entries_; }

  private:
    std::unordered_map<Hash256, Bytes, Hash256Hasher> entries_;
};

Block make_genesis();

struct BlockSigner {
    Pid pid;
    secp::PrivateKey key;
};

// Validates and assembles the next block. When a store is given, payloads
// move into it and block copies of the transactions carry empty payloads.
// Throws LedgerError naming the offending transaction index on invalid
// input.
Block build_block(std::vector<contract::SignedTransaction> txs, const BlockHeader& prev,
                  const BlockSigner& producer, std::uint64_t tick,
                  const contract::KeyResolver& resolver, OffchainStore* store = nullptr);

enum class ViolationReason {
    BadGenesis,
    HeightGap,
    BrokenLink,
    UnknownProducer,
    BadProducerSignature,
    BadTimestamp,
    EmptyBody,
    MissingPayload,
    MerkleMismatch,
    TxDigestMismatch,
    BadTransactionSignature
};

const char* violation_name(ViolationReason reason);

struct Violation {
    std::uint64_t height = 0;  // position in the submitted chain
    ViolationReason reason{};
    bool operator==(const Violation&) const = default;
};

struct ValidationContext {
    contract::KeyResolver resolver;          // producer and signer key lookup
    const OffchainStore* store = nullptr;    // payload source; nullptr = inline payloads
};

// Full-chain audit; returns the first violation, or nullopt for a valid
// chain. Never throws on bad chains.
std::optional<Violation> validate_chain(const std::vector<Block>& blocks,
                                        const ValidationContext& ctx);

// Line-delimited record export for audit tooling; payloads are inlined from
// the store. import_chain reverses it. Throws IoError on malformed input.
std::string export_chain(const std::vector<Block>& blocks, const OffchainStore* store);
std::pair<std::vector<Block>, OffchainStore> import_chain(const std::string& text);

}  // namespace dpki::ledger

#endif  // DPKI_LEDGER_HPP
