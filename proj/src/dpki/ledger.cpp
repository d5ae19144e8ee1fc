// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/ledger.hpp"

#include <sstream>

#include "json.hpp"

#include "dpki/errors.hpp"
#include "dpki/keccak.hpp"

namespace dpki::ledger {

namespace {

Bytes header_bytes_without_signature(const BlockHeader& header) {
    Bytes out;
    Bytes height;
    append_u64_le(height, header.height);
    append_field(out, height);
    append_field(out, header.prev_hash.bytes);
    append_field(out, header.merkle_root.bytes);
    Bytes ts;
    append_u64_le(ts, header.timestamp);
    append_field(out, ts);
    append_field(out, header.producer_pid.bytes);
    return out;
}

}  // namespace

Hash256 header_signing_digest(const BlockHeader& header) {
    return keccak256(header_bytes_without_signature(header));
}

Hash256 block_hash(const BlockHeader& header) {
    Bytes out = header_bytes_without_signature(header);
    append_field(out, header.producer_signature.bytes);
    return keccak256(out);
}

Hash256 OffchainStore::put(Bytes payload) {
    Hash256 key = keccak256(payload);
    entries_.emplace(key, std::move(payload));
    return key;
}

const Bytes* OffchainStore::get(const Hash256& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

Block make_genesis() {
    return Block{};  // all-zero header, empty body
}

Block build_block(std::vector<contract::SignedTransaction> txs, const BlockHeader& prev,
                  const BlockSigner& producer, std::uint64_t tick,
                  const contract::KeyResolver& resolver, OffchainStore* store) {
    if (txs.empty()) throw LedgerError("block requires at least one transaction");
    for (std::size_t i = 0; i < txs.size(); ++i)
        if (!contract::validate_signature(txs[i], resolver))
            throw LedgerError("invalid transaction at index " + std::to_string(i));

    Block block;
    block.header.height = prev.height + 1;
    block.header.prev_hash = block_hash(prev);
    block.header.merkle_root = merkle::merkle_root(txs).first;
    block.header.timestamp = tick;
    block.header.producer_pid = producer.pid;
    block.header.producer_signature =
        secp::sign(producer.key, header_signing_digest(block.header));

    if (store != nullptr)
        for (contract::SignedTransaction& tx : txs) {
            store->put(std::move(tx.payload));
            tx.payload.clear();
        }
    block.transactions = std::move(txs);
    return block;
}

const char* violation_name(ViolationReason reason) {
    switch (reason) {
        case ViolationReason::BadGenesis: return "bad_genesis";
        case ViolationReason::HeightGap: return "height_gap";
        case ViolationReason::BrokenLink: return "broken_link";
        case ViolationReason::UnknownProducer: return "unknown_producer";
        case ViolationReason::BadProducerSignature: return "bad_producer_signature";
        case ViolationReason::BadTimestamp: return "bad_timestamp";
        case ViolationReason::EmptyBody: return "empty_body";
        case ViolationReason::MissingPayload: return "missing_payload";
        case ViolationReason::MerkleMismatch: return "merkle_mismatch";
        case ViolationReason::TxDigestMismatch: return "tx_digest_mismatch";
        case ViolationReason::BadTransactionSignature: return "bad_transaction_signature";
    }
    return "unknown";
}

std::optional<Violation> validate_chain(const std::vector<Block>& blocks,
                                        const ValidationContext& ctx) {
    if (blocks.empty()) return Violation{0, ViolationReason::BadGenesis};

    const Block& genesis = blocks.front();
    if (genesis.header.height != 0 || !genesis.header.prev_hash.is_zero() ||
        !genesis.header.merkle_root.is_zero() || genesis.header.timestamp != 0 ||
        !genesis.header.producer_pid.is_zero() ||
        genesis.header.producer_signature != secp::Signature{} ||
        !genesis.transactions.empty())
        return Violation{0, ViolationReason::BadGenesis};

    for (std::size_t i = 1; i < blocks.size(); ++i) {
        const Block& block = blocks[i];
        const std::uint64_t at = static_cast<std::uint64_t>(i);

        if (block.header.height != at) return Violation{at, ViolationReason::HeightGap};
        if (block.header.prev_hash != block_hash(blocks[i - 1].header))
            return Violation{at, ViolationReason::BrokenLink};

        std::optional<identity::ResolvedIdentity> producer =
            ctx.resolver(block.header.producer_pid);
        if (!producer) return Violation{at, ViolationReason::UnknownProducer};
        if (!secp::verify(producer->public_key, header_signing_digest(block.header),
                          block.header.producer_signature))
            return Violation{at, ViolationReason::BadProducerSignature};

        if (block.header.timestamp <= blocks[i - 1].header.timestamp)
            return Violation{at, ViolationReason::BadTimestamp};
        if (block.transactions.empty()) return Violation{at, ViolationReason::EmptyBody};

        // Materialize payloads before recomputing the Merkle root; leaves
        // cover the full transaction including its payload.
        std::vector<contract::SignedTransaction> full = block.transactions;
        if (ctx.store != nullptr)
            for (contract::SignedTransaction& tx : full) {
                const Bytes* payload = ctx.store->get(tx.tx_id);
                if (payload == nullptr) return Violation{at, ViolationReason::MissingPayload};
                tx.payload = *payload;
            }

        if (merkle::merkle_root(full).first != block.header.merkle_root)
            return Violation{at, ViolationReason::MerkleMismatch};

        for (const contract::SignedTransaction& tx : full) {
            if (keccak256(tx.payload) != tx.tx_id)
                return Violation{at, ViolationReason::TxDigestMismatch};
            std::optional<identity::ResolvedIdentity> signer =
                ctx.resolver(tx.signer_claim.pid);
            if (!signer || !secp::verify(signer->public_key, tx.tx_id, tx.signature))
                return Violation{at, ViolationReason::BadTransactionSignature};
        }
    }
    return std::nullopt;
}

namespace {

using nlohmann::json;

json tx_to_json(const contract::SignedTransaction& tx, const OffchainStore* store) {
    const Bytes* payload = &tx.payload;
    if (store != nullptr && tx.payload.empty())
        if (const Bytes* stored = store->get(tx.tx_id)) payload = stored;
    return json{{"tx_id", tx.tx_id.hex()},
                {"payload", to_hex(*payload)},
                {"sender_pid", tx.sender_pid.hex()},
                {"receiver_pid", tx.receiver_pid.hex()},
                {"signer_pid", tx.signer_claim.pid.hex()},
                {"signer_rid", tx.signer_claim.rid},
                {"signer_address", tx.signer_claim.address.hex()},
                {"signature", to_hex(tx.signature.bytes)},
                {"gas_used", tx.gas_used}};
}

template <std::size_t N>
void hex_into(const json& j, const char* key, std::array<Byte, N>& out) {
    Bytes raw = from_hex(j.at(key).get<std::string>());
    if (raw.size() != N) throw IoError(std::string("bad field length for ") + key);
    std::copy(raw.begin(), raw.end(), out.begin());
}

contract::SignedTransaction tx_from_json(const json& j, OffchainStore& store) {
    contract::SignedTransaction tx;
    hex_into(j, "tx_id", tx.tx_id.bytes);
    Bytes payload = from_hex(j.at("payload").get<std::string>());
    hex_into(j, "sender_pid", tx.sender_pid.bytes);
    hex_into(j, "receiver_pid", tx.receiver_pid.bytes);
    hex_into(j, "signer_pid", tx.signer_claim.pid.bytes);
    tx.signer_claim.rid = j.at("signer_rid").get<std::uint64_t>();
    hex_into(j, "signer_address", tx.signer_claim.address.bytes);
    hex_into(j, "signature", tx.signature.bytes);
    tx.gas_used = j.at("gas_used").get<std::uint64_t>();
    store.put(std::move(payload));
    return tx;
}

}  // namespace

std::string export_chain(const std::vector<Block>& blocks, const OffchainStore* store) {
    std::ostringstream out;
    for (const Block& block : blocks) {
        json txs = json::array();
        for (const contract::SignedTransaction& tx : block.transactions)
            txs.push_back(tx_to_json(tx, store));
        json record{{"height", block.header.height},
                    {"prev_hash", block.header.prev_hash.hex()},
                    {"merkle_root", block.header.merkle_root.hex()},
                    {"timestamp", block.header.timestamp},
                    {"producer_pid", block.header.producer_pid.hex()},
                    {"producer_signature", to_hex(block.header.producer_signature.bytes)},
                    {"transactions", std::move(txs)}};
        out << record.dump() << '\n';
    }
    return out.str();
}

std::pair<std::vector<Block>, OffchainStore> import_chain(const std::string& text) {
    std::vector<Block> blocks;
    OffchainStore store;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json record;
        try {
            record = json::parse(line);
            Block block;
            block.header.height = record.at("height").get<std::uint64_t>();
            hex_into(record, "prev_hash", block.header.prev_hash.bytes);
            hex_into(record, "merkle_root", block.header.merkle_root.bytes);
            block.header.timestamp = record.at("timestamp").get<std::uint64_t>();
            hex_into(record, "producer_pid", block.header.producer_pid.bytes);
            hex_into(record, "producer_signature", block.header.producer_signature.bytes);
            for (const json& jtx : record.at("transactions"))
                block.transactions.push_back(tx_from_json(jtx, store));
            blocks.push_back(std::move(block));
        } catch (const json::exception& e) {
            throw IoError("chain record at line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return {std::move(blocks), std::move(store)};
}

}  // namespace dpki::ledger
