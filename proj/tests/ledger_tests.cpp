#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "dpki/errors.hpp"
#include "dpki/keccak.hpp"
#include "dpki/ledger.hpp"
#include "dpki/merkle.hpp"
#include "dpki/rng.hpp"

using namespace dpki;
using namespace dpki::ledger;

namespace {

// Test-only oracle: recursive level-by-level pairing, written without the
// library's tree helpers so the two can disagree.
Hash256 oracle_root(const std::vector<Hash256>& level) {
    if (level.size() == 1) return level[0];
    std::vector<Hash256> next;
    for (std::size_t i = 0; i < level.size(); i += 2) {
        const Hash256& left = level[i];
        const Hash256& right = (i + 1 < level.size()) ? level[i + 1] : level[i];
        Bytes joined(left.bytes.begin(), left.bytes.end());
        joined.insert(joined.end(), right.bytes.begin(), right.bytes.end());
        next.push_back(keccak256(joined));
    }
    return oracle_root(next);
}

struct ChainFixture {
    identity::Registry registry;
    gas::GasSchedule schedule;
    OffchainStore store;
    std::vector<Block> chain;
    std::vector<const identity::Participant*> nodes;
    DetRng rng{2024};
    std::uint64_t next_serial = 0;

    ChainFixture() {
        for (std::uint64_t seed = 0; seed < 4; ++seed)
            nodes.push_back(&registry.register_participant(identity::NodeStatus::New, seed));
        chain.push_back(make_genesis());
    }

    contract::KeyResolver resolver() {
        return [this](const Pid& pid) { return registry.resolve(pid, true); };
    }

    ValidationContext ctx() { return ValidationContext{resolver(), &store}; }

    contract::SignedTransaction make_tx() {
        Bytes payload(40);
        rng.fill(payload);
        append_u64_le(payload, next_serial++);
        const identity::Participant* sender = nodes[rng.below(nodes.size())];
        const identity::Participant* receiver = nodes[rng.below(nodes.size())];
        const identity::Participant* signer = nodes[rng.below(nodes.size())];
        contract::UnsignedTransaction tx =
            contract::make_transaction(payload, sender->pid, receiver->pid);
        return contract::sign_transaction(tx, *signer, registry, schedule);
    }

    void append_block(std::size_t tx_count) {
        std::vector<contract::SignedTransaction> txs;
        for (std::size_t i = 0; i < tx_count; ++i) txs.push_back(make_tx());
        const identity::Participant* producer = nodes[rng.below(nodes.size())];
        BlockSigner signer{producer->pid, producer->keypair.private_key};
        std::uint64_t tick = chain.back().header.timestamp + 15;
        chain.push_back(
            build_block(std::move(txs), chain.back().header, signer, tick, resolver(), &store));
    }
};

}  // namespace

TEST_CASE("merkle root matches the recursive oracle for 1 through 33 leaves") {
    ChainFixture f;
    std::vector<contract::SignedTransaction> txs;
    for (std::size_t n = 1; n <= 33; ++n) {
        txs.push_back(f.make_tx());
        std::vector<Hash256> leaves;
        for (const auto& tx : txs) leaves.push_back(merkle::hash_leaf(tx));
        auto [root, depth] = merkle::merkle_root(txs);
        CHECK(root == oracle_root(leaves));
        CHECK(depth == static_cast<std::size_t>(std::ceil(std::log2(double(n)))));
    }
}

TEST_CASE("merkle tree degenerate and two leaf cases") {
    ChainFixture f;
    std::vector<contract::SignedTransaction> txs{f.make_tx()};
    auto [root1, depth1] = merkle::merkle_root(txs);
    CHECK(root1 == merkle::hash_leaf(txs[0]));
    CHECK(depth1 == 0);

    txs.push_back(f.make_tx());
    auto [root2, depth2] = merkle::merkle_root(txs);
    CHECK(root2 == merkle::hash_pair(merkle::hash_leaf(txs[0]), merkle::hash_leaf(txs[1])));
    CHECK(depth2 == 1);

    CHECK_THROWS_AS(merkle::build_merkle({}), LedgerError);
}

TEST_CASE("merkle levels are internally consistent") {
    ChainFixture f;
    std::vector<Hash256> leaves;
    for (int i = 0; i < 7; ++i) leaves.push_back(merkle::hash_leaf(f.make_tx()));
    merkle::MerkleTree tree = merkle::build_merkle(leaves);
    CHECK(tree.levels.front() == leaves);
    CHECK(tree.levels.back().size() == 1);
    CHECK(tree.levels.back().front() == tree.root);
    for (std::size_t lvl = 1; lvl < tree.levels.size(); ++lvl) {
        const auto& prev = tree.levels[lvl - 1];
        const auto& cur = tree.levels[lvl];
        REQUIRE(cur.size() == (prev.size() + 1) / 2);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const Hash256& left = prev[2 * i];
            const Hash256& right = (2 * i + 1 < prev.size()) ? prev[2 * i + 1] : prev[2 * i];
            CHECK(cur[i] == merkle::hash_pair(left, right));
        }
    }
}

TEST_CASE("leaf hashing is sensitive to every field") {
    ChainFixture f;
    contract::SignedTransaction tx = f.make_tx();
    Hash256 base = merkle::hash_leaf(tx);
    CHECK(merkle::hash_leaf(tx) == base);

    auto expect_changed = [&base](contract::SignedTransaction mutated) {
        CHECK(merkle::hash_leaf(mutated) != base);
    };
    {
        auto m = tx;
        m.payload[0] ^= 1;
        expect_changed(m);
    }
    {
        auto m = tx;
        m.gas_used ^= 1;
        expect_changed(m);
    }
    {
        auto m = tx;
        m.signer_claim.rid ^= 1;
        expect_changed(m);
    }
    {
        auto m = tx;
        m.signature.bytes[63] ^= 1;
        expect_changed(m);
    }
}

TEST_CASE("permuting transactions changes the root") {
    ChainFixture f;
    std::vector<contract::SignedTransaction> txs;
    for (int i = 0; i < 5; ++i) txs.push_back(f.make_tx());
    Hash256 base = merkle::merkle_root(txs).first;
    std::swap(txs[1], txs[3]);
    CHECK(merkle::merkle_root(txs).first != base);
}

TEST_CASE("genesis has the defined empty shape") {
    Block genesis = make_genesis();
    CHECK(genesis.header.height == 0);
    CHECK(genesis.header.prev_hash.is_zero());
    CHECK(genesis.header.merkle_root.is_zero());
    CHECK(genesis.transactions.empty());
}

TEST_CASE("honest chain builds and validates") {
    ChainFixture f;
    for (int i = 0; i < 5; ++i) f.append_block(3);
    CHECK(validate_chain(f.chain, f.ctx()) == std::nullopt);

    // Block bodies carry no payloads; the store does.
    for (std::size_t i = 1; i < f.chain.size(); ++i)
        for (const auto& tx : f.chain[i].transactions) {
            CHECK(tx.payload.empty());
            CHECK(f.store.get(tx.tx_id) != nullptr);
        }
}

TEST_CASE("build block rejects empty and invalid input") {
    ChainFixture f;
    BlockSigner signer{f.nodes[0]->pid, f.nodes[0]->keypair.private_key};

    CHECK_THROWS_AS(
        build_block({}, f.chain.back().header, signer, 15, f.resolver(), &f.store),
        LedgerError);

    std::vector<contract::SignedTransaction> txs;
    for (int i = 0; i < 10; ++i) txs.push_back(f.make_tx());
    txs[7].signature.bytes[0] ^= 0x01;
    try {
        build_block(std::move(txs), f.chain.back().header, signer, 15, f.resolver(), &f.store);
        FAIL("expected LedgerError");
    } catch (const LedgerError& e) {
        CHECK(std::string(e.what()).find("index 7") != std::string::npos);
    }
}

TEST_CASE("append leaves earlier block digests untouched") {
    ChainFixture f;
    for (int i = 0; i < 3; ++i) f.append_block(2);
    std::vector<Hash256> digests;
    for (const Block& b : f.chain) digests.push_back(block_hash(b.header));
    f.append_block(2);
    for (std::size_t i = 0; i < digests.size(); ++i)
        CHECK(block_hash(f.chain[i].header) == digests[i]);
}

TEST_CASE("validation pinpoints the broken link") {
    ChainFixture f;
    for (int i = 0; i < 7; ++i) f.append_block(2);
    f.chain[6].header.prev_hash.bytes[0] ^= 0x01;
    CHECK(validate_chain(f.chain, f.ctx()) == Violation{6, ViolationReason::BrokenLink});
}

TEST_CASE("validation pinpoints the mutated payload") {
    ChainFixture f;
    for (int i = 0; i < 5; ++i) f.append_block(2);
    // Mutate the stored payload of a transaction in block 4.
    const Hash256 victim = f.chain[4].transactions[1].tx_id;
    f.store.entries().at(victim)[0] ^= 0x01;
    CHECK(validate_chain(f.chain, f.ctx()) == Violation{4, ViolationReason::MerkleMismatch});
}

TEST_CASE("validation reports specific header violations") {
    ChainFixture f;
    for (int i = 0; i < 4; ++i) f.append_block(2);

    SUBCASE("height gap") {
        f.chain[2].header.height = 5;
        CHECK(validate_chain(f.chain, f.ctx()) == Violation{2, ViolationReason::HeightGap});
    }
    SUBCASE("unknown producer") {
        f.chain[3].header.producer_pid.bytes[2] ^= 0xff;
        CHECK(validate_chain(f.chain, f.ctx()) ==
              Violation{3, ViolationReason::UnknownProducer});
    }
    SUBCASE("forged producer signature") {
        f.chain[3].header.producer_signature.bytes[10] ^= 0x01;
        CHECK(validate_chain(f.chain, f.ctx()) ==
              Violation{3, ViolationReason::BadProducerSignature});
    }
    SUBCASE("non-advancing timestamp") {
        // Rebuild block 2 honestly but with its parent's timestamp.
        std::vector<contract::SignedTransaction> txs;
        for (int i = 0; i < 2; ++i) txs.push_back(f.make_tx());
        const identity::Participant* producer = f.nodes[0];
        Block stale = build_block(std::move(txs), f.chain[1].header,
                                  {producer->pid, producer->keypair.private_key},
                                  f.chain[1].header.timestamp, f.resolver(), &f.store);
        f.chain[2] = stale;
        f.chain.resize(3);
        CHECK(validate_chain(f.chain, f.ctx()) == Violation{2, ViolationReason::BadTimestamp});
    }
    SUBCASE("empty body") {
        f.chain[2].transactions.clear();
        // Recompute nothing else: the body check precedes the merkle check.
        CHECK(validate_chain(f.chain, f.ctx()) == Violation{2, ViolationReason::EmptyBody});
    }
    SUBCASE("missing payload") {
        f.store.entries().erase(f.chain[2].transactions[0].tx_id);
        CHECK(validate_chain(f.chain, f.ctx()) ==
              Violation{2, ViolationReason::MissingPayload});
    }
    SUBCASE("tampered genesis") {
        f.chain[0].header.timestamp = 1;
        CHECK(validate_chain(f.chain, f.ctx()) == Violation{0, ViolationReason::BadGenesis});
    }
}

TEST_CASE("forged transaction inside a rebuilt block is caught by signature check") {
    ChainFixture f;
    f.append_block(2);

    // An adversary who rebuilds the merkle root around a forged signature
    // still fails the per-transaction check.
    Block& block = f.chain[1];
    std::vector<contract::SignedTransaction> full = block.transactions;
    for (auto& tx : full) tx.payload = *f.store.get(tx.tx_id);
    full[0].signature.bytes[3] ^= 0x01;
    block.transactions = full;
    block.header.merkle_root = merkle::merkle_root(full).first;
    const identity::Participant* producer =
        f.registry.find(block.header.producer_pid);
    REQUIRE(producer != nullptr);
    block.header.producer_signature =
        secp::sign(producer->keypair.private_key, header_signing_digest(block.header));

    ValidationContext inline_ctx{f.resolver(), nullptr};
    CHECK(validate_chain(f.chain, inline_ctx) ==
          Violation{1, ViolationReason::BadTransactionSignature});
}

TEST_CASE("chain export import round trip") {
    ChainFixture f;
    for (int i = 0; i < 4; ++i) f.append_block(3);
    std::string text = export_chain(f.chain, &f.store);

    auto [imported, store] = import_chain(text);
    REQUIRE(imported.size() == f.chain.size());
    for (std::size_t i = 0; i < imported.size(); ++i)
        CHECK(block_hash(imported[i].header) == block_hash(f.chain[i].header));

    ValidationContext ctx{f.resolver(), &store};
    CHECK(validate_chain(imported, ctx) == std::nullopt);
    CHECK(export_chain(imported, &store) == text);
}

TEST_CASE("chain import rejects malformed records") {
    CHECK_THROWS_AS(import_chain("not json\n"), IoError);
    try {
        import_chain("{\"height\":0}\n{\"bad\":1}\n");
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
}
