#include "doctest.h"

#include "dpki/contract.hpp"
#include "dpki/errors.hpp"
#include "dpki/gas.hpp"
#include "dpki/keccak.hpp"
#include "dpki/rng.hpp"

using namespace dpki;
using namespace dpki::contract;

namespace {

struct Fixture {
    identity::Registry registry;
    gas::GasSchedule schedule;

    const identity::Participant& node(std::uint64_t seed) {
        return registry.register_participant(identity::NodeStatus::New, seed);
    }
};

Bytes ascii(const std::string& s) { return Bytes(s.begin(), s.end()); }

}  // namespace

TEST_CASE("default gas schedule carries the deployment measurements") {
    gas::GasSchedule s;
    CHECK(s.participant.init_gas == 33781);
    CHECK(s.participant.tx_gas == 17484);
    CHECK(s.signature.init_gas == 42856);
    CHECK(s.signature.tx_gas == 13752);
    CHECK(s.revocation.init_gas == 19798);
    CHECK(s.revocation.tx_gas == 9689);
    CHECK(s.smart_contract.init_gas == 194837);
    CHECK(s.smart_contract.tx_gas == 32675);
    CHECK(s.gas_price == 1);
    CHECK(s.gas_limit == 4'000'000);
    CHECK(s.init_total() == 291272);
    CHECK(s.per_tx_total() == 73600);
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("gas schedule validation rejects degenerate entries") {
    gas::GasSchedule s;
    s.revocation.tx_gas = 0;
    CHECK_THROWS_AS(s.validate(), ConfigError);

    gas::GasSchedule tight;
    tight.gas_limit = tight.smart_contract.init_gas - 1;
    CHECK_THROWS_AS(tight.validate(), ConfigError);

    gas::GasSchedule free_gas;
    free_gas.gas_price = 0;
    CHECK_THROWS_AS(free_gas.validate(), ConfigError);
}

TEST_CASE("total cost is gas times price") {
    gas::GasSchedule s;
    CHECK(gas::total_cost(0, s) == 0);
    CHECK(gas::total_cost(17484, s) == 17484);
    s.gas_price = 7;
    CHECK(gas::total_cost(100, s) == 700);
}

TEST_CASE("charge debits the participant by the computed cost") {
    Fixture f;
    const identity::Participant& p = f.node(1);
    std::uint64_t before = p.balance;
    std::uint64_t cost = gas::charge(f.registry, p.pid, f.schedule.init_total(), f.schedule);
    CHECK(cost == 291272);
    CHECK(f.registry.find(p.pid)->balance == before - cost);
    CHECK(f.registry.total_debited() == cost);
}

TEST_CASE("gas meter accumulates per module") {
    gas::GasMeter meter{gas::GasSchedule{}};
    CHECK(meter.charge_init(gas::Module::Participant) == 33781);
    CHECK(meter.charge_tx(gas::Module::Participant) == 17484);
    CHECK(meter.charge_tx(gas::Module::Participant) == 17484);
    CHECK(meter.used_init(gas::Module::Participant) == 33781);
    CHECK(meter.used_tx(gas::Module::Participant) == 2 * 17484);
    CHECK(meter.used_tx(gas::Module::Signature) == 0);
    meter.charge_init(gas::Module::Signature);
    meter.charge_init(gas::Module::Revocation);
    meter.charge_init(gas::Module::SmartContract);
    CHECK(meter.total_used() == 291272 + 2 * 17484);
}

TEST_CASE("gate admits a matching registered signer under the limit") {
    Fixture f;
    const identity::Participant& p = f.node(1);
    GateDecision d = contract_gate(claim_for(p), f.registry);
    CHECK(d.admitted);
    CHECK(!d.reason.has_value());
}

TEST_CASE("gate rejects unknown pids and forged addresses") {
    Fixture f;
    const identity::Participant& p = f.node(1);

    SignerClaim ghost = claim_for(p);
    ghost.pid.bytes[0] ^= 0xff;
    GateDecision d1 = contract_gate(ghost, f.registry);
    CHECK(!d1.admitted);
    CHECK(d1.reason == RejectReason::IdentityMismatch);

    SignerClaim forged = claim_for(p);
    forged.address.bytes[19] ^= 0x01;
    GateDecision d2 = contract_gate(forged, f.registry);
    CHECK(!d2.admitted);
    CHECK(d2.reason == RejectReason::IdentityMismatch);
}

TEST_CASE("gate cuts off at the revocation threshold") {
    Fixture f;
    const identity::Participant& p = f.node(1);
    Pid pid = p.pid;

    // rid 0, 1, 2 admitted with limit 3; rid 3 is the reset point.
    for (int i = 0; i < 3; ++i) {
        CHECK(contract_gate(claim_for(*f.registry.find(pid)), f.registry).admitted);
        f.registry.increment_rid(pid);
    }
    GateDecision at_limit = contract_gate(claim_for(*f.registry.find(pid)), f.registry);
    CHECK(!at_limit.admitted);
    CHECK(at_limit.reason == RejectReason::ThresholdExceeded);

    // Past the limit (post-tamper state) stays rejected.
    f.registry.increment_rid(pid);
    GateDecision past = contract_gate(claim_for(*f.registry.find(pid)), f.registry);
    CHECK(!past.admitted);
    CHECK(past.reason == RejectReason::ThresholdExceeded);
}

TEST_CASE("gate trusts the stored rid over the claimed rid") {
    Fixture f;
    const identity::Participant& p = f.node(1);
    Pid pid = p.pid;

    SignerClaim understated = claim_for(p);
    for (int i = 0; i < 3; ++i) f.registry.increment_rid(pid);
    understated.rid = 0;  // stale or forged snapshot
    GateDecision d = contract_gate(understated, f.registry);
    CHECK(!d.admitted);
    CHECK(d.reason == RejectReason::ThresholdExceeded);
}

TEST_CASE("gate soundness over randomized claim mutations") {
    Fixture f;
    for (std::uint64_t seed = 0; seed < 8; ++seed) f.node(seed);
    DetRng rng(99);

    for (int trial = 0; trial < 500; ++trial) {
        // Pick a participant and mutate its claim randomly.
        auto it = f.registry.participants().begin();
        std::advance(it, rng.below(f.registry.size()));
        const identity::Participant& p = it->second;
        SignerClaim claim = claim_for(p);
        switch (rng.below(4)) {
            case 0: claim.pid.bytes[rng.below(16)] ^= 1 << rng.below(8); break;
            case 1: claim.address.bytes[rng.below(20)] ^= 1 << rng.below(8); break;
            case 2: claim.rid = rng.below(10); break;
            case 3: break;  // untouched claim
        }
        GateDecision d = contract_gate(claim, f.registry);
        if (d.admitted) {
            const identity::Participant* stored = f.registry.find(claim.pid);
            REQUIRE(stored != nullptr);
            CHECK(stored->address == claim.address);
            CHECK(stored->rid < stored->limit);
        }
    }
}

TEST_CASE("make_transaction binds the digest to the payload") {
    Fixture f;
    const identity::Participant& a = f.node(1);
    const identity::Participant& b = f.node(2);
    UnsignedTransaction tx = make_transaction(ascii("hello"), a.pid, b.pid);
    CHECK(tx.tx_id == keccak256(ascii("hello")));
    CHECK(tx.sender_pid == a.pid);
    CHECK(tx.receiver_pid == b.pid);
}

TEST_CASE("sign transaction round trips through validation") {
    Fixture f;
    const identity::Participant& sender = f.node(1);
    const identity::Participant& receiver = f.node(2);
    const identity::Participant& signer = f.node(3);

    UnsignedTransaction tx = make_transaction(ascii("payload"), sender.pid, receiver.pid);
    SignedTransaction signed_tx = sign_transaction(tx, signer, f.registry, f.schedule);

    CHECK(signed_tx.gas_used == 32675 + 13752);
    CHECK(signed_tx.signer_claim.pid == signer.pid);
    CHECK(validate_signature(signed_tx, f.registry));

    CHECK(secp::verify(signer.keypair.public_key, signed_tx.tx_id, signed_tx.signature));
    const identity::Participant& other = f.node(4);
    CHECK(!secp::verify(other.keypair.public_key, signed_tx.tx_id, signed_tx.signature));
}

TEST_CASE("signing requires gate admission") {
    Fixture f;
    const identity::Participant& signer = f.node(1);
    Pid pid = signer.pid;
    for (int i = 0; i < 3; ++i) f.registry.increment_rid(pid);

    UnsignedTransaction tx = make_transaction(ascii("x"), pid, pid);
    CHECK_THROWS_AS(sign_transaction(tx, *f.registry.find(pid), f.registry, f.schedule),
                    PreconditionError);
}

TEST_CASE("validation rejects tampered payloads signatures and ghosts") {
    Fixture f;
    const identity::Participant& signer = f.node(1);
    UnsignedTransaction tx = make_transaction(ascii("content"), signer.pid, signer.pid);
    SignedTransaction good = sign_transaction(tx, signer, f.registry, f.schedule);

    SignedTransaction tampered = good;
    tampered.payload[0] ^= 0x01;
    CHECK(!validate_signature(tampered, f.registry));

    SignedTransaction zeroed = good;
    zeroed.signature = secp::Signature{};
    CHECK(!validate_signature(zeroed, f.registry));

    SignedTransaction ghost = good;
    ghost.signer_claim.pid.bytes[5] ^= 0xff;
    CHECK(!validate_signature(ghost, f.registry));
}

TEST_CASE("validate signature composes with signing across payload sizes") {
    Fixture f;
    const identity::Participant& signer = f.node(1);
    DetRng rng(1234);
    for (std::size_t len : {0ul, 1ul, 2ul, 32ul, 136ul, 500ul, 4096ul}) {
        Bytes payload(len);
        rng.fill(payload);
        UnsignedTransaction tx = make_transaction(payload, signer.pid, signer.pid);
        SignedTransaction signed_tx = sign_transaction(tx, signer, f.registry, f.schedule);
        CHECK(validate_signature(signed_tx, f.registry));
    }
}

TEST_CASE("revocation increments on success and flags the reset point") {
    Fixture f;
    const identity::Participant& p = f.node(1);
    Pid pid = p.pid;

    RevocationResult r1 = revoke(pid, f.registry, true);
    CHECK(r1.status == RevocationStatus::Incremented);
    CHECK(r1.rid == 1);

    RevocationResult r2 = revoke(pid, f.registry, true);
    CHECK(r2.status == RevocationStatus::Incremented);
    CHECK(r2.rid == 2);

    RevocationResult r3 = revoke(pid, f.registry, true);
    CHECK(r3.status == RevocationStatus::ResetRequired);
    CHECK(r3.rid == 3);
    CHECK(f.registry.find(pid)->rid == 3);
}

TEST_CASE("failed transactions leave the counter untouched") {
    Fixture f;
    const identity::Participant& p = f.node(1);
    RevocationResult r = revoke(p.pid, f.registry, false);
    CHECK(r.status == RevocationStatus::TransactionRejected);
    CHECK(r.rid == 0);
    CHECK(f.registry.find(p.pid)->rid == 0);

    Pid ghost;
    ghost.bytes[1] = 9;
    CHECK_THROWS_AS(revoke(ghost, f.registry, true), NotFoundError);
}

TEST_CASE("rid is monotone under randomized revoke outcomes") {
    Fixture f;
    const identity::Participant& p = f.node(1);
    Pid pid = p.pid;
    DetRng rng(5);
    std::uint64_t last = 0;
    for (int i = 0; i < 50 && f.registry.find(pid)->rid < 3; ++i) {
        bool outcome = rng.below(2) == 1;
        RevocationResult r = revoke(pid, f.registry, outcome);
        CHECK(r.rid >= last);
        CHECK(r.rid - last == (outcome ? 1 : 0));
        last = r.rid;
    }
}
