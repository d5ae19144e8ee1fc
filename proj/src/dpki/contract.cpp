// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/contract.hpp"

#include "dpki/errors.hpp"
#include "dpki/keccak.hpp"

namespace dpki::contract {

UnsignedTransaction make_transaction(Bytes payload, const Pid& sender, const Pid& receiver) {
    UnsignedTransaction tx;
    tx.tx_id = keccak256(payload);
    tx.payload = std::move(payload);
    tx.sender_pid = sender;
    tx.receiver_pid = receiver;
    return tx;
}

SignerClaim claim_for(const identity::Participant& participant) {
    return SignerClaim{participant.pid, participant.rid, participant.address};
}

GateDecision contract_gate(const SignerClaim& claim, const identity::Registry& registry) {
    const identity::Participant* stored = registry.find(claim.pid);
    if (stored == nullptr) return GateDecision::reject(RejectReason::IdentityMismatch);
    if (stored->address != claim.address)
        return GateDecision::reject(RejectReason::IdentityMismatch);
    // Admission happens strictly below the limit: the successful transaction
    // will increment rid, and the limit itself marks the reset point.
    if (stored->rid >= stored->limit)
        return GateDecision::reject(RejectReason::ThresholdExceeded);
    return GateDecision::admit();
}

SignedTransaction sign_transaction(const UnsignedTransaction& tx,
                                   const identity::Participant& signer,
                                   const identity::Registry& registry,
                                   const gas::GasSchedule& schedule) {
    GateDecision decision = contract_gate(claim_for(signer), registry);
    if (!decision.admitted)
        throw PreconditionError("signer is not admitted by the contract gate");

    SignedTransaction out;
    out.tx_id = tx.tx_id;
    out.payload = tx.payload;
    out.sender_pid = tx.sender_pid;
    out.receiver_pid = tx.receiver_pid;
    out.signer_claim = claim_for(signer);
    out.signature = secp::sign(signer.keypair.private_key, tx.tx_id);
    out.gas_used = schedule.smart_contract.tx_gas + schedule.signature.tx_gas;
    return out;
}

bool validate_signature(const SignedTransaction& tx, const KeyResolver& resolver) {
    if (keccak256(tx.payload) != tx.tx_id) return false;
    std::optional<identity::ResolvedIdentity> id = resolver(tx.signer_claim.pid);
    if (!id) return false;
    return secp::verify(id->public_key, tx.tx_id, tx.signature);
}

bool validate_signature(const SignedTransaction& tx, const identity::Registry& registry) {
    return validate_signature(
        tx, [&registry](const Pid& pid) { return registry.resolve(pid); });
}

RevocationResult revoke(const Pid& signer_pid, identity::Registry& registry, bool tx_outcome) {
    const identity::Participant* stored = registry.find(signer_pid);
    if (stored == nullptr) throw NotFoundError("unknown signer pid");
    if (!tx_outcome) return {RevocationStatus::TransactionRejected, stored->rid};

    std::uint64_t rid = registry.increment_rid(signer_pid);
    if (rid >= stored->limit) return {RevocationStatus::ResetRequired, rid};
    return {RevocationStatus::Incremented, rid};
}

}  // namespace dpki::contract
