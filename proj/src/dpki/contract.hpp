// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_CONTRACT_HPP
#define DPKI_CONTRACT_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "dpki/bytes.hpp"
#include "dpki/gas.hpp"
#include "dpki/identity.hpp"
#include "dpki/secp256k1.hpp"

namespace dpki::contract {

// What a prospective signer presents to the gate. Claims may be forged;
// only the registry copy of each field is trusted.
struct SignerClaim {
    Pid pid;
    std::uint64_t rid = 0;
    Address address;
    bool operator==(const SignerClaim&) const = default;
};

struct UnsignedTransaction {
    Hash256 tx_id;
    Bytes payload;
    Pid sender_pid;
    Pid receiver_pid;
};

struct SignedTransaction {
    Hash256 tx_id;
    Bytes payload;
    Pid sender_pid;
    Pid receiver_pid;
    SignerClaim signer_claim;
    secp::Signature signature;  // over tx_id, by the signer's private key
    std::uint64_t gas_used = 0;
    bool operator==(const SignedTransaction&) const = default;
};

// tx_id is bound to the payload at creation time.
UnsignedTransaction make_transaction(Bytes payload, const Pid& sender, const Pid& receiver);

enum class RejectReason { IdentityMismatch, ThresholdExceeded };

struct GateDecision {
    bool admitted = false;
    std::optional<RejectReason> reason;

    static GateDecision admit() { return {true, std::nullopt}; }
    static GateDecision reject(RejectReason r) { return {false, r}; }
};

SignerClaim claim_for(const identity::Participant& participant);

// Admission gate. Admit iff the pid is registered, the claimed address
// matches the stored one, and the stored revocation count is still below
// the limit. The stored rid decides; the claimed rid is advisory only.
GateDecision contract_gate(const SignerClaim& claim, const identity::Registry& registry);

// Signs tx_id with the signer's key after re-checking the gate. Throws
// PreconditionError for an unadmitted signer. gas_used covers the contract
// and signature transaction entries of the schedule.
SignedTransaction sign_transaction(const UnsignedTransaction& tx,
                                   const identity::Participant& signer,
                                   const identity::Registry& registry,
                                   const gas::GasSchedule& schedule);

using KeyResolver = std::function<std::optional<identity::ResolvedIdentity>(const Pid&)>;

// True iff tx_id matches the payload digest and the signature verifies under
// the resolved key of the claimed signer. Unknown signers are a false
// result, not a fault.
bool validate_signature(const SignedTransaction& tx, const KeyResolver& resolver);
bool validate_signature(const SignedTransaction& tx, const identity::Registry& registry);

enum class RevocationStatus {
    Incremented,         // success path, still below the limit
    ResetRequired,       // success path, limit reached: identity must reset
    TransactionRejected  // failed transaction: counter untouched
};

struct RevocationResult {
    RevocationStatus status;
    std::uint64_t rid = 0;  // counter after the call
};

// Post-transaction revocation accounting. Success increments the stored
// counter; reaching the limit flags the reset. Throws NotFoundError for an
// unknown pid.
RevocationResult revoke(const Pid& signer_pid, identity::Registry& registry, bool tx_outcome);

}  // namespace dpki::contract

#endif  // DPKI_CONTRACT_HPP
