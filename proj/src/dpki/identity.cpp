// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/identity.hpp"

#include "dpki/errors.hpp"
#include "dpki/keccak.hpp"
#include "dpki/rng.hpp"

namespace dpki::identity {

namespace {
constexpr int kPidRetryBudget = 8;
}

KeyPair generate_keypair(std::uint64_t rng_seed) {
    DetRng rng(rng_seed);
    KeyPair kp;
    do {
        rng.fill(kp.private_key.bytes);
    } while (!secp::scalar_valid(kp.private_key));
    kp.public_key = secp::derive_public(kp.private_key);
    return kp;
}

Address derive_address(const secp::PublicKey& public_key) {
    if (!secp::valid_public(public_key)) throw IdentityError("invalid public key");
    Hash256 digest = keccak256({public_key.bytes.data() + 1, 64});
    Address out;
    std::copy(digest.bytes.begin() + 12, digest.bytes.end(), out.bytes.begin());
    return out;
}

Pid Registry::draw_pid(std::uint64_t rng_seed) const {
    for (int attempt = 0; attempt < kPidRetryBudget; ++attempt) {
        DetRng rng(DetRng::fork_seed(rng_seed, "pid", static_cast<std::uint64_t>(attempt)));
        Pid pid;
        rng.fill(pid.bytes);
        if (pid.is_zero()) continue;  // all-zero is reserved for sentinels
        if (participants_.contains(pid) || retired_.contains(pid)) continue;
        return pid;
    }
    throw IdentityError("pid collision persisted past the retry budget");
}

const Participant& Registry::register_participant(NodeStatus, std::uint64_t rng_seed) {
    KeyPair kp = generate_keypair(DetRng::fork_seed(rng_seed, "key"));
    Address address = derive_address(kp.public_key);

    // The address index is authoritative for presence; a node re-registering
    // with its seed lands here and gets its record back unchanged.
    if (auto it = address_index_.find(address); it != address_index_.end())
        return participants_.at(it->second);

    Pid pid = draw_pid(rng_seed);
    Participant participant{pid,
                            address,
                            kp,
                            0,
                            options_.default_limit,
                            options_.initial_balance,
                            ParticipantStatus::Registered};
    auto [slot, inserted] = participants_.emplace(pid, std::move(participant));
    address_index_.emplace(address, pid);
    (void)inserted;
    return slot->second;
}

const Participant& Registry::reset_participant(const Pid& pid, std::uint64_t rng_seed) {
    auto it = participants_.find(pid);
    if (it == participants_.end()) throw NotFoundError("unknown participant pid");
    Participant& old = it->second;
    if (old.rid < old.limit)
        throw PreconditionError("revocation count below limit; reset not permitted");

    KeyPair kp = generate_keypair(DetRng::fork_seed(rng_seed, "key"));
    Address address = derive_address(kp.public_key);
    if (address_index_.contains(address))
        throw IdentityError("reset derived an address already in use");

    Pid fresh = draw_pid(rng_seed);
    Participant renewed{fresh, address,     kp,
                        0,     old.limit,   old.balance,
                        ParticipantStatus::Registered};

    Participant archived = old;
    archived.status = ParticipantStatus::Reset;
    retired_.emplace(pid, std::move(archived));
    successor_.emplace(pid, fresh);
    address_index_.erase(old.address);
    participants_.erase(it);

    auto [slot, inserted] = participants_.emplace(fresh, std::move(renewed));
    address_index_.emplace(address, fresh);
    (void)inserted;
    return slot->second;
}

const Participant* Registry::find(const Pid& pid) const {
    auto it = participants_.find(pid);
    return it == participants_.end() ? nullptr : &it->second;
}

const Participant* Registry::find_by_address(const Address& address) const {
    auto it = address_index_.find(address);
    return it == address_index_.end() ? nullptr : find(it->second);
}

const Participant* Registry::find_retired(const Pid& pid) const {
    auto it = retired_.find(pid);
    return it == retired_.end() ? nullptr : &it->second;
}

std::optional<Pid> Registry::successor_of(const Pid& retired_pid) const {
    auto it = successor_.find(retired_pid);
    if (it == successor_.end()) return std::nullopt;
    Pid current = it->second;
    for (auto next = successor_.find(current); next != successor_.end();
         next = successor_.find(current))
        current = next->second;
    return current;
}

std::uint64_t Registry::increment_rid(const Pid& pid) {
    auto it = participants_.find(pid);
    if (it == participants_.end()) throw NotFoundError("unknown participant pid");
    return ++it->second.rid;
}

void Registry::debit(const Pid& pid, std::uint64_t amount) {
    auto it = participants_.find(pid);
    if (it == participants_.end()) throw NotFoundError("unknown participant pid");
    if (it->second.balance < amount)
        throw InsufficientFundsError("balance below debit amount");
    it->second.balance -= amount;
    total_debited_ += amount;
}

std::optional<ResolvedIdentity> Registry::resolve(const Pid& pid, bool include_retired) const {
    if (const Participant* p = find(pid))
        return ResolvedIdentity{p->address, p->keypair.public_key};
    if (include_retired)
        if (const Participant* p = find_retired(pid))
            return ResolvedIdentity{p->address, p->keypair.public_key};
    return std::nullopt;
}

}  // namespace dpki::identity
