// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_IDENTITY_HPP
#define DPKI_IDENTITY_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "dpki/bytes.hpp"
#include "dpki/secp256k1.hpp"

namespace dpki::identity {

enum class NodeStatus { New, Existing };

// Registered marks a live identity; Reset marks the archived snapshot of an
// identity that has been retired by a threshold reset.
enum class ParticipantStatus { Registered, Reset };

struct KeyPair {
    secp::PrivateKey private_key;
    secp::PublicKey public_key;
    bool operator==(const KeyPair&) const = default;
};

struct Participant {
    Pid pid;
    Address address;
    KeyPair keypair;
    std::uint64_t rid = 0;
    std::uint64_t limit = 0;
    std::uint64_t balance = 0;
    ParticipantStatus status = ParticipantStatus::Registered;
    bool operator==(const Participant&) const = default;
};

// Deterministic for a fixed seed; rejection-samples until the scalar is in
// range.
KeyPair generate_keypair(std::uint64_t rng_seed);

// Last 20 bytes of the 256-bit digest of the uncompressed point encoding
// without its prefix byte. Throws IdentityError for an invalid point.
Address derive_address(const secp::PublicKey& public_key);

// What a signature check needs to know about an identity.
struct ResolvedIdentity {
    Address address;
    secp::PublicKey public_key;
};

// Single-writer participant registry. Retired identities are archived so
// historical chain audits can still resolve their keys.
class Registry {
  public:
    struct Options {
        std::uint64_t default_limit = 3;
        // 100 currency units at 1e9 gas-price units each.
        std::uint64_t initial_balance = 100'000'000'000ull;
    };

    Registry() = default;
    explicit Registry(Options options) : options_(options) {}

    // Node presence is decided by the address the seed derives, so repeated
    // registration of one node returns its existing record unchanged
    // regardless of the claimed status.
    const Participant& register_participant(NodeStatus node_status, std::uint64_t rng_seed);

    // Retires the identity and issues a fresh PID, keypair and address,
    // preserving balance and limit. Requires rid to have reached the limit.
    const Participant& reset_participant(const Pid& pid, std::uint64_t rng_seed);

    const Participant* find(const Pid& pid) const;
    const Participant* find_by_address(const Address& address) const;
    const Participant* find_retired(const Pid& pid) const;

    // Active pid the retired pid was replaced by, if any. Follows chains of
    // resets to the live record.
    std::optional<Pid> successor_of(const Pid& retired_pid) const;

    // Returns the new rid. Throws NotFoundError for unknown pids.
    std::uint64_t increment_rid(const Pid& pid);

    // Throws InsufficientFundsError when balance < amount.
    void debit(const Pid& pid, std::uint64_t amount);

    std::optional<ResolvedIdentity> resolve(const Pid& pid, bool include_retired = false) const;

    std::size_t size() const { return participants_.size(); }
    std::size_t retired_size() const { return retired_.size(); }
    std::uint64_t total_debited() const { return total_debited_; }
    const Options& options() const { return options_; }

    const std::unordered_map<Pid, Participant, PidHasher>& participants() const {
        return participants_;
    }

    const std::unordered_map<Pid, Participant, PidHasher>& retired() const { return retired_; }

  private:
    Pid draw_pid(std::uint64_t rng_seed) const;

    Options options_;
    std::unordered_map<Pid, Participant, PidHasher> participants_;
    std::unordered_map<Address, Pid, AddressHasher> address_index_;
    std::unordered_map<Pid, Participant, PidHasher> retired_;
    std::unordered_map<Pid, Pid, PidHasher> successor_;
    std::uint64_t total_debited_ = 0;
};

}  // namespace dpki::identity

#endif  // DPKI_IDENTITY_HPP
