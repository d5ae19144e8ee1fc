// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_NETSIM_HPP
#define DPKI_NETSIM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dpki/dpos.hpp"
#include "dpki/identity.hpp"
#include "dpki/ledger.hpp"
#include "dpki/scenario.hpp"

namespace dpki::netsim {

enum class TxStatus { Committed, Rejected };

enum class RejectReason {
    None,
    IdentityMismatch,
    ThresholdExceeded,
    InvalidSignature,
    GasLimitExceeded,
    InsufficientFunds
};

const char* reject_reason_name(RejectReason reason);

struct TxRecord {
    Hash256 tx_id;
    std::uint64_t submit_tick = 0;
    std::optional<std::uint64_t> commit_tick;
    TxStatus status = TxStatus::Rejected;
    RejectReason reason = RejectReason::None;
    std::uint64_t gas_used = 0;  // full pipeline gas for admitted transactions
    std::uint64_t cost = 0;      // amount actually debited
    bool adversarial = false;    // generated by attack machinery
    bool tampered = false;       // mutated in flight
};

struct RegistrationRecord {
    Pid pid;
    std::uint64_t tick = 0;
    std::uint64_t gas_used = 0;
    std::uint64_t cost = 0;
};

enum class AttackOutcome { None, Defended, Breached };

const char* attack_outcome_name(AttackOutcome outcome);

struct ScenarioMetrics {
    std::vector<TxRecord> transactions;  // submission order
    std::vector<RegistrationRecord> registrations;

    std::uint64_t submitted = 0;
    std::uint64_t committed = 0;
    std::uint64_t rejected = 0;
    std::map<RejectReason, std::uint64_t> rejected_by_reason;

    std::uint64_t blocks_produced = 0;
    std::uint64_t skipped_slots = 0;  // scheduled slot with an empty mempool
    std::uint64_t missed_slots = 0;   // producer failed to deliver
    std::uint64_t identity_resets = 0;
    std::uint64_t delegate_evictions = 0;
    std::uint64_t final_tick = 0;

    std::uint64_t total_gas_used = 0;  // registrations plus admitted transactions
    std::uint64_t total_cost = 0;      // every unit debited from balances

    // Attack accounting. The per-kind breach counters stay zero in a
    // defended run.
    std::uint64_t adversarial_submissions = 0;
    std::uint64_t adversarial_commits = 0;  // beyond-quota or unregistered commits
    std::uint64_t tampered_deliveries = 0;
    std::uint64_t tampered_commits = 0;
    std::uint64_t forged_blocks_attempted = 0;
    std::uint64_t forged_blocks_accepted = 0;
    std::uint64_t hijacked_commits = 0;  // committed through a forged block
    AttackOutcome attack_outcome = AttackOutcome::None;

    // Wall-clock samples in microseconds; never exported to deterministic
    // artifacts.
    std::vector<double> keygen_us;
    std::vector<double> keyval_us;
};

struct SimResult {
    ScenarioMetrics metrics;
    std::vector<ledger::Block> chain;
    ledger::OffchainStore store;
    identity::Registry registry;
    dpos::DelegateSchedule schedule;
};

// Executes the full workflow deterministically: registration, election,
// per-transaction pipeline (participant check, gate, signing, validation,
// revocation), block production each interval, optional attack injection,
// and a final chain audit. Throws ConfigError before any event executes if
// the config is invalid; throws SimulationError only on internal failure.
SimResult run_simulation(const scenario::SimConfig& config);

struct LifecycleRow {
    std::uint64_t node_count = 0;
    double keygen_total_ms = 0;
    double keygen_per_op_us = 0;  // median
    double keyval_total_ms = 0;
    double keyval_per_op_us = 0;  // median
    std::uint64_t keygen_sim_ticks = 0;
    std::uint64_t keyval_sim_ticks = 0;
};

// Key generation and validation cost at each node count, one row per count.
std::vector<LifecycleRow> measure_key_lifecycle(const scenario::SimConfig& base,
                                                const std::vector<std::uint64_t>& node_counts);

}  // namespace dpki::netsim

#endif  // DPKI_NETSIM_HPP
