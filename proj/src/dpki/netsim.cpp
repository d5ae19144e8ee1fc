// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/netsim.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "dpki/contract.hpp"
#include "dpki/errors.hpp"
#include "dpki/gas.hpp"
#include "dpki/keccak.hpp"
#include "dpki/rng.hpp"

namespace dpki::netsim {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_us(Clock::time_point start) {
    return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

struct PendingTx {
    contract::UnsignedTransaction tx;
    std::size_t record_index = 0;
    Pid forced_signer;  // zero: pick any eligible signer at arrival
    bool adversarial = false;
    bool injected = false;  // claim references an identity outside the registry
    bool tamper_checked = false;
    contract::SignerClaim injected_claim;
    secp::PrivateKey injected_key;
};

enum class EventKind { TxArrival, BlockSlot, IdentityReset };

struct Event {
    std::uint64_t tick = 0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::TxArrival;
    std::size_t pending_index = 0;  // TxArrival
    Pid reset_pid;                  // IdentityReset
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
        if (a.tick != b.tick) return a.tick > b.tick;
        return a.seq > b.seq;
    }
};

struct MempoolEntry {
    contract::SignedTransaction tx;
    std::size_t record_index = 0;
    bool adversarial = false;
    bool injected = false;
    bool tampered = false;
    bool beyond_quota = false;  // admitted past the revocation limit of its signer
};

identity::Registry::Options registry_options(const scenario::SimConfig& config) {
    identity::Registry::Options options;
    options.default_limit = config.rid_limit;
    return options;
}

class Simulation {
  public:
    explicit Simulation(const scenario::SimConfig& config)
        : config_(config),
          registry_(registry_options(config)),
          party_rng_(DetRng::fork_seed(config.rng_seed, "parties")),
          latency_rng_(DetRng::fork_seed(config.rng_seed, "latency")),
          signer_rng_(DetRng::fork_seed(config.rng_seed, "signer")),
          attack_rng_(DetRng::fork_seed(config.rng_seed, "attack")) {}

    SimResult run() {
        config_.validate();
        register_nodes();
        elect();
        pick_attackers();
        seed_honest_traffic();
        seed_attack_traffic();
        schedule_slot(config_.block_interval_ticks);
        loop();
        finish();
        return SimResult{std::move(metrics_), std::move(chain_), std::move(store_),
                         std::move(registry_), std::move(*schedule_)};
    }

  private:
    // Setup ------------------------------------------------------------------

    void register_nodes() {
        for (std::uint64_t i = 0; i < config_.node_count; ++i) {
            auto started = Clock::now();
            const auto& participant = registry_.register_participant(
                identity::NodeStatus::New, DetRng::fork_seed(config_.rng_seed, "node", i));
            metrics_.keygen_us.push_back(elapsed_us(started));
            std::uint64_t gas = config_.gas_schedule.init_total();
            std::uint64_t cost = gas::charge(registry_, participant.pid, gas, config_.gas_schedule);
            metrics_.registrations.push_back({participant.pid, 0, gas, cost});
            metrics_.total_gas_used += gas;
            metrics_.total_cost += cost;
            node_order_.push_back(participant.pid);
        }
    }

    void elect() {
        // Every node casts a self-vote so the tally covers the whole
        // population: the top delegate_count become delegates and the rest
        // form the runner-up list used when a delegate is evicted.
        std::vector<dpos::Vote> votes;
        for (std::uint64_t i = 0; i < config_.node_count; ++i) {
            const Pid& voter = node_order_[i];
            votes.push_back({voter, voter, registry_.find(voter)->balance});
        }
        schedule_.emplace(dpos::elect_delegates(votes,
                                                static_cast<std::size_t>(config_.delegate_count),
                                                config_.block_interval_ticks));
    }

    void pick_attackers() {
        if (!config_.attack) return;
        const auto& attack = *config_.attack;
        if (attack.kind == scenario::AttackKind::Injection) {
            for (std::uint64_t i = 0; i < attack.attacker_count; ++i) {
                Intruder intruder;
                intruder.keypair = identity::generate_keypair(
                    DetRng::fork_seed(config_.rng_seed, "inject", i));
                attack_rng_.fill(intruder.pid.bytes);
                intruders_.push_back(intruder);
            }
            return;
        }
        // Other attacks are mounted from already-registered nodes, taken from
        // the tail of the registration order.
        for (std::uint64_t i = 0; i < attack.attacker_count; ++i) {
            attackers_.push_back(node_order_[config_.node_count - 1 - i]);
        }
        if (attack.kind == scenario::AttackKind::Eclipse) {
            // The victim owns the first honest slot inside the attack window,
            // so the isolation hits slots that actually occur.
            std::uint64_t slot = attack.start_tick / config_.block_interval_ticks;
            for (std::size_t i = 0; i < schedule_->delegates().size(); ++i, ++slot) {
                const Pid& owner =
                    schedule_->producer_for_slot(slot * config_.block_interval_ticks);
                if (std::find(attackers_.begin(), attackers_.end(), owner) == attackers_.end()) {
                    eclipse_victim_ = owner;
                    break;
                }
            }
            if (eclipse_victim_.is_zero()) {
                throw SimulationError("eclipse attack requires an honest delegate");
            }
        }
    }

    contract::UnsignedTransaction make_tx(DetRng& rng, const Pid& sender, const Pid& receiver) {
        Bytes payload;
        append_u64_le(payload, payload_counter_++);
        Bytes noise(32);
        rng.fill(noise);
        payload.insert(payload.end(), noise.begin(), noise.end());
        return contract::make_transaction(std::move(payload), sender, receiver);
    }

    std::size_t new_record(const Hash256& tx_id, std::uint64_t submit_tick, bool adversarial) {
        TxRecord record;
        record.tx_id = tx_id;
        record.submit_tick = submit_tick;
        record.adversarial = adversarial;
        metrics_.transactions.push_back(record);
        metrics_.submitted += 1;
        if (adversarial) metrics_.adversarial_submissions += 1;
        return metrics_.transactions.size() - 1;
    }

    void submit(PendingTx pending, std::uint64_t submit_tick) {
        pending.record_index = new_record(pending.tx.tx_id, submit_tick, pending.adversarial);
        std::uint64_t latency = latency_rng_.between(config_.link_latency.min_ticks,
                                                     config_.link_latency.max_ticks);
        pendings_.push_back(std::move(pending));
        push_event({submit_tick + latency, next_seq_++, EventKind::TxArrival,
                    pendings_.size() - 1, Pid{}});
    }

    void seed_honest_traffic() {
        for (std::uint64_t i = 0; i < config_.tx_count; ++i) {
            std::uint64_t tick = 1 + i * config_.submit_interval_ticks;
            Pid sender = node_order_[party_rng_.below(config_.node_count)];
            Pid receiver = node_order_[party_rng_.below(config_.node_count)];
            PendingTx pending;
            pending.tx = make_tx(party_rng_, sender, receiver);
            submit(std::move(pending), tick);
        }
    }

    void seed_attack_traffic() {
        if (!config_.attack) return;
        const auto& attack = *config_.attack;
        switch (attack.kind) {
            case scenario::AttackKind::DoS:
            case scenario::AttackKind::DDoS:
                // intensity: flood transactions per attacker per tick.
                for (std::uint64_t tick = attack.start_tick; tick <= attack.end_tick; ++tick) {
                    for (const Pid& attacker : attackers_) {
                        for (std::uint64_t k = 0; k < attack.intensity; ++k) {
                            PendingTx pending;
                            Pid receiver = node_order_[attack_rng_.below(config_.node_count)];
                            pending.tx = make_tx(attack_rng_, attacker, receiver);
                            pending.forced_signer = attacker;
                            pending.adversarial = true;
                            submit(std::move(pending), tick);
                        }
                    }
                }
                break;
            case scenario::AttackKind::Injection:
                // intensity: transactions per intruder, spread across the window.
                for (const Intruder& intruder : intruders_) {
                    std::uint64_t span = attack.end_tick - attack.start_tick;
                    for (std::uint64_t k = 0; k < attack.intensity; ++k) {
                        std::uint64_t tick =
                            attack.start_tick +
                            (attack.intensity > 1 ? span * k / (attack.intensity - 1) : 0);
                        PendingTx pending;
                        Pid receiver = node_order_[attack_rng_.below(config_.node_count)];
                        pending.tx = make_tx(attack_rng_, intruder.pid, receiver);
                        pending.adversarial = true;
                        pending.injected = true;
                        pending.injected_claim = {
                            intruder.pid, 0, identity::derive_address(intruder.keypair.public_key)};
                        pending.injected_key = intruder.keypair.private_key;
                        submit(std::move(pending), tick);
                    }
                }
                break;
            case scenario::AttackKind::Mitm:
            case scenario::AttackKind::Majority51:
            case scenario::AttackKind::Routing:
            case scenario::AttackKind::Eclipse:
                // Mounted in-line: tampering at arrival, forged or withheld
                // blocks at slot boundaries.
                break;
        }
    }

    // Event loop ---------------------------------------------------------------

    void push_event(Event event) { queue_.push(event); }

    void schedule_slot(std::uint64_t tick) {
        push_event({tick, next_seq_++, EventKind::BlockSlot, 0, Pid{}});
        slot_scheduled_ = true;
    }

    void loop() {
        std::uint64_t safety = 0;
        while (!queue_.empty()) {
            if (++safety > 50'000'000) throw SimulationError("simulation failed to converge");
            Event event = queue_.top();
            queue_.pop();
            metrics_.final_tick = std::max(metrics_.final_tick, event.tick);
            switch (event.kind) {
                case EventKind::TxArrival:
                    on_arrival(event);
                    break;
                case EventKind::BlockSlot:
                    slot_scheduled_ = false;
                    on_slot(event.tick);
                    break;
                case EventKind::IdentityReset:
                    on_reset(event);
                    break;
            }
            // Blocks keep flowing while any work remains.
            if (!slot_scheduled_ && (!queue_.empty() || !mempool_.empty())) {
                std::uint64_t next =
                    (event.tick / config_.block_interval_ticks + 1) * config_.block_interval_ticks;
                schedule_slot(next);
            }
        }
    }

    // Transaction pipeline -------------------------------------------------------

    bool in_attack_window(std::uint64_t tick) const {
        return config_.attack && tick >= config_.attack->start_tick &&
               tick <= config_.attack->end_tick;
    }

    void reject(std::size_t record_index, RejectReason reason) {
        TxRecord& record = metrics_.transactions[record_index];
        record.status = TxStatus::Rejected;
        record.reason = reason;
        metrics_.rejected += 1;
        metrics_.rejected_by_reason[reason] += 1;
    }

    // Follows reset chains so a node keeps transacting under its renewed
    // identity.
    std::optional<Pid> current_identity(const Pid& pid) const {
        if (registry_.find(pid) != nullptr) return pid;
        return registry_.successor_of(pid);
    }

    std::optional<Pid> pick_signer(const PendingTx& pending) {
        if (!pending.forced_signer.is_zero()) return current_identity(pending.forced_signer);
        std::vector<const Pid*> eligible;
        for (const Pid& pid : node_order_) {
            const auto* p = registry_.find(pid);
            if (p != nullptr && p->rid < p->limit) eligible.push_back(&pid);
        }
        if (eligible.empty()) return std::nullopt;
        return *eligible[signer_rng_.below(eligible.size())];
    }

    void on_arrival(const Event& event) {
        PendingTx& pending = pendings_[event.pending_index];
        TxRecord& record = metrics_.transactions[pending.record_index];

        // A man in the middle mutates the payload in flight; the committed
        // digest no longer matches and verification fails downstream.
        if (config_.attack && config_.attack->kind == scenario::AttackKind::Mitm &&
            !pending.tamper_checked && in_attack_window(event.tick)) {
            pending.tamper_checked = true;
            if (attack_rng_.below(100) < config_.attack->intensity &&
                !pending.tx.payload.empty()) {
                pending.tx.payload[attack_rng_.below(pending.tx.payload.size())] ^= 0x01;
                record.tampered = true;
                metrics_.tampered_deliveries += 1;
            }
        }

        // Integrity check: the payload must still hash to the committed id.
        if (keccak256(pending.tx.payload) != pending.tx.tx_id) {
            reject(pending.record_index, RejectReason::InvalidSignature);
            return;
        }

        // Participant check: both parties must resolve to active nodes. A
        // node that renewed its identity mid-flight resolves to its
        // successor. Intruder traffic skips this and fails at the gate.
        if (!pending.injected) {
            auto sender = current_identity(pending.tx.sender_pid);
            auto receiver = current_identity(pending.tx.receiver_pid);
            if (!sender || !receiver) {
                reject(pending.record_index, RejectReason::IdentityMismatch);
                return;
            }
            pending.tx.sender_pid = *sender;
            pending.tx.receiver_pid = *receiver;
        }

        // Signer selection. Honest traffic picks any participant that can
        // still sign; flood traffic insists on the attacker identity.
        contract::SignerClaim claim;
        const identity::Participant* signer = nullptr;
        if (pending.injected) {
            claim = pending.injected_claim;
        } else {
            auto signer_pid = pick_signer(pending);
            if (!signer_pid) {
                // Every signer is at its limit awaiting reset; retry shortly.
                if (++requeues_ > 1'000'000) {
                    throw SimulationError("no eligible signer available");
                }
                push_event({event.tick + 1, next_seq_++, EventKind::TxArrival,
                            event.pending_index, Pid{}});
                return;
            }
            signer = registry_.find(*signer_pid);
            claim = contract::claim_for(*signer);
        }

        // Smart-contract gate.
        if (!config_.disable_contract_gate) {
            auto decision = contract::contract_gate(claim, registry_);
            if (!decision.admitted) {
                reject(pending.record_index,
                       decision.reason == contract::RejectReason::ThresholdExceeded
                           ? RejectReason::ThresholdExceeded
                           : RejectReason::IdentityMismatch);
                return;
            }
        }

        // Gas admission control, charged to the sender once the transaction
        // fully validates.
        std::uint64_t pipeline_gas = config_.gas_schedule.per_tx_total();
        if (pipeline_gas > config_.gas_schedule.gas_limit) {
            reject(pending.record_index, RejectReason::GasLimitExceeded);
            return;
        }
        std::uint64_t fee = gas::total_cost(pipeline_gas, config_.gas_schedule);
        if (!pending.injected && registry_.find(pending.tx.sender_pid)->balance < fee) {
            reject(pending.record_index, RejectReason::InsufficientFunds);
            return;
        }

        // Signing. With the gate disabled (or for an intruder claim) the
        // contract precondition would throw, so the signature is produced
        // directly.
        std::uint64_t signing_gas =
            config_.gas_schedule.smart_contract.tx_gas + config_.gas_schedule.signature.tx_gas;
        contract::SignedTransaction signed_tx;
        if (pending.injected) {
            signed_tx = contract::SignedTransaction{
                pending.tx.tx_id,           pending.tx.payload,
                pending.tx.sender_pid,      pending.tx.receiver_pid,
                claim,                      secp::sign(pending.injected_key, pending.tx.tx_id),
                signing_gas};
        } else if (config_.disable_contract_gate) {
            signed_tx = contract::SignedTransaction{
                pending.tx.tx_id,
                pending.tx.payload,
                pending.tx.sender_pid,
                pending.tx.receiver_pid,
                claim,
                secp::sign(signer->keypair.private_key, pending.tx.tx_id),
                signing_gas};
        } else {
            signed_tx =
                contract::sign_transaction(pending.tx, *signer, registry_, config_.gas_schedule);
        }

        // Validation by the receiving side.
        auto started = Clock::now();
        bool valid = contract::validate_signature(signed_tx, registry_);
        metrics_.keyval_us.push_back(elapsed_us(started));
        if (!valid) {
            reject(pending.record_index, RejectReason::InvalidSignature);
            return;
        }

        std::uint64_t cost = 0;
        if (!pending.injected) {
            cost = gas::charge(registry_, pending.tx.sender_pid, pipeline_gas,
                               config_.gas_schedule);
        }
        record.gas_used = pipeline_gas;
        record.cost = cost;
        metrics_.total_gas_used += pipeline_gas;
        metrics_.total_cost += cost;

        // Revocation accounting for the signer; hitting the limit schedules
        // an identity reset after the configured delay.
        bool beyond_quota = false;
        if (!pending.injected) {
            std::uint64_t admitted = ++admitted_since_reset_[signer->pid];
            beyond_quota = admitted > signer->limit;
            auto revocation = contract::revoke(signer->pid, registry_, true);
            if (revocation.status == contract::RevocationStatus::ResetRequired &&
                pending_resets_.insert(signer->pid).second) {
                push_event({event.tick + config_.reset_delay_ticks, next_seq_++,
                            EventKind::IdentityReset, 0, signer->pid});
            }
        }

        mempool_.push_back({std::move(signed_tx), pending.record_index, pending.adversarial,
                            pending.injected, record.tampered, beyond_quota});
    }

    // Identity reset ---------------------------------------------------------------

    void on_reset(const Event& event) {
        const Pid old_pid = event.reset_pid;
        pending_resets_.erase(old_pid);
        const auto* participant = registry_.find(old_pid);
        if (participant == nullptr || participant->rid < participant->limit) return;
        const auto& renewed = registry_.reset_participant(
            old_pid, DetRng::fork_seed(config_.rng_seed, "reset", resets_++));
        metrics_.identity_resets += 1;
        admitted_since_reset_.erase(old_pid);
        auto slot = std::find(node_order_.begin(), node_order_.end(), old_pid);
        if (slot != node_order_.end()) *slot = renewed.pid;
        schedule_->substitute(old_pid, renewed.pid);
        if (!eclipse_victim_.is_zero() && eclipse_victim_ == old_pid) {
            eclipse_victim_ = renewed.pid;
        }
        for (Pid& attacker : attackers_) {
            if (attacker == old_pid) attacker = renewed.pid;
        }
    }

    // Block production ----------------------------------------------------------------

    contract::KeyResolver audit_resolver() const {
        return [this](const Pid& pid) { return registry_.resolve(pid, true); };
    }

    const ledger::BlockHeader& tip() const {
        return chain_.empty() ? genesis_.header : chain_.back().header;
    }

    void ensure_genesis() {
        if (chain_.empty()) chain_.push_back(genesis_);
    }

    // A candidate block from outside the scheduled rotation. Honest nodes
    // check the producer against the slot owner, then validate the block
    // content itself; acceptance of a forgery counts as a breach.
    void offer_forged_block(const ledger::Block& forged, const Pid& slot_owner) {
        metrics_.forged_blocks_attempted += 1;
        if (forged.header.producer_pid != slot_owner) return;
        ensure_genesis();
        auto candidate = chain_;
        candidate.push_back(forged);
        if (ledger::validate_chain(candidate, {audit_resolver(), &store_})) return;
        metrics_.forged_blocks_accepted += 1;
        metrics_.hijacked_commits += forged.transactions.size();
        chain_ = std::move(candidate);
    }

    ledger::Block forge_block(const Pid& forger_pid, std::uint64_t tick, bool steal_identity,
                              const Pid& slot_owner) {
        const auto* forger = registry_.find(forger_pid);
        auto fake = make_tx(attack_rng_, forger_pid, forger_pid);
        contract::SignedTransaction tx{
            fake.tx_id,
            fake.payload,
            forger_pid,
            forger_pid,
            contract::claim_for(*forger),
            secp::sign(forger->keypair.private_key, fake.tx_id),
            config_.gas_schedule.smart_contract.tx_gas + config_.gas_schedule.signature.tx_gas};
        ensure_genesis();
        auto block = ledger::build_block({tx}, tip(), {forger_pid, forger->keypair.private_key},
                                         tick, audit_resolver(), &store_);
        // The forgery either claims the forger's own identity (rejected by
        // the slot-owner check) or claims the slot owner's identity (rejected
        // by the producer signature check).
        if (steal_identity) {
            block.header.producer_pid = slot_owner;
        }
        return block;
    }

    void on_slot(std::uint64_t tick) {
        std::uint64_t slot = schedule_->slot_for_tick(tick);
        const Pid producer = schedule_->producer_for_slot(tick);
        const bool attack_live = in_attack_window(tick);

        // A majority attacker races the honest producer with a conflicting
        // block for the same height.
        if (attack_live && config_.attack->kind == scenario::AttackKind::Majority51) {
            bool steal = attack_rng_.below(2) == 1;
            offer_forged_block(forge_block(attackers_[0], tick, steal, producer), producer);
        }

        // An eclipsed delegate is cut off: its block never propagates, and
        // the attacker tries to fill the slot with a forgery.
        if (attack_live && config_.attack->kind == scenario::AttackKind::Eclipse &&
            producer == eclipse_victim_) {
            bool steal = attack_rng_.below(2) == 1;
            offer_forged_block(forge_block(attackers_[0], tick, steal, producer), producer);
            metrics_.missed_slots += 1;
            if (schedule_->record_slot_outcome(slot, false)) {
                metrics_.delegate_evictions += 1;
            }
            return;
        }

        if (mempool_.empty()) {
            metrics_.skipped_slots += 1;
            return;
        }

        std::vector<contract::SignedTransaction> txs;
        std::vector<MempoolEntry> included;
        std::uint64_t block_gas = 0;
        while (!mempool_.empty() &&
               block_gas + config_.gas_schedule.per_tx_total() <= config_.gas_schedule.gas_limit) {
            included.push_back(std::move(mempool_.front()));
            mempool_.pop_front();
            txs.push_back(included.back().tx);
            block_gas += config_.gas_schedule.per_tx_total();
        }

        const auto* producer_node = registry_.find(producer);
        if (producer_node == nullptr) throw SimulationError("producer not registered");
        ensure_genesis();
        auto block = ledger::build_block(std::move(txs), tip(),
                                         {producer, producer_node->keypair.private_key}, tick,
                                         audit_resolver(), &store_);

        // A routing attacker diverts propagation and replays a mutated copy
        // of the block to part of the network; honest nodes re-validate.
        if (attack_live && config_.attack->kind == scenario::AttackKind::Routing &&
            attack_rng_.below(100) < config_.attack->intensity) {
            auto mutated = block;
            auto& victim_tx = mutated.transactions[attack_rng_.below(mutated.transactions.size())];
            victim_tx.gas_used ^= 1;
            metrics_.forged_blocks_attempted += 1;
            auto candidate = chain_;
            candidate.push_back(mutated);
            if (!ledger::validate_chain(candidate, {audit_resolver(), &store_})) {
                metrics_.forged_blocks_accepted += 1;
                metrics_.hijacked_commits += mutated.transactions.size();
                chain_ = std::move(candidate);
                metrics_.blocks_produced += 1;
                commit_entries(included, tick);
                schedule_->record_slot_outcome(slot, true);
                return;
            }
        }

        chain_.push_back(std::move(block));
        metrics_.blocks_produced += 1;
        commit_entries(included, tick);
        schedule_->record_slot_outcome(slot, true);
    }

    void commit_entries(const std::vector<MempoolEntry>& included, std::uint64_t tick) {
        for (const MempoolEntry& entry : included) {
            TxRecord& record = metrics_.transactions[entry.record_index];
            record.status = TxStatus::Committed;
            record.commit_tick = tick;
            metrics_.committed += 1;
            if (entry.adversarial && (entry.beyond_quota || entry.injected)) {
                metrics_.adversarial_commits += 1;
            }
            if (entry.tampered) metrics_.tampered_commits += 1;
        }
    }

    // Wrap-up ---------------------------------------------------------------------

    AttackOutcome judge() const {
        if (!config_.attack) return AttackOutcome::None;
        std::uint64_t breaches = 0;
        switch (config_.attack->kind) {
            case scenario::AttackKind::DoS:
            case scenario::AttackKind::DDoS:
            case scenario::AttackKind::Injection:
                breaches = metrics_.adversarial_commits;
                break;
            case scenario::AttackKind::Mitm:
                breaches = metrics_.tampered_commits;
                break;
            case scenario::AttackKind::Majority51:
            case scenario::AttackKind::Routing:
                breaches = metrics_.forged_blocks_accepted;
                break;
            case scenario::AttackKind::Eclipse:
                breaches = metrics_.forged_blocks_accepted + metrics_.hijacked_commits;
                break;
        }
        return breaches == 0 ? AttackOutcome::Defended : AttackOutcome::Breached;
    }

    void finish() {
        ensure_genesis();
        if (auto violation = ledger::validate_chain(chain_, {audit_resolver(), &store_})) {
            throw SimulationError("final audit failed at height " +
                                  std::to_string(violation->height) + ": " +
                                  ledger::violation_name(violation->reason));
        }
        if (metrics_.committed + metrics_.rejected != metrics_.submitted) {
            throw SimulationError("transaction conservation violated");
        }
        metrics_.attack_outcome = judge();
    }

    scenario::SimConfig config_;
    identity::Registry registry_;
    DetRng party_rng_;
    DetRng latency_rng_;
    DetRng signer_rng_;
    DetRng attack_rng_;

    std::optional<dpos::DelegateSchedule> schedule_;
    std::vector<Pid> node_order_;  // registration order, updated in place on reset
    std::vector<Pid> attackers_;
    struct Intruder {
        Pid pid;
        identity::KeyPair keypair;
    };
    std::vector<Intruder> intruders_;
    Pid eclipse_victim_;

    std::vector<PendingTx> pendings_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
    std::uint64_t next_seq_ = 0;
    bool slot_scheduled_ = false;
    std::uint64_t payload_counter_ = 0;
    std::uint64_t requeues_ = 0;
    std::uint64_t resets_ = 0;

    std::deque<MempoolEntry> mempool_;
    std::unordered_map<Pid, std::uint64_t, PidHasher> admitted_since_reset_;
    std::unordered_set<Pid, PidHasher> pending_resets_;

    ledger::Block genesis_ = ledger::make_genesis();
    std::vector<ledger::Block> chain_;
    ledger::OffchainStore store_;
    ScenarioMetrics metrics_;
};

double median(std::vector<double> values) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return (values[mid - 1] + values[mid]) / 2;
}

}  // namespace

const char* reject_reason_name(RejectReason reason) {
    switch (reason) {
        case RejectReason::None: return "none";
        case RejectReason::IdentityMismatch: return "identity_mismatch";
        case RejectReason::ThresholdExceeded: return "threshold_exceeded";
        case RejectReason::InvalidSignature: return "invalid_signature";
        case RejectReason::GasLimitExceeded: return "gas_limit_exceeded";
        case RejectReason::InsufficientFunds: return "insufficient_funds";
    }
    return "unknown";
}

const char* attack_outcome_name(AttackOutcome outcome) {
    switch (outcome) {
        case AttackOutcome::None: return "none";
        case AttackOutcome::Defended: return "defended";
        case AttackOutcome::Breached: return "breached";
    }
    return "unknown";
}

SimResult run_simulation(const scenario::SimConfig& config) {
    return Simulation(config).run();
}

std::vector<LifecycleRow> measure_key_lifecycle(const scenario::SimConfig& base,
                                                const std::vector<std::uint64_t>& node_counts) {
    std::vector<LifecycleRow> rows;
    for (std::uint64_t count : node_counts) {
        if (count == 0) throw ConfigError("node count must be positive");
        LifecycleRow row;
        row.node_count = count;

        identity::Registry registry(registry_options(base));
        std::vector<double> keygen;
        std::vector<Pid> pids;
        auto keygen_start = Clock::now();
        for (std::uint64_t i = 0; i < count; ++i) {
            auto started = Clock::now();
            const auto& participant = registry.register_participant(
                identity::NodeStatus::New, DetRng::fork_seed(base.rng_seed, "life", i));
            keygen.push_back(elapsed_us(started));
            pids.push_back(participant.pid);
        }
        row.keygen_total_ms = elapsed_us(keygen_start) / 1000.0;
        row.keygen_per_op_us = median(keygen);
        // One registration handshake per node.
        row.keygen_sim_ticks = count;

        DetRng rng(DetRng::fork_seed(base.rng_seed, "life-payload", count));
        std::vector<contract::SignedTransaction> txs;
        for (std::uint64_t i = 0; i < count; ++i) {
            Bytes payload;
            append_u64_le(payload, i);
            Bytes noise(32);
            rng.fill(noise);
            payload.insert(payload.end(), noise.begin(), noise.end());
            auto unsigned_tx =
                contract::make_transaction(std::move(payload), pids[i], pids[(i + 1) % count]);
            txs.push_back(contract::sign_transaction(unsigned_tx, *registry.find(pids[i]),
                                                     registry, base.gas_schedule));
        }
        std::vector<double> keyval;
        auto keyval_start = Clock::now();
        for (const auto& tx : txs) {
            auto started = Clock::now();
            if (!contract::validate_signature(tx, registry)) {
                throw SimulationError("lifecycle validation failed");
            }
            keyval.push_back(elapsed_us(started));
        }
        row.keyval_total_ms = elapsed_us(keyval_start) / 1000.0;
        row.keyval_per_op_us = median(keyval);
        // One validation round per node.
        row.keyval_sim_ticks = count;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dpki::netsim
