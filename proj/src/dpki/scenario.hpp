// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_SCENARIO_HPP
#define DPKI_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "dpki/gas.hpp"

namespace dpki::scenario {

enum class AttackKind { DoS, DDoS, Mitm, Majority51, Injection, Routing, Eclipse };

inline constexpr std::array<AttackKind, 7> kAllAttackKinds = {
    AttackKind::DoS,       AttackKind::DDoS,    AttackKind::Mitm, AttackKind::Majority51,
    AttackKind::Injection, AttackKind::Routing, AttackKind::Eclipse};

const char* attack_name(AttackKind kind);
AttackKind attack_from_name(const std::string& name);  // throws ConfigError

// intensity is kind-specific: flood transactions per attacker per tick
// (dos, ddos), injected transactions per attacker (injection), or a percent
// (mitm: tampered deliveries; majority51: claimed addresses; routing:
// tampered block replicas; eclipse: captured peer slots).
struct AttackScenario {
    AttackKind kind = AttackKind::DoS;
    std::uint32_t attacker_count = 1;
    std::uint64_t intensity = 1;
    std::uint64_t start_tick = 0;
    std::uint64_t end_tick = 0;
    bool operator==(const AttackScenario&) const = default;
};

// Bundled per-kind defaults used by the attack matrix.
AttackScenario default_attack(AttackKind kind);

struct LatencyRange {
    std::uint64_t min_ticks = 1;
    std::uint64_t max_ticks = 3;
    bool operator==(const LatencyRange&) const = default;
};

struct SimConfig {
    std::uint64_t node_count = 25;
    std::uint64_t rng_seed = 1;
    std::uint64_t tx_count = 200;
    std::uint64_t block_interval_ticks = 15;
    std::uint64_t delegate_count = 21;
    std::uint64_t rid_limit = 3;
    // Ticks between a threshold hit and the identity re-issue taking effect.
    std::uint64_t reset_delay_ticks = 30;
    std::uint64_t submit_interval_ticks = 1;
    LatencyRange link_latency;
    gas::GasSchedule gas_schedule;
    std::optional<AttackScenario> attack;
    // Fault-injection switch for suite-sensitivity checks; never set by
    // bundled configs.
    bool disable_contract_gate = false;

    bool operator==(const SimConfig&) const = default;

    // Throws ConfigError on any inconsistency.
    void validate() const;
};

// Strict parse: unknown keys are rejected by name and path, syntax errors
// carry line and column. Throws ConfigError.
SimConfig parse_config(const std::string& text);

// Reads and parses a file; throws IoError on filesystem failure.
SimConfig load_config(const std::string& path);

// Deterministic serialization; parse(serialize(c)) == c.
std::string serialize_config(const SimConfig& config);

}  // namespace dpki::scenario

#endif  // DPKI_SCENARIO_HPP
