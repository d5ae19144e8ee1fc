// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_GAS_HPP
#define DPKI_GAS_HPP

#include <array>
#include <cstdint>

#include "dpki/identity.hpp"

namespace dpki::gas {

enum class Module { Participant, Signature, Revocation, SmartContract };

inline constexpr std::array<Module, 4> kModules = {
    Module::Participant, Module::Signature, Module::Revocation, Module::SmartContract};

const char* module_name(Module m);

struct ModuleGas {
    std::uint64_t init_gas = 0;
    std::uint64_t tx_gas = 0;
    bool operator==(const ModuleGas&) const = default;
};

// Execution-fee schedule. The defaults are the deployment measurements the
// engine models; every run charges from this table.
struct GasSchedule {
    ModuleGas participant{33781, 17484};
    ModuleGas signature{42856, 13752};
    ModuleGas revocation{19798, 9689};
    ModuleGas smart_contract{194837, 32675};
    std::uint64_t gas_price = 1;
    std::uint64_t gas_limit = 4'000'000;

    bool operator==(const GasSchedule&) const = default;

    const ModuleGas& entry(Module m) const;

    // Gas for a new node's one-time deployment of all four modules.
    std::uint64_t init_total() const;

    // Gas for one full transaction pipeline pass: participant check, gate,
    // signature, revocation.
    std::uint64_t per_tx_total() const;

    // Throws ConfigError when an entry is zero or the limit cannot cover the
    // largest single operation.
    void validate() const;
};

// Fee for a given amount of gas.
std::uint64_t total_cost(std::uint64_t gas_amount, const GasSchedule& schedule);

// Computes the fee, debits the participant and returns the cost. Throws
// InsufficientFundsError via the registry when the balance cannot cover it.
std::uint64_t charge(identity::Registry& registry, const Pid& pid, std::uint64_t gas_amount,
                     const GasSchedule& schedule);

// Per-module gas accumulator for a run.
class GasMeter {
  public:
    explicit GasMeter(const GasSchedule& schedule) : schedule_(schedule) {}

    std::uint64_t charge_init(Module m);
    std::uint64_t charge_tx(Module m);

    std::uint64_t used_init(Module m) const { return used_init_[index(m)]; }
    std::uint64_t used_tx(Module m) const { return used_tx_[index(m)]; }
    std::uint64_t total_used() const;

    const GasSchedule& schedule() const { return schedule_; }

  private:
    static std::size_t index(Module m) { return static_cast<std::size_t>(m); }

    GasSchedule schedule_;
    std::array<std::uint64_t, 4> used_init_{};
    std::array<std::uint64_t, 4> used_tx_{};
};

}  // namespace dpki::gas

#endif  // DPKI_GAS_HPP
