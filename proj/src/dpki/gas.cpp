// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/gas.hpp"

#include <algorithm>

#include "dpki/errors.hpp"

namespace dpki::gas {

const char* module_name(Module m) {
    switch (m) {
        case Module::Participant: return "participant";
        case Module::Signature: return "signature";
        case Module::Revocation: return "revocation";
        case Module::SmartContract: return "smart_contract";
    }
    return "unknown";
}

const ModuleGas& GasSchedule::entry(Module m) const {
    switch (m) {
        case Module::Participant: return participant;
        case Module::Signature: return signature;
        case Module::Revocation: return revocation;
        case Module::SmartContract: return smart_contract;
    }
    throw ConfigError("unknown gas module");
}

std::uint64_t GasSchedule::init_total() const {
    return participant.init_gas + signature.init_gas + revocation.init_gas +
           smart_contract.init_gas;
}

std::uint64_t GasSchedule::per_tx_total() const {
    return participant.tx_gas + signature.tx_gas + revocation.tx_gas + smart_contract.tx_gas;
}

void GasSchedule::validate() const {
    std::uint64_t largest = 0;
    for (Module m : kModules) {
        const ModuleGas& e = entry(m);
        if (e.init_gas == 0 || e.tx_gas == 0)
            throw ConfigError(std::string("gas schedule entry for ") + module_name(m) +
                              " must be positive");
        largest = std::max({largest, e.init_gas, e.tx_gas});
    }
    if (gas_price == 0) throw ConfigError("gas price must be positive");
    if (gas_limit < largest)
        throw ConfigError("gas limit below the largest single-operation cost");
}

std::uint64_t total_cost(std::uint64_t gas_amount, const GasSchedule& schedule) {
    return gas_amount * schedule.gas_price;
}

std::uint64_t charge(identity::Registry& registry, const Pid& pid, std::uint64_t gas_amount,
                     const GasSchedule& schedule) {
    std::uint64_t cost = total_cost(gas_amount, schedule);
    registry.debit(pid, cost);
    return cost;
}

std::uint64_t GasMeter::charge_init(Module m) {
    std::uint64_t amount = schedule_.entry(m).init_gas;
    used_init_[index(m)] += amount;
    return amount;
}

std::uint64_t GasMeter::charge_tx(Module m) {
    std::uint64_t amount = schedule_.entry(m).tx_gas;
    used_tx_[index(m)] += amount;
    return amount;
}

std::uint64_t GasMeter::total_used() const {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < 4; ++i) total += used_init_[i] + used_tx_[i];
    return total;
}

}  // namespace dpki::gas
