// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "dpki/errors.hpp"

namespace dpki::scenario {

using nlohmann::json;
using nlohmann::ordered_json;

const char* attack_name(AttackKind kind) {
    switch (kind) {
        case AttackKind::DoS: return "dos";
        case AttackKind::DDoS: return "ddos";
        case AttackKind::Mitm: return "mitm";
        case AttackKind::Majority51: return "majority51";
        case AttackKind::Injection: return "injection";
        case AttackKind::Routing: return "routing";
        case AttackKind::Eclipse: return "eclipse";
    }
    return "unknown";
}

AttackKind attack_from_name(const std::string& name) {
    for (AttackKind kind : kAllAttackKinds)
        if (name == attack_name(kind)) return kind;
    throw ConfigError("unknown attack kind: " + name);
}

AttackScenario default_attack(AttackKind kind) {
    AttackScenario a;
    a.kind = kind;
    a.start_tick = 30;
    a.end_tick = 150;
    switch (kind) {
        case AttackKind::DoS:
            a.attacker_count = 1;
            a.intensity = 3;  // flood txs per tick
            break;
        case AttackKind::DDoS:
            a.attacker_count = 5;
            a.intensity = 3;
            break;
        case AttackKind::Mitm:
            a.attacker_count = 1;
            a.intensity = 20;  // percent of deliveries tampered
            break;
        case AttackKind::Majority51:
            a.attacker_count = 1;
            a.intensity = 51;  // percent of addresses claimed
            break;
        case AttackKind::Injection:
            a.attacker_count = 5;
            a.intensity = 4;  // transactions per unregistered node
            break;
        case AttackKind::Routing:
            a.attacker_count = 1;
            a.intensity = 30;  // percent of block replicas tampered
            break;
        case AttackKind::Eclipse:
            a.attacker_count = 1;
            a.intensity = 100;  // percent of the victim's peer table
            break;
    }
    return a;
}

void SimConfig::validate() const {
    if (node_count == 0) throw ConfigError("node_count must be positive");
    if (tx_count == 0) throw ConfigError("tx_count must be positive");
    if (block_interval_ticks == 0) throw ConfigError("block_interval_ticks must be positive");
    if (delegate_count == 0 || delegate_count > 100)
        throw ConfigError("delegate_count must be within [1, 100]");
    if (node_count < delegate_count)
        throw ConfigError("node_count must be at least delegate_count");
    if (rid_limit == 0) throw ConfigError("rid_limit must be positive");
    if (submit_interval_ticks == 0)
        throw ConfigError("submit_interval_ticks must be positive");
    if (link_latency.min_ticks == 0 || link_latency.max_ticks < link_latency.min_ticks)
        throw ConfigError("link_latency must satisfy 1 <= min_ticks <= max_ticks");
    gas_schedule.validate();
    if (attack) {
        if (attack->attacker_count == 0)
            throw ConfigError("attack.attacker_count must be positive");
        if (attack->intensity == 0) throw ConfigError("attack.intensity must be positive");
        if (attack->end_tick < attack->start_tick)
            throw ConfigError("attack window must have start_tick <= end_tick");
        switch (attack->kind) {
            case AttackKind::Mitm:
            case AttackKind::Majority51:
            case AttackKind::Routing:
            case AttackKind::Eclipse:
                if (attack->intensity > 100)
                    throw ConfigError("attack.intensity is a percent and must be <= 100");
                break;
            default: break;
        }
        if (attack->kind != AttackKind::Injection && attack->attacker_count >= node_count)
            throw ConfigError("attack.attacker_count must leave honest nodes");
    }
}

namespace {

// Line and column of a byte offset, for parse diagnostics.
std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
        if (!allowed.contains(item.key()))
            throw ConfigError("unknown key \"" + item.key() + "\" at " + path);
}

std::uint64_t read_u64(const json& obj, const std::string& path, const char* key,
                       std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned())
        throw ConfigError(std::string("key \"") + key + "\" at " + path +
                          " must be a non-negative integer");
    return v.get<std::uint64_t>();
}

gas::ModuleGas read_module_gas(const json& obj, const std::string& path,
                               const gas::ModuleGas& fallback) {
    require_keys(obj, path, {"init_gas", "tx_gas"});
    gas::ModuleGas out;
    out.init_gas = read_u64(obj, path, "init_gas", fallback.init_gas);
    out.tx_gas = read_u64(obj, path, "tx_gas", fallback.tx_gas);
    return out;
}

}  // namespace

SimConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        std::ostringstream msg;
        msg << "config syntax error at line " << line << ", column " << col;
        throw ConfigError(msg.str());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");

    require_keys(root, "config root",
                 {"node_count", "rng_seed", "tx_count", "block_interval_ticks",
                  "delegate_count", "rid_limit", "reset_delay_ticks",
                  "submit_interval_ticks", "link_latency", "gas", "attack",
                  "disable_contract_gate"});

    SimConfig config;
    config.node_count = read_u64(root, "config root", "node_count", config.node_count);
    config.rng_seed = read_u64(root, "config root", "rng_seed", config.rng_seed);
    config.tx_count = read_u64(root, "config root", "tx_count", config.tx_count);
    config.block_interval_ticks =
        read_u64(root, "config root", "block_interval_ticks", config.block_interval_ticks);
    config.delegate_count =
        read_u64(root, "config root", "delegate_count", config.delegate_count);
    config.rid_limit = read_u64(root, "config root", "rid_limit", config.rid_limit);
    config.reset_delay_ticks =
        read_u64(root, "config root", "reset_delay_ticks", config.reset_delay_ticks);
    config.submit_interval_ticks =
        read_u64(root, "config root", "submit_interval_ticks", config.submit_interval_ticks);

    if (root.contains("link_latency")) {
        const json& lat = root.at("link_latency");
        require_keys(lat, "link_latency", {"min_ticks", "max_ticks"});
        config.link_latency.min_ticks =
            read_u64(lat, "link_latency", "min_ticks", config.link_latency.min_ticks);
        config.link_latency.max_ticks =
            read_u64(lat, "link_latency", "max_ticks", config.link_latency.max_ticks);
    }

    if (root.contains("gas")) {
        const json& g = root.at("gas");
        require_keys(g, "gas",
                     {"participant", "signature", "revocation", "smart_contract",
                      "gas_price", "gas_limit"});
        gas::GasSchedule& s = config.gas_schedule;
        if (g.contains("participant"))
            s.participant = read_module_gas(g.at("participant"), "gas.participant",
                                            s.participant);
        if (g.contains("signature"))
            s.signature = read_module_gas(g.at("signature"), "gas.signature", s.signature);
        if (g.contains("revocation"))
            s.revocation = read_module_gas(g.at("revocation"), "gas.revocation", s.revocation);
        if (g.contains("smart_contract"))
            s.smart_contract =
                read_module_gas(g.at("smart_contract"), "gas.smart_contract", s.smart_contract);
        s.gas_price = read_u64(g, "gas", "gas_price", s.gas_price);
        s.gas_limit = read_u64(g, "gas", "gas_limit", s.gas_limit);
    }

    if (root.contains("attack") && !root.at("attack").is_null()) {
        const json& a = root.at("attack");
        require_keys(a, "attack",
                     {"kind", "attacker_count", "intensity", "start_tick", "end_tick"});
        if (!a.contains("kind")) throw ConfigError("attack.kind is required");
        if (!a.at("kind").is_string()) throw ConfigError("attack.kind must be a string");
        AttackScenario attack = default_attack(attack_from_name(a.at("kind").get<std::string>()));
        attack.attacker_count = static_cast<std::uint32_t>(
            read_u64(a, "attack", "attacker_count", attack.attacker_count));
        attack.intensity = read_u64(a, "attack", "intensity", attack.intensity);
        attack.start_tick = read_u64(a, "attack", "start_tick", attack.start_tick);
        attack.end_tick = read_u64(a, "attack", "end_tick", attack.end_tick);
        config.attack = attack;
    }

    if (root.contains("disable_contract_gate")) {
        const json& v = root.at("disable_contract_gate");
        if (!v.is_boolean())
            throw ConfigError("disable_contract_gate must be a boolean");
        config.disable_contract_gate = v.get<bool>();
    }

    config.validate();
    return config;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const SimConfig& config) {
    ordered_json root;
    root["node_count"] = config.node_count;
    root["rng_seed"] = config.rng_seed;
    root["tx_count"] = config.tx_count;
    root["block_interval_ticks"] = config.block_interval_ticks;
    root["delegate_count"] = config.delegate_count;
    root["rid_limit"] = config.rid_limit;
    root["reset_delay_ticks"] = config.reset_delay_ticks;
    root["submit_interval_ticks"] = config.submit_interval_ticks;
    root["link_latency"] = {{"min_ticks", config.link_latency.min_ticks},
                            {"max_ticks", config.link_latency.max_ticks}};
    const gas::GasSchedule& s = config.gas_schedule;
    root["gas"] = {{"participant", {{"init_gas", s.participant.init_gas},
                                    {"tx_gas", s.participant.tx_gas}}},
                   {"signature", {{"init_gas", s.signature.init_gas},
                                  {"tx_gas", s.signature.tx_gas}}},
                   {"revocation", {{"init_gas", s.revocation.init_gas},
                                   {"tx_gas", s.revocation.tx_gas}}},
                   {"smart_contract", {{"init_gas", s.smart_contract.init_gas},
                                       {"tx_gas", s.smart_contract.tx_gas}}},
                   {"gas_price", s.gas_price},
                   {"gas_limit", s.gas_limit}};
    if (config.attack) {
        root["attack"] = {{"kind", attack_name(config.attack->kind)},
                          {"attacker_count", config.attack->attacker_count},
                          {"intensity", config.attack->intensity},
                          {"start_tick", config.attack->start_tick},
                          {"end_tick", config.attack->end_tick}};
    }
    if (config.disable_contract_gate) root["disable_contract_gate"] = true;
    return root.dump(2) + "\n";
}

}  // namespace dpki::scenario
