#include "doctest.h"

#include <string>

#include "dpki/errors.hpp"
#include "dpki/scenario.hpp"

using namespace dpki;
using namespace dpki::scenario;

TEST_CASE("defaults parse from an empty object") {
    SimConfig c = parse_config("{}");
    CHECK(c == SimConfig{});
    CHECK(c.node_count == 25);
    CHECK(c.block_interval_ticks == 15);
    CHECK(c.delegate_count == 21);
    CHECK(c.rid_limit == 3);
    CHECK(c.gas_schedule == gas::GasSchedule{});
    CHECK(!c.attack.has_value());
    CHECK(!c.disable_contract_gate);
}

TEST_CASE("full config round trips through serialization") {
    SimConfig c;
    c.node_count = 40;
    c.rng_seed = 123456789;
    c.tx_count = 500;
    c.delegate_count = 10;
    c.rid_limit = 5;
    c.reset_delay_ticks = 45;
    c.submit_interval_ticks = 2;
    c.link_latency = {2, 6};
    c.gas_schedule.gas_price = 3;
    c.attack = default_attack(AttackKind::DDoS);
    CHECK(parse_config(serialize_config(c)) == c);

    SimConfig plain;
    CHECK(parse_config(serialize_config(plain)) == plain);
}

TEST_CASE("unknown keys are rejected by name and path") {
    try {
        parse_config(R"({"blocksize": 10})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("blocksize") != std::string::npos);
    }
    try {
        parse_config(R"({"link_latency": {"min_ticks": 1, "maxticks": 3}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("maxticks") != std::string::npos);
        CHECK(msg.find("link_latency") != std::string::npos);
    }
    try {
        parse_config(R"({"gas": {"participant": {"init_gas": 1, "gas": 2}}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("gas.participant") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(R"({"attack": {"kind": "dos", "spread": 1}})"), ConfigError);
}

TEST_CASE("syntax errors carry the line number") {
    try {
        parse_config("{\n  \"node_count\": 25,\n  \"rng_seed\": oops\n}");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("type mismatches name the key") {
    try {
        parse_config(R"({"tx_count": -5})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("tx_count") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(R"({"node_count": "many"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"disable_contract_gate": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"attack": {"kind": 3}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"(["not an object"])"), ConfigError);
}

TEST_CASE("semantic validation rejects inconsistent configs") {
    CHECK_THROWS_AS(parse_config(R"({"node_count": 5, "delegate_count": 21})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"delegate_count": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"delegate_count": 101, "node_count": 200})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"rid_limit": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"tx_count": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"link_latency": {"min_ticks": 0}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"link_latency": {"min_ticks": 4, "max_ticks": 2}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"gas": {"gas_limit": 100}})"), ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"attack": {"kind": "mitm", "intensity": 150}})"), ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"attack": {"kind": "dos", "start_tick": 50, "end_tick": 10}})"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"node_count": 25, "attack": {"kind": "dos", "attacker_count": 25}})"),
        ConfigError);
}

TEST_CASE("attack kinds parse by name with per kind defaults") {
    for (AttackKind kind : kAllAttackKinds) {
        CHECK(attack_from_name(attack_name(kind)) == kind);
        AttackScenario def = default_attack(kind);
        CHECK(def.kind == kind);
        CHECK(def.attacker_count >= 1);
        CHECK(def.intensity >= 1);
        CHECK(def.start_tick <= def.end_tick);
    }
    CHECK_THROWS_AS(attack_from_name("sybil"), ConfigError);

    SimConfig c = parse_config(R"({"attack": {"kind": "eclipse"}})");
    REQUIRE(c.attack.has_value());
    CHECK(c.attack->kind == AttackKind::Eclipse);
    CHECK(*c.attack == default_attack(AttackKind::Eclipse));

    SimConfig d = parse_config(R"({"attack": {"kind": "ddos", "intensity": 7}})");
    CHECK(d.attack->intensity == 7);
    CHECK(d.attack->attacker_count == default_attack(AttackKind::DDoS).attacker_count);
}

TEST_CASE("null attack means no attack") {
    SimConfig c = parse_config(R"({"attack": null})");
    CHECK(!c.attack.has_value());
}

TEST_CASE("load_config reports missing files") {
    CHECK_THROWS_AS(load_config("/nonexistent/path/config.json"), IoError);
}
