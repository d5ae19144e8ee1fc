#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpki/bench.hpp"
#include "dpki/errors.hpp"
#include "dpki/netsim.hpp"
#include "dpki/report.hpp"
#include "dpki/scenario.hpp"

using namespace dpki;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

netsim::ScenarioMetrics sample_metrics() {
    netsim::ScenarioMetrics m;
    netsim::TxRecord committed;
    committed.tx_id.bytes[31] = 0x01;
    committed.submit_tick = 3;
    committed.commit_tick = 15;
    committed.status = netsim::TxStatus::Committed;
    committed.gas_used = 73600;
    committed.cost = 73600;
    m.transactions.push_back(committed);

    netsim::TxRecord rejected;
    rejected.tx_id.bytes[31] = 0x02;
    rejected.submit_tick = 4;
    rejected.status = netsim::TxStatus::Rejected;
    rejected.reason = netsim::RejectReason::ThresholdExceeded;
    m.transactions.push_back(rejected);

    m.submitted = 2;
    m.committed = 1;
    m.rejected = 1;
    m.rejected_by_reason[netsim::RejectReason::ThresholdExceeded] = 1;
    m.blocks_produced = 1;
    m.skipped_slots = 2;
    m.identity_resets = 3;
    m.final_tick = 45;
    m.total_gas_used = 364872;
    m.total_cost = 364872;
    m.attack_outcome = netsim::AttackOutcome::Defended;
    return m;
}

}  // namespace

TEST_CASE("transactions csv lists per-transaction rows and a trailing summary") {
    auto m = sample_metrics();
    auto lines = lines_of(report::transactions_csv(m));
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "# dpki-csv-v1");
    CHECK(lines[1] == "tx_id,submit_tick,commit_tick,status,reason,gas_used,cost");
    CHECK(lines[2] == m.transactions[0].tx_id.hex() + ",3,15,committed,,73600,73600");
    CHECK(lines[3] == m.transactions[1].tx_id.hex() + ",4,,rejected,threshold_exceeded,0,0");
    CHECK(lines[4] == "summary,2,1,defended,1,364872,364872");
}

TEST_CASE("summary csv reports every aggregate in a fixed order") {
    auto lines = lines_of(report::summary_csv(sample_metrics()));
    std::vector<std::string> expected = {
        "# dpki-csv-v1",
        "metric,value",
        "submitted,2",
        "committed,1",
        "rejected,1",
        "rejected_identity_mismatch,0",
        "rejected_threshold_exceeded,1",
        "rejected_invalid_signature,0",
        "rejected_gas_limit_exceeded,0",
        "rejected_insufficient_funds,0",
        "blocks_produced,1",
        "skipped_slots,2",
        "missed_slots,0",
        "identity_resets,3",
        "delegate_evictions,0",
        "final_tick,45",
        "total_gas_used,364872",
        "total_cost,364872",
        "attack_outcome,defended",
    };
    CHECK(lines == expected);
}

TEST_CASE("manifest echoes the config verbatim and nests attack counters") {
    scenario::SimConfig config;
    config.node_count = 12;
    config.delegate_count = 6;
    config.attack = scenario::default_attack(scenario::AttackKind::DoS);
    auto m = sample_metrics();
    m.adversarial_submissions = 9;

    auto doc = nlohmann::json::parse(report::run_manifest_json(config, m));
    CHECK(doc["format"] == "dpki-run-v1");
    CHECK(scenario::parse_config(doc["config"].dump()) == config);
    CHECK(doc["results"]["submitted"] == 2);
    CHECK(doc["results"]["rejected_by_reason"]["threshold_exceeded"] == 1);
    CHECK(doc["results"]["attack"]["outcome"] == "defended");
    CHECK(doc["results"]["attack"]["adversarial_submissions"] == 9);

    config.attack.reset();
    auto quiet = nlohmann::json::parse(report::run_manifest_json(config, sample_metrics()));
    CHECK(quiet["results"]["attack"].is_null());
}

TEST_CASE("lifecycle csv carries one row per node count") {
    std::vector<netsim::LifecycleRow> rows(2);
    rows[0] = {10, 5.0, 500.0, 4.0, 400.0, 10, 10};
    rows[1] = {20, 9.0, 450.0, 8.0, 420.0, 20, 20};
    auto lines = lines_of(report::lifecycle_csv(rows));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "# dpki-csv-v1");
    CHECK(lines[1] ==
          "node_count,keygen_total_ms,keygen_per_op_us,keyval_total_ms,keyval_per_op_us,"
          "keygen_sim_ticks,keyval_sim_ticks");
    CHECK(lines[2] == "10,5,500,4,400,10,10");
    CHECK(lines[3] == "20,9,450,8,420,20,20");
}

TEST_CASE("write_file round-trips and surfaces io failures") {
    std::string path = "report_tests_scratch.txt";
    report::write_file(path, "alpha\nbeta\n");
    std::ifstream in(path, std::ios::binary);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == "alpha\nbeta\n");
    std::remove(path.c_str());

    CHECK_THROWS_AS(report::write_file("no-such-dir/deep/file.txt", "x"), IoError);
}

TEST_CASE("fit_exponent recovers known power laws") {
    using Points = std::vector<std::pair<double, double>>;
    CHECK(bench::fit_exponent(Points{{10, 20}, {100, 200}, {1000, 2000}}) ==
          doctest::Approx(1.0));
    CHECK(bench::fit_exponent(Points{{10, 7}, {100, 7}, {1000, 7}}) == doctest::Approx(0.0));
    CHECK(bench::fit_exponent(Points{{10, 300}, {100, 30000}, {1000, 3000000}}) ==
          doctest::Approx(2.0));
    CHECK(bench::fit_exponent(Points{{4, 2}, {16, 4}, {64, 8}}) == doctest::Approx(0.5));
}

TEST_CASE("fit_exponent rejects degenerate inputs") {
    using Points = std::vector<std::pair<double, double>>;
    CHECK_THROWS_AS(bench::fit_exponent(Points{}), ConfigError);
    CHECK_THROWS_AS(bench::fit_exponent(Points{{10, 1}}), ConfigError);
    CHECK_THROWS_AS(bench::fit_exponent(Points{{10, 1}, {10, 2}}), ConfigError);
    CHECK_THROWS_AS(bench::fit_exponent(Points{{-1, 1}, {10, 2}}), ConfigError);
    // Nonpositive samples clamp instead of throwing: a flat zero line is flat.
    CHECK(bench::fit_exponent(Points{{10, 0}, {100, 0}}) == doctest::Approx(0.0));
}

TEST_CASE("operation_exponent fits the quantity each claim is about") {
    std::vector<bench::BenchRow> rows;
    for (std::uint64_t scale : {100ull, 1000ull, 10000ull}) {
        bench::BenchRow row;
        row.scale = scale;
        row.iterations = scale;
        row.per_op_us = 2.0;  // flat per call
        row.total_ms = row.per_op_us * static_cast<double>(scale) / 1000.0;
        row.scaled_ms = row.per_op_us * static_cast<double>(scale) / 1000.0;
        row.operation = "signature";
        rows.push_back(row);
        row.operation = "merkle";
        rows.push_back(row);
    }
    // Same numbers, different claims: per-call cost is flat, whole-pass cost
    // grows linearly.
    CHECK(bench::operation_exponent(rows, "signature") == doctest::Approx(0.0));
    CHECK(bench::operation_exponent(rows, "merkle") == doctest::Approx(1.0));
    CHECK_THROWS_AS(bench::operation_exponent(rows, "unknown"), ConfigError);
}

TEST_CASE("run_bench measures every operation at every scale") {
    auto rows = bench::run_bench({4, 8}, {16, 32}, 9);
    REQUIRE(rows.size() == 12);

    std::set<std::pair<std::string, std::uint64_t>> seen;
    for (const auto& row : rows) {
        seen.insert({row.operation, row.scale});
        CHECK(row.iterations > 0);
        CHECK(row.total_ms > 0);
        CHECK(row.per_op_us > 0);
        CHECK(row.scaled_ms ==
              doctest::Approx(row.per_op_us * static_cast<double>(row.scale) / 1000.0));
    }
    for (std::uint64_t nodes : {4ull, 8ull}) {
        CHECK(seen.count({"participant", nodes}) == 1);
        CHECK(seen.count({"gate", nodes}) == 1);
        CHECK(seen.count({"election", nodes}) == 1);
    }
    for (std::uint64_t txs : {16ull, 32ull}) {
        CHECK(seen.count({"signature", txs}) == 1);
        CHECK(seen.count({"revocation", txs}) == 1);
        CHECK(seen.count({"merkle", txs}) == 1);
    }
}

TEST_CASE("bench csv and exponent csv have the documented shape") {
    std::vector<bench::BenchRow> rows;
    bench::BenchRow row{"gate", 10, 100, 1.0, 10.0, 0.1};
    rows.push_back(row);
    row.scale = 100;
    row.scaled_ms = 1.0;
    rows.push_back(row);
    bench::BenchRow single{"participant", 10, 10, 1.0, 100.0, 1.0};
    rows.push_back(single);

    auto bench_lines = lines_of(bench::bench_csv(rows));
    REQUIRE(bench_lines.size() == 5);
    CHECK(bench_lines[0] == "# dpki-csv-v1");
    CHECK(bench_lines[1] == "operation,scale,iterations,total_ms,per_op_us,scaled_ms");
    CHECK(bench_lines[2].substr(0, 8) == "gate,10,");

    // Only operations measured at two or more scales get an exponent row.
    auto exp_lines = lines_of(bench::exponents_csv(rows));
    REQUIRE(exp_lines.size() == 3);
    CHECK(exp_lines[0] == "# dpki-csv-v1");
    CHECK(exp_lines[1] == "operation,exponent");
    CHECK(exp_lines[2].substr(0, 5) == "gate,");
}
