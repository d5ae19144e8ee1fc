// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/report.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dpki/errors.hpp"

namespace dpki::report {

namespace {

constexpr std::array<netsim::RejectReason, 5> kReasons = {
    netsim::RejectReason::IdentityMismatch, netsim::RejectReason::ThresholdExceeded,
    netsim::RejectReason::InvalidSignature, netsim::RejectReason::GasLimitExceeded,
    netsim::RejectReason::InsufficientFunds};

std::uint64_t reason_count(const netsim::ScenarioMetrics& metrics, netsim::RejectReason reason) {
    auto it = metrics.rejected_by_reason.find(reason);
    return it == metrics.rejected_by_reason.end() ? 0 : it->second;
}

}  // namespace

std::string transactions_csv(const netsim::ScenarioMetrics& metrics) {
    std::ostringstream out;
    out << "# dpki-csv-v1\n";
    out << "tx_id,submit_tick,commit_tick,status,reason,gas_used,cost\n";
    for (const auto& tx : metrics.transactions) {
        out << tx.tx_id.hex() << ',' << tx.submit_tick << ',';
        if (tx.commit_tick) out << *tx.commit_tick;
        out << ',';
        if (tx.status == netsim::TxStatus::Committed) {
            out << "committed,";
        } else {
            out << "rejected," << netsim::reject_reason_name(tx.reason);
        }
        out << ',' << tx.gas_used << ',' << tx.cost << '\n';
    }
    // Summary row: totals in place of per-transaction fields. submit_tick
    // carries submitted, commit_tick carries committed, reason carries
    // rejected, status carries the attack outcome.
    out << "summary," << metrics.submitted << ',' << metrics.committed << ','
        << netsim::attack_outcome_name(metrics.attack_outcome) << ',' << metrics.rejected << ','
        << metrics.total_gas_used << ',' << metrics.total_cost << '\n';
    return out.str();
}

std::string summary_csv(const netsim::ScenarioMetrics& metrics) {
    std::ostringstream out;
    out << "# dpki-csv-v1\n";
    out << "metric,value\n";
    out << "submitted," << metrics.submitted << '\n';
    out << "committed," << metrics.committed << '\n';
    out << "rejected," << metrics.rejected << '\n';
    for (auto reason : kReasons) {
        out << "rejected_" << netsim::reject_reason_name(reason) << ','
            << reason_count(metrics, reason) << '\n';
    }
    out << "blocks_produced," << metrics.blocks_produced << '\n';
    out << "skipped_slots," << metrics.skipped_slots << '\n';
    out << "missed_slots," << metrics.missed_slots << '\n';
    out << "identity_resets," << metrics.identity_resets << '\n';
    out << "delegate_evictions," << metrics.delegate_evictions << '\n';
    out << "final_tick," << metrics.final_tick << '\n';
    out << "total_gas_used," << metrics.total_gas_used << '\n';
    out << "total_cost," << metrics.total_cost << '\n';
    out << "attack_outcome," << netsim::attack_outcome_name(metrics.attack_outcome) << '\n';
    return out.str();
}

std::string run_manifest_json(const scenario::SimConfig& config,
                              const netsim::ScenarioMetrics& metrics) {
    nlohmann::ordered_json doc;
    doc["format"] = "dpki-run-v1";
    doc["config"] = nlohmann::ordered_json::parse(scenario::serialize_config(config));

    nlohmann::ordered_json results;
    results["submitted"] = metrics.submitted;
    results["committed"] = metrics.committed;
    results["rejected"] = metrics.rejected;
    nlohmann::ordered_json by_reason;
    for (auto reason : kReasons) {
        by_reason[netsim::reject_reason_name(reason)] = reason_count(metrics, reason);
    }
    results["rejected_by_reason"] = by_reason;
    results["blocks_produced"] = metrics.blocks_produced;
    results["skipped_slots"] = metrics.skipped_slots;
    results["missed_slots"] = metrics.missed_slots;
    results["identity_resets"] = metrics.identity_resets;
    results["delegate_evictions"] = metrics.delegate_evictions;
    results["final_tick"] = metrics.final_tick;
    results["total_gas_used"] = metrics.total_gas_used;
    results["total_cost"] = metrics.total_cost;

    if (config.attack) {
        nlohmann::ordered_json attack;
        attack["outcome"] = netsim::attack_outcome_name(metrics.attack_outcome);
        attack["adversarial_submissions"] = metrics.adversarial_submissions;
        attack["adversarial_commits"] = metrics.adversarial_commits;
        attack["tampered_deliveries"] = metrics.tampered_deliveries;
        attack["tampered_commits"] = metrics.tampered_commits;
        attack["forged_blocks_attempted"] = metrics.forged_blocks_attempted;
        attack["forged_blocks_accepted"] = metrics.forged_blocks_accepted;
        attack["hijacked_commits"] = metrics.hijacked_commits;
        results["attack"] = attack;
    } else {
        results["attack"] = nullptr;
    }
    doc["results"] = results;
    return doc.dump(2) + "\n";
}

std::string lifecycle_csv(const std::vector<netsim::LifecycleRow>& rows) {
    std::ostringstream out;
    out << "# dpki-csv-v1\n";
    out << "node_count,keygen_total_ms,keygen_per_op_us,keyval_total_ms,keyval_per_op_us,"
           "keygen_sim_ticks,keyval_sim_ticks\n";
    for (const auto& row : rows) {
        out << row.node_count << ',' << row.keygen_total_ms << ',' << row.keygen_per_op_us << ','
            << row.keyval_total_ms << ',' << row.keyval_per_op_us << ',' << row.keygen_sim_ticks
            << ',' << row.keyval_sim_ticks << '\n';
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace dpki::report
