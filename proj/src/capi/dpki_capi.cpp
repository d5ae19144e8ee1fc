// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/dpki.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "dpki/bench.hpp"
#include "dpki/errors.hpp"
#include "dpki/ledger.hpp"
#include "dpki/netsim.hpp"
#include "dpki/report.hpp"
#include "dpki/scenario.hpp"

struct dpki_config {
    dpki::scenario::SimConfig config;
};

struct dpki_result {
    dpki::scenario::SimConfig config;
    dpki::netsim::SimResult result;
};

namespace {

thread_local std::string g_last_error;

dpki_status fail(dpki_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Maps the library exception taxonomy onto C status codes.
template <typename Fn>
dpki_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return DPKI_OK;
    } catch (const dpki::ConfigError& e) {
        return fail(DPKI_ERROR_CONFIG, e.what());
    } catch (const dpki::IoError& e) {
        return fail(DPKI_ERROR_IO, e.what());
    } catch (const dpki::SimulationError& e) {
        return fail(DPKI_ERROR_SIMULATION, e.what());
    } catch (const dpki::Error& e) {
        return fail(DPKI_ERROR_INTERNAL, e.what());
    } catch (const std::exception& e) {
        return fail(DPKI_ERROR_INTERNAL, e.what());
    }
}

// Heap copy handed across the C boundary; released by dpki_string_free.
char* copy_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* dpki_last_error(void) { return g_last_error.c_str(); }

dpki_status dpki_config_default(dpki_config** out) {
    if (out == nullptr) return fail(DPKI_ERROR_INVALID_ARGUMENT, "out is NULL");
    return guarded([&] { *out = new dpki_config{dpki::scenario::SimConfig{}}; });
}

dpki_status dpki_config_parse(const char* json_text, dpki_config** out) {
    if (json_text == nullptr || out == nullptr) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "json_text or out is NULL");
    }
    return guarded([&] { *out = new dpki_config{dpki::scenario::parse_config(json_text)}; });
}

dpki_status dpki_config_load(const char* path, dpki_config** out) {
    if (path == nullptr || out == nullptr) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "path or out is NULL");
    }
    return guarded([&] { *out = new dpki_config{dpki::scenario::load_config(path)}; });
}

dpki_status dpki_config_set_seed(dpki_config* config, uint64_t seed) {
    if (config == nullptr) return fail(DPKI_ERROR_INVALID_ARGUMENT, "config is NULL");
    config->config.rng_seed = seed;
    g_last_error.clear();
    return DPKI_OK;
}

dpki_status dpki_config_set_attack(dpki_config* config, const char* kind) {
    if (config == nullptr) return fail(DPKI_ERROR_INVALID_ARGUMENT, "config is NULL");
    return guarded([&] {
        if (kind == nullptr) {
            config->config.attack.reset();
        } else {
            config->config.attack =
                dpki::scenario::default_attack(dpki::scenario::attack_from_name(kind));
        }
    });
}

dpki_status dpki_config_set_gate_disabled(dpki_config* config, int disabled) {
    if (config == nullptr) return fail(DPKI_ERROR_INVALID_ARGUMENT, "config is NULL");
    config->config.disable_contract_gate = disabled != 0;
    g_last_error.clear();
    return DPKI_OK;
}

dpki_status dpki_config_serialize(const dpki_config* config, char** out) {
    if (config == nullptr || out == nullptr) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "config or out is NULL");
    }
    return guarded([&] { *out = copy_string(dpki::scenario::serialize_config(config->config)); });
}

void dpki_config_free(dpki_config* config) { delete config; }

dpki_status dpki_run(const dpki_config* config, dpki_result** out) {
    if (config == nullptr || out == nullptr) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "config or out is NULL");
    }
    return guarded([&] {
        auto result = dpki::netsim::run_simulation(config->config);
        *out = new dpki_result{config->config, std::move(result)};
    });
}

void dpki_result_free(dpki_result* result) { delete result; }

dpki_status dpki_result_transactions_csv(const dpki_result* result, char** out) {
    if (result == nullptr || out == nullptr) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "result or out is NULL");
    }
    return guarded(
        [&] { *out = copy_string(dpki::report::transactions_csv(result->result.metrics)); });
}

dpki_status dpki_result_summary_csv(const dpki_result* result, char** out) {
    if (result == nullptr || out == nullptr) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "result or out is NULL");
    }
    return guarded([&] { *out = copy_string(dpki::report::summary_csv(result->result.metrics)); });
}

dpki_status dpki_result_manifest_json(const dpki_result* result, char** out) {
    if (result == nullptr || out == nullptr) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "result or out is NULL");
    }
    return guarded([&] {
        *out = copy_string(dpki::report::run_manifest_json(result->config, result->result.metrics));
    });
}

dpki_status dpki_result_chain_export(const dpki_result* result, char** out) {
    if (result == nullptr || out == nullptr) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "result or out is NULL");
    }
    return guarded([&] {
        *out = copy_string(
            dpki::ledger::export_chain(result->result.chain, &result->result.store));
    });
}

dpki_status dpki_result_attack_outcome(const dpki_result* result, dpki_attack_outcome* out) {
    if (result == nullptr || out == nullptr) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "result or out is NULL");
    }
    switch (result->result.metrics.attack_outcome) {
        case dpki::netsim::AttackOutcome::None: *out = DPKI_OUTCOME_NONE; break;
        case dpki::netsim::AttackOutcome::Defended: *out = DPKI_OUTCOME_DEFENDED; break;
        case dpki::netsim::AttackOutcome::Breached: *out = DPKI_OUTCOME_BREACHED; break;
    }
    g_last_error.clear();
    return DPKI_OK;
}

dpki_status dpki_result_counter(const dpki_result* result, const char* name, uint64_t* out) {
    if (result == nullptr || name == nullptr || out == nullptr) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "result, name or out is NULL");
    }
    const auto& m = result->result.metrics;
    const std::string key = name;
    if (key == "submitted") *out = m.submitted;
    else if (key == "committed") *out = m.committed;
    else if (key == "rejected") *out = m.rejected;
    else if (key == "blocks_produced") *out = m.blocks_produced;
    else if (key == "skipped_slots") *out = m.skipped_slots;
    else if (key == "missed_slots") *out = m.missed_slots;
    else if (key == "identity_resets") *out = m.identity_resets;
    else if (key == "delegate_evictions") *out = m.delegate_evictions;
    else if (key == "final_tick") *out = m.final_tick;
    else if (key == "total_gas_used") *out = m.total_gas_used;
    else if (key == "total_cost") *out = m.total_cost;
    else if (key == "adversarial_submissions") *out = m.adversarial_submissions;
    else if (key == "adversarial_commits") *out = m.adversarial_commits;
    else if (key == "tampered_deliveries") *out = m.tampered_deliveries;
    else if (key == "tampered_commits") *out = m.tampered_commits;
    else if (key == "forged_blocks_attempted") *out = m.forged_blocks_attempted;
    else if (key == "forged_blocks_accepted") *out = m.forged_blocks_accepted;
    else if (key == "hijacked_commits") *out = m.hijacked_commits;
    else if (key == "registrations") *out = m.registrations.size();
    else return fail(DPKI_ERROR_INVALID_ARGUMENT, "unknown counter: " + key);
    g_last_error.clear();
    return DPKI_OK;
}

dpki_status dpki_bench(const uint64_t* node_counts, size_t node_counts_len,
                       const uint64_t* tx_counts, size_t tx_counts_len, uint64_t rng_seed,
                       char** out_rows, char** out_exponents) {
    if ((node_counts == nullptr && node_counts_len > 0) ||
        (tx_counts == nullptr && tx_counts_len > 0)) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "counts are NULL");
    }
    if (out_rows == nullptr && out_exponents == nullptr) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "both out-parameters are NULL");
    }
    return guarded([&] {
        std::vector<uint64_t> nodes(node_counts, node_counts + node_counts_len);
        std::vector<uint64_t> txs(tx_counts, tx_counts + tx_counts_len);
        auto rows = dpki::bench::run_bench(nodes, txs, rng_seed);
        if (out_rows != nullptr) *out_rows = copy_string(dpki::bench::bench_csv(rows));
        if (out_exponents != nullptr) {
            *out_exponents = copy_string(dpki::bench::exponents_csv(rows));
        }
    });
}

dpki_status dpki_lifecycle_csv(const dpki_config* base, const uint64_t* node_counts,
                               size_t node_counts_len, char** out) {
    if (base == nullptr || out == nullptr || (node_counts == nullptr && node_counts_len > 0)) {
        return fail(DPKI_ERROR_INVALID_ARGUMENT, "base, counts or out is NULL");
    }
    return guarded([&] {
        std::vector<uint64_t> counts(node_counts, node_counts + node_counts_len);
        *out = copy_string(dpki::report::lifecycle_csv(
            dpki::netsim::measure_key_lifecycle(base->config, counts)));
    });
}

void dpki_string_free(char* text) { std::free(text); }

}  // extern "C"
