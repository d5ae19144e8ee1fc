// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

// Batch front door for the engine: loads scenario configs, runs simulations
// and benchmarks, and writes the CSV and JSON artifacts. Links only the C
// API. Exit codes: 0 success (no attack or defended), 1 breached, 2 error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpki/dpki.h"

namespace {

struct OwnedString {
    char* value = nullptr;
    ~OwnedString() { dpki_string_free(value); }
    OwnedString() = default;
    OwnedString(const OwnedString&) = delete;
    OwnedString& operator=(const OwnedString&) = delete;
};

struct OwnedConfig {
    dpki_config* value = nullptr;
    ~OwnedConfig() { dpki_config_free(value); }
    OwnedConfig() = default;
    OwnedConfig(const OwnedConfig&) = delete;
    OwnedConfig& operator=(const OwnedConfig&) = delete;
};

struct OwnedResult {
    dpki_result* value = nullptr;
    ~OwnedResult() { dpki_result_free(value); }
    OwnedResult() = default;
    OwnedResult(const OwnedResult&) = delete;
    OwnedResult& operator=(const OwnedResult&) = delete;
};

int report_api_error(const std::string& what) {
    std::cerr << "error: " << what << ": " << dpki_last_error() << "\n";
    return 2;
}

bool parse_u64(const std::string& text, std::uint64_t& out) {
    if (text.empty()) return false;
    char* end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (errno != 0 || end == nullptr || *end != '\0') return false;
    out = static_cast<std::uint64_t>(v);
    return true;
}

// Flag beats environment; environment beats the config or built-in default.
std::optional<std::uint64_t> effective_seed(const std::optional<std::uint64_t>& flag_seed,
                                            bool& ok) {
    ok = true;
    if (flag_seed) return flag_seed;
    if (const char* env = std::getenv("DPKI_SEED")) {
        std::uint64_t v = 0;
        if (!parse_u64(env, v)) {
            std::cerr << "error: DPKI_SEED is not a valid unsigned integer: " << env << "\n";
            ok = false;
            return std::nullopt;
        }
        return v;
    }
    return std::nullopt;
}

std::string effective_out(const std::string& flag_out) {
    if (!flag_out.empty()) return flag_out;
    if (const char* env = std::getenv("DPKI_OUT")) return env;
    return "out";
}

bool write_text(const std::filesystem::path& path, const char* content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot open for writing: " << path.string() << "\n";
        return false;
    }
    out << content;
    if (!out) {
        std::cerr << "error: write failed: " << path.string() << "\n";
        return false;
    }
    return true;
}

bool prepare_out_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << dir.string() << ": "
                  << ec.message() << "\n";
        return false;
    }
    return true;
}

const char* outcome_name(dpki_attack_outcome outcome) {
    switch (outcome) {
        case DPKI_OUTCOME_NONE: return "none";
        case DPKI_OUTCOME_DEFENDED: return "defended";
        case DPKI_OUTCOME_BREACHED: return "breached";
    }
    return "unknown";
}

int write_run_artifacts(const dpki_result* result, const std::filesystem::path& dir) {
    if (!prepare_out_dir(dir)) return 2;

    OwnedString txs, summary, manifest, chain;
    if (dpki_result_transactions_csv(result, &txs.value) != DPKI_OK) {
        return report_api_error("transactions export");
    }
    if (dpki_result_summary_csv(result, &summary.value) != DPKI_OK) {
        return report_api_error("summary export");
    }
    if (dpki_result_manifest_json(result, &manifest.value) != DPKI_OK) {
        return report_api_error("manifest export");
    }
    if (dpki_result_chain_export(result, &chain.value) != DPKI_OK) {
        return report_api_error("chain export");
    }
    if (!write_text(dir / "transactions.csv", txs.value) ||
        !write_text(dir / "summary.csv", summary.value) ||
        !write_text(dir / "manifest.json", manifest.value) ||
        !write_text(dir / "chain.jsonl", chain.value)) {
        return 2;
    }
    return 0;
}

int run_command(const std::string& config_path, const std::optional<std::uint64_t>& flag_seed,
                const std::string& flag_out) {
    bool seed_ok = true;
    auto seed = effective_seed(flag_seed, seed_ok);
    if (!seed_ok) return 2;

    OwnedConfig config;
    if (dpki_config_load(config_path.c_str(), &config.value) != DPKI_OK) {
        return report_api_error("config load");
    }
    if (seed && dpki_config_set_seed(config.value, *seed) != DPKI_OK) {
        return report_api_error("seed override");
    }

    OwnedResult result;
    if (dpki_run(config.value, &result.value) != DPKI_OK) {
        return report_api_error("simulation");
    }

    std::filesystem::path dir = effective_out(flag_out);
    if (int code = write_run_artifacts(result.value, dir); code != 0) return code;

    std::uint64_t submitted = 0, committed = 0, rejected = 0, blocks = 0;
    dpki_result_counter(result.value, "submitted", &submitted);
    dpki_result_counter(result.value, "committed", &committed);
    dpki_result_counter(result.value, "rejected", &rejected);
    dpki_result_counter(result.value, "blocks_produced", &blocks);
    dpki_attack_outcome outcome = DPKI_OUTCOME_NONE;
    dpki_result_attack_outcome(result.value, &outcome);

    std::cout << "submitted " << submitted << ", committed " << committed << ", rejected "
              << rejected << ", blocks " << blocks << ", outcome " << outcome_name(outcome)
              << "\n";
    std::cout << "artifacts written to " << dir.string() << "\n";
    return outcome == DPKI_OUTCOME_BREACHED ? 1 : 0;
}

int attack_matrix_command(const std::optional<std::uint64_t>& flag_seed,
                          const std::string& flag_out, bool disable_gate) {
    bool seed_ok = true;
    auto seed = effective_seed(flag_seed, seed_ok);
    if (!seed_ok) return 2;

    const std::vector<std::string> kinds = {"dos",       "ddos",    "mitm", "majority51",
                                            "injection", "routing", "eclipse"};
    std::vector<std::string> breached;
    std::string table = "# dpki-csv-v1\nattack,outcome\n";

    std::cout << "attack        outcome\n";
    std::cout << "------        -------\n";
    for (const auto& kind : kinds) {
        OwnedConfig config;
        if (dpki_config_default(&config.value) != DPKI_OK) {
            return report_api_error("config default");
        }
        if (dpki_config_set_attack(config.value, kind.c_str()) != DPKI_OK) {
            return report_api_error("attack selection");
        }
        if (seed && dpki_config_set_seed(config.value, *seed) != DPKI_OK) {
            return report_api_error("seed override");
        }
        if (disable_gate && dpki_config_set_gate_disabled(config.value, 1) != DPKI_OK) {
            return report_api_error("gate switch");
        }

        OwnedResult result;
        if (dpki_run(config.value, &result.value) != DPKI_OK) {
            return report_api_error("simulation (" + kind + ")");
        }
        dpki_attack_outcome outcome = DPKI_OUTCOME_NONE;
        dpki_result_attack_outcome(result.value, &outcome);
        if (outcome == DPKI_OUTCOME_BREACHED) breached.push_back(kind);

        std::cout << kind << std::string(14 - kind.size(), ' ') << outcome_name(outcome) << "\n";
        table += kind + "," + outcome_name(outcome) + "\n";
    }

    if (!flag_out.empty() || std::getenv("DPKI_OUT") != nullptr) {
        std::filesystem::path dir = effective_out(flag_out);
        if (!prepare_out_dir(dir) || !write_text(dir / "attack_matrix.csv", table.c_str())) {
            return 2;
        }
    }

    if (!breached.empty()) {
        std::cerr << "breached:";
        for (const auto& kind : breached) std::cerr << ' ' << kind;
        std::cerr << "\n";
        return 1;
    }
    return 0;
}

int bench_command(const std::vector<std::uint64_t>& nodes, const std::vector<std::uint64_t>& txs,
                  const std::optional<std::uint64_t>& flag_seed, const std::string& flag_out) {
    bool seed_ok = true;
    auto seed = effective_seed(flag_seed, seed_ok);
    if (!seed_ok) return 2;

    for (const auto& counts : {nodes, txs}) {
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (counts[i] == 0 || (i > 0 && counts[i] <= counts[i - 1])) {
                std::cerr << "error: counts must be positive and strictly ascending\n";
                return 2;
            }
        }
    }

    OwnedString rows, exponents;
    if (dpki_bench(nodes.data(), nodes.size(), txs.data(), txs.size(), seed.value_or(1),
                   &rows.value, &exponents.value) != DPKI_OK) {
        return report_api_error("benchmark");
    }

    std::filesystem::path dir = effective_out(flag_out);
    if (!prepare_out_dir(dir) || !write_text(dir / "bench.csv", rows.value) ||
        !write_text(dir / "bench_exponents.csv", exponents.value)) {
        return 2;
    }
    std::cout << exponents.value;
    std::cout << "artifacts written to " << dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decentralized PKI protocol engine and network simulator"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    std::string out_dir;
    app.add_option("--seed", seed, "RNG seed override (beats DPKI_SEED)");
    app.add_option("--out", out_dir, "output directory (beats DPKI_OUT; default: out)");

    std::string config_path;
    auto* run = app.add_subcommand("run", "run one scenario config");
    run->fallthrough();
    run->add_option("config", config_path, "scenario config file")->required();

    auto* matrix = app.add_subcommand("attack-matrix",
                                      "run all seven attack kinds at default intensity");
    matrix->fallthrough();
    bool disable_gate = false;
    matrix->add_flag("--insecure-disable-gate", disable_gate)->group("");

    std::vector<std::uint64_t> nodes, txs;
    auto* bench = app.add_subcommand("bench", "time the protocol operations across scales");
    bench->fallthrough();
    bench->add_option("--nodes", nodes, "node counts, e.g. 10,50,100")
        ->required()
        ->delimiter(',');
    bench->add_option("--txs", txs, "transaction counts, e.g. 100,1000,10000")
        ->required()
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (run->parsed()) return run_command(config_path, seed, out_dir);
    if (matrix->parsed()) return attack_matrix_command(seed, out_dir, disable_gate);
    if (bench->parsed()) return bench_command(nodes, txs, seed, out_dir);
    return 2;
}
