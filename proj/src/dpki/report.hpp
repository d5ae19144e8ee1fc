// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_REPORT_HPP
#define DPKI_REPORT_HPP

#include <string>
#include <vector>

#include "dpki/netsim.hpp"
#include "dpki/scenario.hpp"

namespace dpki::report {

// Per-transaction table. Equal seeds yield byte-identical output: no wall
// clock data appears in any column.
std::string transactions_csv(const netsim::ScenarioMetrics& metrics);

// Aggregate counters as metric,value rows with a fixed row order.
std::string summary_csv(const netsim::ScenarioMetrics& metrics);

// Config echo plus result counters; deterministic for equal seeds.
std::string run_manifest_json(const scenario::SimConfig& config,
                              const netsim::ScenarioMetrics& metrics);

// Key lifecycle measurements; wall-clock columns vary between runs.
std::string lifecycle_csv(const std::vector<netsim::LifecycleRow>& rows);

// Throws IoError on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace dpki::report

#endif  // DPKI_REPORT_HPP
