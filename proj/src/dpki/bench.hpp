// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_BENCH_HPP
#define DPKI_BENCH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dpki::bench {

struct BenchRow {
    std::string operation;
    std::uint64_t scale = 0;       // node count, transaction count or leaf count
    std::uint64_t iterations = 0;  // timed operations, including repetitions
    double total_ms = 0;           // wall time for all iterations
    double per_op_us = 0;
    // per_op_us * scale: the cost of one pass over the whole scale, the
    // quantity whose growth rate matters.
    double scaled_ms = 0;
};

// Times registration, gate checks, signature validation, revocation
// accounting, delegate election and tree construction at the given scales.
// Small scales are repeated until the sample is long enough to time.
std::vector<BenchRow> run_bench(const std::vector<std::uint64_t>& node_counts,
                                const std::vector<std::uint64_t>& tx_counts,
                                std::uint64_t rng_seed);

// Least-squares slope of log(y) against log(x). Requires at least two
// distinct positive points.
double fit_exponent(const std::vector<std::pair<double, double>>& points);

// Growth rate of one operation's cost against scale. Operations with a
// constant-per-call claim (signature, revocation) are fitted on per_op_us;
// the rest are fitted on scaled_ms.
double operation_exponent(const std::vector<BenchRow>& rows, const std::string& operation);

std::string bench_csv(const std::vector<BenchRow>& rows);

// operation,exponent rows for every operation measured at two or more scales.
std::string exponents_csv(const std::vector<BenchRow>& rows);

}  // namespace dpki::bench

#endif  // DPKI_BENCH_HPP
