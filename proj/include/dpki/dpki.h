/* Copyright (c) 2026 The dpki developers
 * Distributed under the MIT software license, see the accompanying COPYING file.
 *
 * C interface to the dpki protocol engine and network simulator. All entry
 * points return a status code; details for the most recent failure on the
 * calling thread are available from dpki_last_error(). Strings returned
 * through out-parameters are heap copies owned by the caller and must be
 * released with dpki_string_free().
 */

#ifndef DPKI_DPKI_H
#define DPKI_DPKI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DPKI_API __declspec(dllexport)
#else
#define DPKI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dpki_status {
    DPKI_OK = 0,
    DPKI_ERROR_INVALID_ARGUMENT = 1,
    DPKI_ERROR_CONFIG = 2,
    DPKI_ERROR_IO = 3,
    DPKI_ERROR_SIMULATION = 4,
    DPKI_ERROR_INTERNAL = 5
} dpki_status;

typedef enum dpki_attack_outcome {
    DPKI_OUTCOME_NONE = 0,
    DPKI_OUTCOME_DEFENDED = 1,
    DPKI_OUTCOME_BREACHED = 2
} dpki_attack_outcome;

/* Opaque handles. */
typedef struct dpki_config dpki_config;
typedef struct dpki_result dpki_result;

/* Message for the most recent failure on this thread; never NULL. */
DPKI_API const char* dpki_last_error(void);

/* Configuration ----------------------------------------------------------- */

DPKI_API dpki_status dpki_config_default(dpki_config** out);
DPKI_API dpki_status dpki_config_parse(const char* json_text, dpki_config** out);
DPKI_API dpki_status dpki_config_load(const char* path, dpki_config** out);
DPKI_API dpki_status dpki_config_set_seed(dpki_config* config, uint64_t seed);
/* kind: "dos", "ddos", "mitm", "majority51", "injection", "routing",
 * "eclipse" for the bundled defaults of that kind, or NULL for no attack. */
DPKI_API dpki_status dpki_config_set_attack(dpki_config* config, const char* kind);
/* Fault-injection switch used by suite-sensitivity checks. */
DPKI_API dpki_status dpki_config_set_gate_disabled(dpki_config* config, int disabled);
DPKI_API dpki_status dpki_config_serialize(const dpki_config* config, char** out_json);
DPKI_API void dpki_config_free(dpki_config* config);

/* Simulation ---------------------------------------------------------------- */

DPKI_API dpki_status dpki_run(const dpki_config* config, dpki_result** out);
DPKI_API void dpki_result_free(dpki_result* result);

/* Per-transaction table; byte-identical for equal seeds. */
DPKI_API dpki_status dpki_result_transactions_csv(const dpki_result* result, char** out);
/* Aggregate counters as metric,value rows. */
DPKI_API dpki_status dpki_result_summary_csv(const dpki_result* result, char** out);
/* Config echo plus result counters as JSON. */
DPKI_API dpki_status dpki_result_manifest_json(const dpki_result* result, char** out);
/* Line-delimited block records with inlined payloads. */
DPKI_API dpki_status dpki_result_chain_export(const dpki_result* result, char** out);
DPKI_API dpki_status dpki_result_attack_outcome(const dpki_result* result,
                                                dpki_attack_outcome* out);
/* Named counter lookup; see the library documentation for the counter list
 * ("submitted", "committed", "rejected", "blocks_produced", ...). */
DPKI_API dpki_status dpki_result_counter(const dpki_result* result, const char* name,
                                         uint64_t* out);

/* Measurement --------------------------------------------------------------- */

/* Operation timings at each scale plus fitted growth exponents, both as
 * CSV. Either out-parameter may be NULL to skip that artifact. */
DPKI_API dpki_status dpki_bench(const uint64_t* node_counts, size_t node_counts_len,
                                const uint64_t* tx_counts, size_t tx_counts_len,
                                uint64_t rng_seed, char** out_rows, char** out_exponents);
/* Key generation and validation cost per node count, as CSV. */
DPKI_API dpki_status dpki_lifecycle_csv(const dpki_config* base, const uint64_t* node_counts,
                                        size_t node_counts_len, char** out);

DPKI_API void dpki_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* DPKI_DPKI_H */
