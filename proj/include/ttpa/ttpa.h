/*
 * Copyright 2026 The ttpa Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libttpa.
 *
 * Objects are opaque handles released with their *_free function. Every
 * call returns a ttpa_status; on failure ttpa_last_error() describes the
 * problem for the calling thread. Strings returned through char** out
 * parameters are owned by the caller and released with ttpa_string_free.
 * Structured inputs and outputs are JSON documents.
 */

#ifndef TTPA_TTPA_H_
#define TTPA_TTPA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(TTPA_BUILDING_LIBRARY)
#define TTPA_API __attribute__((visibility("default")))
#else
#define TTPA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ttpa_status {
  TTPA_OK = 0,
  TTPA_ERR_INVALID_ARGUMENT = 1,
  TTPA_ERR_SHAPE = 2,
  TTPA_ERR_OUT_OF_RANGE = 3,
  TTPA_ERR_MALFORMED = 4,
  TTPA_ERR_UNSUPPORTED = 5,
  TTPA_ERR_PARSE = 6,
  TTPA_ERR_IO = 7,
  TTPA_ERR_RUNTIME = 8
} ttpa_status;

TTPA_API const char* ttpa_version(void);
TTPA_API const char* ttpa_status_name(ttpa_status status);
/* 1 when the status reports bad caller input, 0 otherwise. */
TTPA_API int ttpa_status_is_validation(ttpa_status status);
/* Message of the most recent failed call on this thread ("" if none). */
TTPA_API const char* ttpa_last_error(void);
TTPA_API void ttpa_string_free(char* s);

/* ---- circuits ---------------------------------------------------------- */

typedef struct ttpa_circuit ttpa_circuit;

TTPA_API ttpa_status ttpa_circuit_from_json(const char* json, ttpa_circuit** out);
TTPA_API ttpa_status ttpa_circuit_to_json(const ttpa_circuit* c, char** out);
TTPA_API ttpa_status ttpa_circuit_input_width(const ttpa_circuit* c, size_t* out);
/* `bits` holds `len` bytes, each 0 or 1. */
TTPA_API ttpa_status ttpa_circuit_eval(const ttpa_circuit* c, const uint8_t* bits,
                                       size_t len, uint8_t* out);
TTPA_API ttpa_status ttpa_circuit_metrics(const ttpa_circuit* c, size_t* size,
                                          size_t* depth);
TTPA_API ttpa_status ttpa_circuit_fold(const ttpa_circuit* c, ttpa_circuit** out);
TTPA_API void ttpa_circuit_free(ttpa_circuit* c);

/* ---- fingerprinting codes ---------------------------------------------- */

typedef struct ttpa_codebook ttpa_codebook;

TTPA_API ttpa_status ttpa_codebook_generate(size_t n, double eps, double a, uint64_t seed,
                                            ttpa_codebook** out);
TTPA_API ttpa_status ttpa_codebook_from_json(const char* json, ttpa_codebook** out);
/* Full codebook including the secret column biases. */
TTPA_API ttpa_status ttpa_codebook_to_json(const ttpa_codebook* cb, char** out);
/* Coalition rows only, no biases. */
TTPA_API ttpa_status ttpa_codebook_view_json(const ttpa_codebook* cb,
                                             const size_t* coalition, size_t count,
                                             char** out);
TTPA_API ttpa_status ttpa_codebook_length(const ttpa_codebook* cb, size_t* out);
/* `word_hex` is the hex-packed pirate word; *accused is -1 when nobody
 * clears the threshold. */
TTPA_API ttpa_status ttpa_codebook_trace(const ttpa_codebook* cb, const char* word_hex,
                                         int64_t* accused);
TTPA_API void ttpa_codebook_free(ttpa_codebook* cb);

/* Config keys: n, eps, a, trials, seed, coalition_size, strategies. */
TTPA_API ttpa_status ttpa_fpcode_bench(const char* config_json, size_t threads,
                                       char** report_json);

/* ---- traitor tracing --------------------------------------------------- */

typedef struct ttpa_keyset ttpa_keyset;

/* scheme: "local_prg" or "prf". */
TTPA_API ttpa_status ttpa_keyset_generate(size_t kappa, size_t n, const char* scheme,
                                          uint64_t seed, ttpa_keyset** out);
TTPA_API ttpa_status ttpa_keyset_from_json(const char* json, ttpa_keyset** out);
TTPA_API ttpa_status ttpa_keyset_to_json(const ttpa_keyset* ks, char** out);
TTPA_API void ttpa_keyset_free(ttpa_keyset* ks);

/* Config keys: pirate ("honest:<i>", "sanitizer:exact", "sanitizer:laplace"),
 * tracer ("fingerprint" or "linear"), eps_fp, a, s (0 = default), seed,
 * coalition, epsilon, delta, composition, rounds, tie ("one" or "zero"). */
TTPA_API ttpa_status ttpa_tt_trace(const ttpa_keyset* ks, const char* config_json,
                                   char** result_json);

/* Encrypts `bit` (stream seeded by `seed`) and returns the decryption
 * circuit of that ciphertext. mode: "literal" or "compact". */
TTPA_API ttpa_status ttpa_tt_export_circuit(const ttpa_keyset* ks, int bit, const char* mode,
                                            uint64_t seed, ttpa_circuit** out,
                                            char** ciphertext_json);

/* ---- sanitizers -------------------------------------------------------- */

typedef struct ttpa_database ttpa_database;

/* "d=<width>" header then one hex row per line. */
TTPA_API ttpa_status ttpa_database_from_text(const char* text, ttpa_database** out);
TTPA_API ttpa_status ttpa_database_size(const ttpa_database* db, size_t* rows,
                                        size_t* width);
TTPA_API void ttpa_database_free(ttpa_database* db);

/* queries_json: array of circuit netlists. Config keys: kind, epsilon,
 * delta, composition, rounds, alpha. */
TTPA_API ttpa_status ttpa_sanitize_run(const ttpa_database* db, const char* queries_json,
                                       const char* config_json, uint64_t seed,
                                       char** result_json);

/* ---- experiments ------------------------------------------------------- */

/* Config keys: n, kappa, eps_fp, a, sanitizer, epsilon, delta, composition,
 * rounds, trials, seed, tie, audit_epsilon, audit_delta. The report does
 * not depend on `threads`. */
TTPA_API ttpa_status ttpa_attack_run(const char* config_json, size_t threads,
                                     char** report_json);
TTPA_API ttpa_status ttpa_report_summary(const char* report_json, char** table,
                                         char** csv);
/* Config keys: epsilon, delta, k, d, trials, seed, points
 * ([{n, alpha, expect_accurate}]), calibration_draws, calibration_scale,
 * calibration_alpha. */
TTPA_API ttpa_status ttpa_demo_laplace_tightness(const char* config_json,
                                                 char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* TTPA_TTPA_H_ */
