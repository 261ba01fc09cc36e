// Copyright 2026 The qmbqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMBQC_C_H
#define QMBQC_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(QMBQC_BUILDING)
#define QMBQC_API __attribute__((visibility("default")))
#else
#define QMBQC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum qmbqc_status {
    QMBQC_OK = 0,
    QMBQC_ERR_FAILURE = 1,
    QMBQC_ERR_PARSE = 2,
    QMBQC_ERR_UNSUPPORTED = 3,
    QMBQC_ERR_TABLE = 4,
    QMBQC_ERR_DIVERGED = 5,
    QMBQC_ERR_FRAME = 6,
    QMBQC_ERR_ARGUMENT = 7 /* null handle or bad buffer */
} qmbqc_status;

typedef struct qmbqc_gate qmbqc_gate;
typedef struct qmbqc_pattern qmbqc_pattern;

QMBQC_API const char *qmbqc_version(void);
/* Message of the last failure on this thread; empty if none. */
QMBQC_API const char *qmbqc_last_error(void);
/* Strings returned through char** are owned by the caller. */
QMBQC_API void qmbqc_string_free(char *s);

/* formalism: "ring", "field" or NULL for ring. */
QMBQC_API qmbqc_status qmbqc_gate_from_json(const char *json, const char *formalism, qmbqc_gate **out);
QMBQC_API void qmbqc_gate_free(qmbqc_gate *g);
QMBQC_API int qmbqc_gate_dim(const qmbqc_gate *g);
/* Writes d*d (re, im) pairs row-major into out, which holds 2*d*d doubles. */
QMBQC_API qmbqc_status qmbqc_gate_intrinsic(const qmbqc_gate *g, double *out, size_t len);
/* 0 when the intrinsic gate has no Pauli order. */
QMBQC_API qmbqc_status qmbqc_gate_pauli_order(const qmbqc_gate *g, int *order);

/* target holds 2*d*d doubles, row-major (re, im). */
QMBQC_API qmbqc_status qmbqc_compile(const qmbqc_gate *g, const double *target, size_t len, uint64_t seed,
                                     qmbqc_pattern **out);
QMBQC_API qmbqc_status qmbqc_transport(const qmbqc_gate *g, qmbqc_pattern **out);
QMBQC_API void qmbqc_pattern_free(qmbqc_pattern *p);
QMBQC_API int qmbqc_pattern_length(const qmbqc_pattern *p);
QMBQC_API qmbqc_status qmbqc_pattern_to_json(const qmbqc_pattern *p, char **json);
QMBQC_API qmbqc_status qmbqc_pattern_from_json(const char *json, const char *formalism, qmbqc_pattern **out);

/* Runs trials on a fresh chain; input holds 2*d doubles. */
QMBQC_API qmbqc_status qmbqc_run_trials(const qmbqc_pattern *p, const double *input, size_t len, uint64_t seed,
                                        int trials, int *failures, double *min_fidelity);

/* request: {"command":..., "gate":{...}, "target":..., "graph":..., "pattern":..., "formalism":"ring",
   "seed":1, "trials":1, "dump_state":false}. The report is always written; the status is the exit code. */
QMBQC_API qmbqc_status qmbqc_command(const char *request, char **report);

#ifdef __cplusplus
}
#endif

#endif
