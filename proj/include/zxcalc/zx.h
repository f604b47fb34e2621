/* Copyright 2026 The zxcalc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the zxcalc core: algebraic ZX diagrams as opaque handles,
 * JSON strings for structured data, integer status codes for errors. All
 * returned strings are owned by the caller and freed with zx_string_free.
 */

#ifndef ZXCALC_ZX_H
#define ZXCALC_ZX_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct zx_diagram zx_diagram;

typedef enum zx_status {
  ZX_OK = 0,
  ZX_ERR_PARSE = 1,
  ZX_ERR_ARITY = 2,
  ZX_ERR_UNBOUND = 3,
  ZX_ERR_UNSUPPORTED = 4,
  ZX_ERR_SHAPE = 5,
  ZX_ERR_DOMAIN = 6,
  ZX_ERR_OVERFLOW = 7,
  ZX_ERR_INTERNAL = 8
} zx_status;

const char* zx_version(void);

/* Message for the most recent failure on this thread. */
const char* zx_last_error(void);

void zx_string_free(char* s);
void zx_diagram_free(zx_diagram* d);

/* Diagram JSON wire format; see the library documentation. */
zx_status zx_diagram_parse(const char* json, zx_diagram** out);
zx_status zx_diagram_to_json(const zx_diagram* d, int indent, char** out);

/* {"inputs": n, "outputs": m, "vertices": v, "parameters": [...]} */
zx_status zx_diagram_info(const zx_diagram* d, char** out);

/* bindings: "theta=0.3,phi=1.0" or a JSON object; matrix comes back as
 * {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order. */
zx_status zx_eval(const zx_diagram* d, const char* bindings, int max_rank, char** matrix_json);

zx_status zx_differentiate(const zx_diagram* d, const char* param, zx_diagram** out);
zx_status zx_integrate_uniform(const zx_diagram* d, const char* param, zx_diagram** out);
zx_status zx_simplify(const zx_diagram* d, zx_diagram** out);

/* Derivative diagram against central finite differences on `samples` random
 * bindings. Writes a JSON report; *passed is 1 when every deviation is at
 * most tol. */
zx_status zx_grad_check(const zx_diagram* d, const char* param, int samples, uint64_t seed,
                        double h, double tol, char** report_json, int* passed);

/* Integration gadget against the trapezoid oracle on `samples` random
 * bindings of the remaining parameters. */
zx_status zx_int_check(const zx_diagram* d, const char* param, int nodes, int samples,
                       uint64_t seed, double tol, char** report_json, int* passed);

/* Soundness of the rewrite-rule catalog. `only` filters by rule name when
 * non-NULL. threads <= 0 picks the hardware default. */
zx_status zx_verify_rules(const char* only, int samples, uint64_t seed, int threads,
                          char** report_json, int* all_passed);

/* Gradient variance of a circuit observable. circuit: the text format with
 * a "qubits n" header; hamiltonian: weighted Pauli strings ("ZZ",
 * "0.5*ZI+0.5*IZ"). param selects one parameter by name, NULL runs all.
 * mc_samples > 0 adds a Monte Carlo cross-check column. */
zx_status zx_variance(const char* circuit, const char* hamiltonian, const char* param,
                      long mc_samples, uint64_t seed, int threads, int max_rank,
                      int with_timings, char** report_json);

/* Barren-plateau scan over qubit counts; CSV with one row per (n, j). */
zx_status zx_bp_scan(const char* ansatz, int n_min, int n_max, int max_rank, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* ZXCALC_ZX_H */
