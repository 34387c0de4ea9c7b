/* Copyright 2026 privclust developers
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the privclust solver library. All functions return a
 * pc_status; handles are opaque and must be released with their matching
 * _free function. Out-string parameters receive malloc'd buffers owned by
 * the library; release them with pc_string_free. Error details are written
 * into the caller's errbuf (always NUL-terminated when errlen > 0).
 */
#ifndef PRIVCLUST_H
#define PRIVCLUST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int pc_status;
#define PC_OK 0
#define PC_ERR_INVALID_ARGUMENT 1
#define PC_ERR_PARSE 2
#define PC_ERR_INVALID_INSTANCE 3
#define PC_ERR_INFEASIBLE 4
#define PC_ERR_SIZE_CAP 5
#define PC_ERR_INTERNAL 6

typedef struct pc_instance pc_instance;
typedef struct pc_solution pc_solution;

const char* pc_version(void);

/* ------------------------------------------------------------------ */
/* Instances                                                           */
/* ------------------------------------------------------------------ */

pc_status pc_instance_parse(const char* text, pc_instance** out, char* errbuf, size_t errlen);
pc_status pc_instance_from_file(const char* path, pc_instance** out, char* errbuf, size_t errlen);
pc_status pc_instance_to_text(const pc_instance* inst, char** out_text, char* errbuf,
                              size_t errlen);
/* FNV-1a digest of the canonical serialization (16 hex chars). */
pc_status pc_instance_digest(const pc_instance* inst, char** out_text, char* errbuf,
                             size_t errlen);
void pc_instance_free(pc_instance* inst);

/* Deterministic random instance for benchmarking; spec_text uses the same
 * key-value grammar as the bench config (see pc_bench_run). */
pc_status pc_instance_generate(const char* spec_text, pc_instance** out, char* errbuf,
                               size_t errlen);

/* ------------------------------------------------------------------ */
/* Solving                                                             */
/* ------------------------------------------------------------------ */

/* variant: one of the names listed by pc_variants(). underlying: a solver id
 * or NULL/"" for the variant's default. When trace_out is non-NULL it
 * receives the per-threshold iteration log. */
pc_status pc_solve(const pc_instance* inst, const char* variant, const char* underlying,
                   pc_solution** out, char** trace_out, char* errbuf, size_t errlen);

pc_status pc_solution_parse(const char* text, pc_solution** out, char* errbuf, size_t errlen);
pc_status pc_solution_to_text(const pc_solution* sol, char** out_text, char* errbuf,
                              size_t errlen);
/* Realized radius (clustering variants) or total cost (facility variant),
 * as a canonical rational string. */
pc_status pc_solution_value(const pc_solution* sol, char** out_text, char* errbuf, size_t errlen);
void pc_solution_free(pc_solution* sol);

/* ------------------------------------------------------------------ */
/* Verification, oracle, bench, guarantees                             */
/* ------------------------------------------------------------------ */

/* Recomputes every constraint of the solution's variant from scratch.
 * *feasible is 1/0; report_out lists the violations (empty when feasible).
 * Returns PC_OK even for infeasible solutions; errors mean the pair could
 * not be checked at all. */
pc_status pc_verify(const pc_instance* inst, const pc_solution* sol, int* feasible,
                    char** report_out, char* errbuf, size_t errlen);

/* Exact optimum value for the variant (radius or total cost). Infeasible
 * instances yield PC_ERR_INFEASIBLE. */
pc_status pc_oracle(const pc_instance* inst, const char* variant, char** value_out,
                    char* errbuf, size_t errlen);

/* config_text: one "key value" pair per line among
 *   variant <name>, underlying <id>, trials <int>, seed <uint>,
 *   max_n <int>, oracle <on|off>
 * The report is byte-stable for a fixed config. A guarantee breach or
 * feasibility failure returns PC_ERR_INTERNAL with the offending instance
 * serialized into replay_out (when non-NULL). */
pc_status pc_bench_run(const char* config_text, char** report_out, char** replay_out,
                       char* errbuf, size_t errlen);

/* Canonical run report for a solved instance: digest, realized value,
 * feasibility, recompute count, and (when with_oracle) the exact optimum
 * and ratio. trace_text may be NULL. */
pc_status pc_run_report(const pc_instance* inst, const pc_solution* sol, const char* trace_text,
                        int with_oracle, char** out_text, char* errbuf, size_t errlen);

/* The guarantee table: every implemented (variant, underlying) factor plus
 * the published-subroutine bounds. */
pc_status pc_factor_table(char** out_text, char* errbuf, size_t errlen);

/* Newline-separated variant names / underlying ids for a variant. */
pc_status pc_variants(char** out_text, char* errbuf, size_t errlen);
pc_status pc_underlying_options(const char* variant, char** out_text, char* errbuf,
                                size_t errlen);

void pc_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* PRIVCLUST_H */
