/* symloc C API: opaque handles plus JSON-speaking commands over the
 * permutation-symmetric entanglement toolkit. All strings returned through
 * out-parameters are heap-allocated and must be released with
 * symloc_string_free(); all handles with their matching _free().
 *
 * Every function returns a symloc_status; on failure the thread-local
 * message from symloc_last_error() describes the problem. */

#ifndef SYMLOC_H
#define SYMLOC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum symloc_status {
  SYMLOC_OK = 0,
  SYMLOC_ERR_INVALID = 1,   /* bad arguments, schema violations */
  SYMLOC_ERR_NUMERIC = 2,   /* tolerance / verification failures */
  SYMLOC_ERR_INTERNAL = 3
} symloc_status;

typedef struct symloc_state symloc_state;       /* dense pure state */
typedef struct symloc_protocol symloc_protocol; /* finite LOCC protocol tree */

const char* symloc_version(void);
const char* symloc_last_error(void);
void symloc_string_free(char* s);

/* ---- states ---------------------------------------------------------- */

/* Parse a symloc/state JSON document. */
symloc_status symloc_state_parse(const char* json, symloc_state** out);

/* Construct a named state; params_json may be NULL or "{}".
 * Names: ek, dicke, w, ghz, snk, fnk, psi_mu, psi_derog5, sum_ek, derog_ek. */
symloc_status symloc_state_named(const char* name, const char* params_json, symloc_state** out);

symloc_status symloc_state_to_json(const symloc_state* state, char** out_json);
symloc_status symloc_state_sites(const symloc_state* state, int* out_n, int* out_d);
symloc_status symloc_state_norm(const symloc_state* state, double* out_norm);
symloc_status symloc_state_local_ranks(const symloc_state* state, int* out_ranks, size_t len);

/* scalar * (op_1 (x) ... (x) op_n) |state|; ops_json is a JSON array of n
 * matrices plus an optional {"scalar": [re, im]} wrapper. */
symloc_status symloc_state_apply_product(const symloc_state* state, const char* ops_json,
                                         symloc_state** out);

void symloc_state_free(symloc_state* state);

/* ---- protocols ------------------------------------------------------- */

symloc_status symloc_protocol_parse(const char* json, symloc_protocol** out);

/* Canned protocols: "w" {n, p_prime}, "ek" {k, n, p_prime},
 * "ghz" {n, g_x?}, "qutrit4" {} */
symloc_status symloc_protocol_canned(const char* name, const char* params_json,
                                     symloc_protocol** out);

symloc_status symloc_protocol_to_json(const symloc_protocol* protocol, char** out_json);

/* Branch outcomes as a JSON array. */
symloc_status symloc_protocol_simulate(const symloc_protocol* protocol,
                                       const symloc_state* initial, char** out_json);

void symloc_protocol_free(symloc_protocol* protocol);

/* ---- commands -------------------------------------------------------- */

/* One JSON request, one JSON response. Commands:
 *   "stabilizer"  {family: {name, params}, sample?: int, seed?: int}
 *   "quasicomm"   {mode: "check"|"factor"|"family", ...matrices}
 *   "decide"      {mode: "reach"|"convert"|"isolated", scene: {...}}
 *   "simulate"    {canned?: name, params?, protocol?, state?}
 *   "measure"     {mode: "monotone"|"maxprob", ...}
 *   "derog"       {mode: "reps"|"reach"|"isolate"|"fixtures", ...}
 *   "reproduce"   {suite?: "all"|criterion number, seed?: int}
 */
symloc_status symloc_run(const char* command, const char* request_json, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SYMLOC_H */
