#ifndef BARFILL_H
#define BARFILL_H
/* C surface of the bar-complex filler library.
 *
 * A bf_session owns a configuration and the caches behind it.  Every
 * operation returns a status code and, on success, a heap string in
 * *out (JSON, or CSV where the configured format says so) that the
 * caller releases with bf_string_free.  On failure *out is set to NULL
 * and bf_last_error carries the diagnostic for the failing call.
 *
 * Set configuration before running operations: caches built under the
 * old values are not invalidated.  A session may be shared across
 * threads, but concurrent calls interleave their bf_last_error text,
 * so callers that need diagnostics should serialize per session.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bf_session bf_session;

typedef enum bf_status {
    BF_OK = 0,
    BF_E_PRECONDITION = 2, /* an operation contract was broken */
    BF_E_REFUSED = 3,      /* a cap or budget stopped the run; not a falsehood */
    BF_E_PARSE = 65,       /* malformed spec, chain, recipe, or config text */
    BF_E_INTERNAL = 70     /* invariant breach inside the library */
} bf_status;

/* NULL only when out of memory; free with bf_session_free */
bf_session* bf_session_new(void);
void bf_session_free(bf_session* s);

/* keys: order_cap dim_cap nnz_cap census_cap node_budget weight_ceiling
 * seed threads checkpoint_path format */
bf_status bf_config_set(bf_session* s, const char* key, const char* value);
bf_status bf_config_load_file(bf_session* s, const char* path);
/* loads the file named by $BARFILL_CONFIG when the variable is set */
bf_status bf_config_load_env(bf_session* s);

/* diagnostic for the most recent failing call; "" after a success */
const char* bf_last_error(const bf_session* s);

void bf_string_free(char* text);

/* {"spec","order","identity","matrix"[,"field","mat_dim"]} */
bf_status bf_group_info(bf_session* s, const char* spec, char** out);

/* {"group","n","l","dim","cycle_dim","boundary_rank","reps","reps_minimal"} */
bf_status bf_homology(bf_session* s, const char* spec, uint32_t n, uint32_t l, char** out);

/* chain_json: {"group":spec,"n":d,"l":m,"terms":[[coeff,[elem,...]],...]};
 * the chain must be a boundary.  Result carries value, exact, nodes,
 * budget_hit and the witness filler as a chain object. */
bf_status bf_filler_norm(bf_session* s, const char* chain_json, char** out);

/* mode "exhaustive" (refuses past census_cap) or "sampled" (needs samples > 0) */
bf_status bf_isop(bf_session* s, const char* spec, uint32_t n, uint32_t l, uint32_t K,
                  const char* mode, uint64_t samples, char** out);

/* isop for K = 0..k_max plus the running max K1[K] = max isop(1..2K) */
bf_status bf_isop_profile(bf_session* s, const char* spec, uint32_t n, uint32_t l, uint32_t k_max,
                          const char* mode, uint64_t samples, char** out);

/* sentence Phi_{K,K1,K2}: every size-K boundary with a filler of size
 * exactly K1 fills within K2 */
bf_status bf_check_phi(bf_session* s, const char* spec, uint32_t n, uint32_t l, uint32_t K,
                       uint32_t K1, uint32_t K2, char** out);

/* sentence Psi_K; pass h_bound = BF_PSI_COMPUTED_BOUND to use the
 * class count among cycles of size <= K */
#define BF_PSI_COMPUTED_BOUND UINT64_MAX
bf_status bf_check_psi(bf_session* s, const char* spec, uint32_t n, uint32_t l, uint32_t K,
                       uint32_t K1, uint64_t h_bound, char** out);

/* diagonal torus of a matrix group: subgroup index versus the induced
 * map on H_n */
bf_status bf_torus_check(bf_session* s, const char* spec, uint32_t n, uint32_t l, char** out);

/* evaluate a recipe over the family pattern (gl:<k>, sl:<k>, torus:<k>)
 * for prime powers q_lo..q_hi (q = 1 mod mod_filter when >= 2) and fill
 * each boundary; JSON report, or the CSV table when format=csv */
bf_status bf_family_probe(bf_session* s, const char* pattern, uint32_t q_lo, uint32_t q_hi,
                          uint32_t mod_filter, uint32_t n, uint32_t l, const char* recipe,
                          uint32_t K, char** out);

/* run one invariant suite by name, or all with "" / "all" / NULL; the
 * report depends only on the configured seed and is byte-identical
 * across runs with the same seed */
bf_status bf_selftest(bf_session* s, const char* suite, char** out);

/* 1 when the report text under *out has "all_pass": true */
int bf_selftest_passed(const char* report_json);

#ifdef __cplusplus
}
#endif

#endif /* BARFILL_H */
