#ifndef CYCALC_H
#define CYCALC_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CYCALC_API __declspec(dllexport)
#else
#define CYCALC_API __attribute__((visibility("default")))
#endif

typedef enum cycalc_status {
    CYCALC_OK = 0,
    CYCALC_ERR_INTERNAL = 1,
    CYCALC_ERR_PIPELINE = 2,
    CYCALC_ERR_UNDERDETERMINED = 3,
    CYCALC_ERR_INVARIANT = 4,
    CYCALC_ERR_NOT_FOUND = 5,
    CYCALC_ERR_INVALID = 6
} cycalc_status;

typedef struct cycalc_series cycalc_series;
typedef struct cycalc_operator cycalc_operator;

/* Message of the last failing call on this thread; never NULL. */
CYCALC_API const char* cycalc_last_error(void);
CYCALC_API const char* cycalc_version(void);
CYCALC_API const char* cycalc_data_dir(void);
/* Every char** result is owned by the caller and released here. */
CYCALC_API void cycalc_free_string(char* s);

/* Catalog rows as a JSON array; k = n = 0 lists everything. */
CYCALC_API cycalc_status cycalc_catalog(int k, int n, char** json_out);

/* Targets are catalog labels ("no7", "7", "No. 7") or inline spec JSON.
 * Pipelines: "auto", "abelianization", "pdelta", "qconn". */
CYCALC_API cycalc_status cycalc_resolve(const char* target, const char* pipeline, char** json_out);

/* Computed (H^3, c2.H, c3) diffed against the catalog; CYCALC_ERR_INVARIANT on mismatch. */
CYCALC_API cycalc_status cycalc_invariants(const char* target, char** json_out);

CYCALC_API cycalc_status cycalc_series_compute(const char* target, const char* pipeline, int order,
                                               cycalc_series** out);
CYCALC_API cycalc_status cycalc_series_from_json(const char* json, cycalc_series** out);
CYCALC_API cycalc_status cycalc_series_to_json(const cycalc_series* s, char** json_out);
CYCALC_API int cycalc_series_order(const cycalc_series* s);
CYCALC_API void cycalc_series_free(cycalc_series* s);

/* Minimal operator of the given theta-order annihilating I0; CYCALC_ERR_UNDERDETERMINED if none. */
CYCALC_API cycalc_status cycalc_pf_search(const cycalc_series* s, int theta_order, int max_qdegree,
                                          cycalc_operator** out);
CYCALC_API cycalc_status cycalc_operator_parse(const char* text, cycalc_operator** out);
CYCALC_API cycalc_status cycalc_operator_from_json(const char* json, cycalc_operator** out);
CYCALC_API cycalc_status cycalc_operator_to_json(const cycalc_operator* op, char** json_out);
CYCALC_API cycalc_status cycalc_operator_pretty(const cycalc_operator* op, char** text_out);
/* Equality after normalization to coprime integer coefficients. */
CYCALC_API cycalc_status cycalc_operator_equal(const cycalc_operator* a, const cycalc_operator* b, int* equal);
/* Number of leading coefficients of op(I0) that vanish, and the series length. */
CYCALC_API cycalc_status cycalc_operator_verify(const cycalc_operator* op, const cycalc_series* s, int* vanishing,
                                                int* length);
CYCALC_API void cycalc_operator_free(cycalc_operator* op);

/* Golden operator text shipped with the library, e.g. "no4". */
CYCALC_API cycalc_status cycalc_golden(const char* name, cycalc_operator** out);

/* Twisted quantum connection pipeline for No. 25: matrix, QDE, I0, PF operator and factorization checks. */
CYCALC_API cycalc_status cycalc_qconn_report(int order, char** json_out);

#ifdef __cplusplus
}
#endif

#endif
