/* nearlytu: exact solver toolkit for integer programs on nearly totally
 * unimodular systems. C interface: opaque handles plus status codes; all
 * returned strings are owned by the caller and released with
 * ntu_string_free (reports and instances have their own destructors). */

#ifndef NEARLYTU_H
#define NEARLYTU_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ntu_instance ntu_instance;
typedef struct ntu_report ntu_report;

typedef enum {
  NTU_OK = 0,
  NTU_MISMATCH = 1, /* verification found a disagreement */
  NTU_PARSE = 2,    /* parse or validation failure */
  NTU_BUDGET = 3,   /* enumeration cap or oracle budget exceeded */
  NTU_INTERNAL = 4  /* internal invariant breach */
} ntu_status;

typedef struct {
  int verify;               /* re-solve with the oracle and compare */
  int trace;                /* keep per-stage trace lines in the report */
  long long oracle_budget;  /* lattice budget; <= 0 selects the default */
  const char* td_path;      /* external tree-decomposition file or NULL */
} ntu_solve_options;

/* Parsing and serialization. *errmsg receives a malloc'd message on
 * failure (may be NULL if not wanted). */
ntu_status ntu_instance_parse(const char* text, ntu_instance** out, char** errmsg);
ntu_status ntu_instance_load(const char* path, ntu_instance** out, char** errmsg);
ntu_status ntu_instance_emit(const ntu_instance* inst, char** text);
void ntu_instance_free(ntu_instance* inst);

/* Deterministic instance generation; emits the instance file text. */
ntu_status ntu_generate(const char* kind, unsigned long long seed, long long k,
                        long long delta, unsigned nvars, unsigned nverts, unsigned nedges,
                        int graphed, int two_bag, long long extra_cols, char** text,
                        char** errmsg);

/* Full solve chain for the instance's kind. */
ntu_status ntu_solve(const ntu_instance* inst, const ntu_solve_options* opts,
                     ntu_report** out, char** errmsg);

/* Structural property report. */
ntu_status ntu_check(const ntu_instance* inst, char** text, char** errmsg);

/* Solve plus oracle comparison: NTU_OK pass, NTU_MISMATCH fail (detail
 * explains), NTU_BUDGET when the oracle budget was exceeded. */
ntu_status ntu_verify(const ntu_instance* inst, const ntu_solve_options* opts,
                      char** detail, ntu_report** out, char** errmsg);

/* Report accessors. Returned const char* pointers stay owned by the
 * report. */
const char* ntu_report_status(const ntu_report* r);
const char* ntu_report_value(const ntu_report* r); /* NULL when absent */
char* ntu_report_text(const ntu_report* r);
char* ntu_report_json(const ntu_report* r);
int ntu_report_verified(const ntu_report* r); /* 1 pass, 0 fail, -1 n/a */
void ntu_report_free(ntu_report* r);

void ntu_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* NEARLYTU_H */
