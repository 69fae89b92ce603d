/*
 * C API for the nilrep library: construction, search and exact
 * certification of faithful nilrepresentations of free nilpotent Lie
 * algebras.
 *
 * All objects are opaque handles; every fallible call returns a
 * nilrep_status and leaves a human-readable message in
 * nilrep_last_error() on failure. Strings returned through char** are
 * heap-allocated and must be released with nilrep_string_free().
 */
#ifndef NILREP_H
#define NILREP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    NILREP_OK = 0,
    NILREP_ERR_INVALID = 1,  /* bad arguments or malformed input */
    NILREP_ERR_GUARD = 2,    /* dimension guard exceeded */
    NILREP_ERR_CERT = 3,     /* a certification that must hold failed */
    NILREP_ERR_BUDGET = 4,   /* retry/search budget exhausted */
    NILREP_ERR_INTERNAL = 5
} nilrep_status;

typedef struct nilrep_algebra nilrep_algebra;
typedef struct nilrep_rep nilrep_rep;

const char* nilrep_version(void);
const char* nilrep_last_error(void);
void nilrep_string_free(char* s);

/* --- free nilpotent Lie algebras --------------------------------------- */

nilrep_status nilrep_algebra_build(unsigned r, unsigned k, nilrep_algebra** out);
void nilrep_algebra_free(nilrep_algebra* alg);
unsigned long long nilrep_algebra_dim(const nilrep_algebra* alg);
/* writes min(k, buflen) per-degree dimensions; *written receives k */
nilrep_status nilrep_algebra_graded_dims(const nilrep_algebra* alg, unsigned long long* buf,
                                         size_t buflen, size_t* written);
nilrep_status nilrep_algebra_descriptor_json(const nilrep_algebra* alg, char** json_out);

/* --- closed formulas ---------------------------------------------------- */

unsigned long long nilrep_mu_formula(unsigned r);
unsigned long long nilrep_schur_bound(unsigned long long n);
int nilrep_type_feasible(unsigned long long a, unsigned long long p, unsigned long long b,
                         unsigned r);
int nilrep_sab_conditions(unsigned long long a, unsigned long long b);
void nilrep_integer_square_roots(unsigned long long n, unsigned long long* a,
                                 unsigned long long* b);
void nilrep_triangular_rep(unsigned long long m, unsigned long long* n, unsigned long long* i0);

/* --- representations ----------------------------------------------------- */

nilrep_status nilrep_rep_pi0(unsigned r, nilrep_rep** out);
nilrep_status nilrep_rep_pi1(unsigned r, nilrep_rep** out);
nilrep_status nilrep_rep_from_json(const char* json, nilrep_rep** out);
nilrep_status nilrep_rep_to_json(const nilrep_rep* rep, char** json_out);
void nilrep_rep_free(nilrep_rep* rep);
unsigned long long nilrep_rep_dimension(const nilrep_rep* rep);
/* report: {"is_homomorphism","is_faithful","dimension","type_triple","witness"};
 * *ok receives 1 iff both checks pass */
nilrep_status nilrep_rep_report_json(const nilrep_rep* rep, int full_cross_check, int* ok,
                                     char** report_json_out);

/* --- minimal construction and search ------------------------------------ */

/* strategy: "random" or "recursive". certificate_json_out may be NULL. */
nilrep_status nilrep_construct_minimal(unsigned r, const char* strategy, unsigned long long seed,
                                       long entry_bound, nilrep_rep** out,
                                       char** certificate_json_out);

/* SabSequence JSON with a certificate block and a construction trace */
nilrep_status nilrep_sab_json(unsigned long long a, unsigned long long b, const char* strategy,
                              unsigned long long seed, long entry_bound, char** sab_json_out);

/* trials=0 and dim_budget=0 pick the defaults; result JSON embeds the
 * representation plus the attempted-profile log. *found receives 1 on
 * success, 0 when the dimension budget was exhausted. */
nilrep_status nilrep_search_json(unsigned r, unsigned k, unsigned long long seed, unsigned trials,
                                 unsigned long long dim_budget, long entry_bound, int* found,
                                 char** result_json_out);

nilrep_status nilrep_reference_bounds_json(unsigned r, unsigned k, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* NILREP_H */
