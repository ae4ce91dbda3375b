/* C interface to the bucketforge inference engine.
 *
 * Every object is an opaque handle released with its matching *_free.
 * Functions returning bf_status leave a message in bf_last_error() on
 * failure. Strings returned through char** are released with
 * bf_string_free. */
#ifndef BUCKETFORGE_H
#define BUCKETFORGE_H

#include <stddef.h>

#if defined(BF_BUILDING_LIBRARY)
#define BF_API __attribute__((visibility("default")))
#else
#define BF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bf_model bf_model;
typedef struct bf_evidence bf_evidence;
typedef struct bf_cnf bf_cnf;
typedef struct bf_result bf_result;

typedef enum {
  BF_OK = 0,
  BF_E_USAGE = 1,      /* bad arguments, bad ordering, unknown variable */
  BF_E_MODEL = 2,      /* unreadable or invalid model / evidence / CNF */
  BF_E_INFEASIBLE = 3, /* evidence of probability 0, or unsatisfiable theory */
  BF_E_INTERNAL = 4
} bf_status;

typedef enum { BF_KIND_BAYES = 0, BF_KIND_ID = 1 } bf_model_kind;

typedef enum {
  BF_QUERY_BEL = 0,
  BF_QUERY_MPE = 1,
  BF_QUERY_MAP = 2,
  BF_QUERY_MEU = 3,
  BF_QUERY_COND_MPE = 4
} bf_query_kind;

typedef enum {
  BF_ORDER_MIN_FILL = 0,
  BF_ORDER_MIN_DEGREE = 1,
  BF_ORDER_GIVEN = 2,
  BF_ORDER_ALL_HEURISTICS = 3 /* stats only */
} bf_order_kind;

typedef enum { BF_FORMAT_TEXT = 0, BF_FORMAT_JSON = 1 } bf_format;

typedef enum { BF_GEN_BAYES = 0, BF_GEN_ID = 1, BF_GEN_TREE = 2, BF_GEN_CNF = 3 } bf_gen_kind;

BF_API const char* bf_version(void);
/* Message of the last failure on the calling thread ("" if none). */
BF_API const char* bf_last_error(void);
BF_API void bf_string_free(char* s);

/* Models ------------------------------------------------------------- */

BF_API bf_status bf_model_parse(const char* text, int lax, bf_model** out);
BF_API bf_status bf_model_load(const char* path, int lax, bf_model** out);
BF_API void bf_model_free(bf_model* m);
BF_API bf_model_kind bf_model_kind_of(const bf_model* m);
BF_API size_t bf_model_num_vars(const bf_model* m);
BF_API size_t bf_model_num_warnings(const bf_model* m);
BF_API const char* bf_model_warning(const bf_model* m, size_t i);
/* Comma-separated names, one per variable in id order. */
BF_API bf_status bf_model_set_names(bf_model* m, const char* names);
/* Variable id for a name or decimal id; -1 if unknown. */
BF_API int bf_model_find_var(const bf_model* m, const char* token);
BF_API const char* bf_model_var_name(const bf_model* m, int var);
BF_API bf_status bf_model_serialize(const bf_model* m, char** text);

/* Evidence ----------------------------------------------------------- */

BF_API bf_status bf_evidence_parse(const bf_model* m, const char* text, bf_evidence** out);
BF_API bf_status bf_evidence_load(const bf_model* m, const char* path, bf_evidence** out);
BF_API void bf_evidence_free(bf_evidence* e);

/* CNF theories ------------------------------------------------------- */

BF_API bf_status bf_cnf_parse(const char* text, bf_cnf** out);
BF_API bf_status bf_cnf_load(const char* path, bf_cnf** out);
BF_API void bf_cnf_free(bf_cnf* c);
BF_API int bf_cnf_num_props(const bf_cnf* c);

/* Queries ------------------------------------------------------------ */

typedef struct {
  bf_query_kind kind;
  /* bel: the single query variable; map: hypothesis; cond-mpe: cutset. */
  const int* vars;
  size_t num_vars;
  /* cond-mpe with no cutset: choose one so the rest has induced width <= wbound. */
  int wbound;
  bf_order_kind order_kind;
  const int* order; /* BF_ORDER_GIVEN: a permutation of variable ids */
  size_t order_len;
  int trace;
  int oracle;        /* also compute the brute-force reference */
  unsigned parallel; /* cond-mpe worker threads */
} bf_query;

BF_API void bf_query_init(bf_query* q);

/* `evidence` may be NULL. MPE/MAP with impossible evidence succeed with
 * bf_result_impossible() set; bel/meu report BF_E_INFEASIBLE. */
BF_API bf_status bf_run_query(const bf_model* m, const bf_evidence* evidence, const bf_query* q,
                              bf_result** out);

BF_API int bf_result_has_value(const bf_result* r);
BF_API double bf_result_value(const bf_result* r);
BF_API int bf_result_has_evidence_mass(const bf_result* r);
BF_API double bf_result_evidence_mass(const bf_result* r);
BF_API int bf_result_impossible(const bf_result* r);
/* Copies up to `cap` entries; returns the full count. */
BF_API size_t bf_result_belief(const bf_result* r, double* out, size_t cap);
BF_API size_t bf_result_assignment(const bf_result* r, int* vars, int* values, size_t cap);
BF_API int bf_result_max_scope(const bf_result* r);
BF_API bf_status bf_result_render(const bf_result* r, bf_format format, char** text);
BF_API void bf_result_free(bf_result* r);

/* Directional resolution. `order` uses 0-based node ids (proposition - 1).
 * Returns BF_E_INFEASIBLE for an unsatisfiable theory; `text` is filled
 * either way. With `oracle`, the truth-table verdict and model-set
 * comparison are included. */
BF_API bf_status bf_run_dr(const bf_cnf* c, bf_order_kind order_kind, const int* order,
                           size_t order_len, int show_extension, int oracle, bf_format format,
                           char** text);

/* Width report of the moral (Bayes), augmented (ID) or interaction (CNF)
 * graph along a given ordering or every heuristic. Observed variables
 * (`evidence`, may be NULL) are deleted from the graph. */
BF_API bf_status bf_stats_model(const bf_model* m, const bf_evidence* evidence,
                                bf_order_kind order_kind, const int* order, size_t order_len,
                                bf_format format, char** text);
BF_API bf_status bf_stats_cnf(const bf_cnf* c, bf_order_kind order_kind, const int* order,
                              size_t order_len, bf_format format, char** text);

/* Random instance text in the model or DIMACS format. For BF_GEN_CNF,
 * `size` is the proposition count and the clause count is 4 * size. */
BF_API bf_status bf_generate(bf_gen_kind kind, int size, int max_card, unsigned long long seed,
                             char** text);

#ifdef __cplusplus
}
#endif

#endif /* BUCKETFORGE_H */
