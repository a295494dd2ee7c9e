#ifndef RGFO_H
#define RGFO_H

/* C interface to the rgfo library. Every call returns a status; on failure
 * rgfo_last_error() describes the problem (per thread). Strings returned
 * through char** are owned by the caller and released with rgfo_string_free.
 * Compound results are returned as JSON text. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RGFO_API __declspec(dllexport)
#else
#define RGFO_API __attribute__((visibility("default")))
#endif

typedef enum {
  RGFO_OK = 0,
  RGFO_E_ARGUMENT = 1,
  RGFO_E_SYNTAX = 2,
  RGFO_E_UNBOUND = 3,
  RGFO_E_PRECONDITION = 4,
  RGFO_E_LIMIT = 5,
  RGFO_E_TIMEOUT = 6,
  RGFO_E_IO = 7,
  RGFO_E_INTERNAL = 8
} rgfo_status;

typedef struct rgfo_formula rgfo_formula;
typedef struct rgfo_graph rgfo_graph;
typedef struct rgfo_experiment rgfo_experiment;

RGFO_API const char* rgfo_last_error(void);
RGFO_API const char* rgfo_status_name(rgfo_status s);
RGFO_API void rgfo_string_free(char* s);

/* formulas */
RGFO_API rgfo_status rgfo_formula_parse(const char* text, const char* const* free_vars, size_t n_free,
                                        rgfo_formula** out);
RGFO_API rgfo_status rgfo_formula_corpus(const char* name, rgfo_formula** out);
RGFO_API rgfo_status rgfo_corpus_names(char** out_json);
RGFO_API void rgfo_formula_free(rgfo_formula* f);
/* Fails with RGFO_E_LIMIT when the printed tree would be unreasonably large. */
RGFO_API rgfo_status rgfo_formula_to_string(const rgfo_formula* f, char** out);
RGFO_API rgfo_status rgfo_formula_normalize(const rgfo_formula* f, rgfo_formula** out);
RGFO_API rgfo_status rgfo_formula_metrics(const rgfo_formula* f, unsigned* depth, unsigned* alternations);
/* Quantifier labels in pre-order as a string over {E,A}. */
RGFO_API rgfo_status rgfo_formula_quantifiers(const rgfo_formula* f, char** out);

/* transforms; inputs are normalized first */
RGFO_API rgfo_status rgfo_formula_pnf(const rgfo_formula* f, rgfo_formula** out);
/* Non-prenex input is first brought into prenex form by rgfo_formula_pnf. */
RGFO_API rgfo_status rgfo_formula_nepnf(const rgfo_formula* f, rgfo_formula** out);
/* Writes up to cap entries of the mu trace and its full length to *len. */
RGFO_API rgfo_status rgfo_formula_pnf_alt(const rgfo_formula* f, rgfo_formula** out, unsigned* trace, size_t cap,
                                          size_t* len);

/* graphs */
RGFO_API rgfo_status rgfo_graph_parse(const char* text, rgfo_graph** out);
RGFO_API rgfo_status rgfo_graph_read_file(const char* path, rgfo_graph** out);
/* edges holds 2*n_edges vertex ids */
RGFO_API rgfo_status rgfo_graph_from_edges(size_t n, const uint32_t* edges, size_t n_edges, rgfo_graph** out);
RGFO_API void rgfo_graph_free(rgfo_graph* g);
RGFO_API size_t rgfo_graph_order(const rgfo_graph* g);
RGFO_API size_t rgfo_graph_edge_count(const rgfo_graph* g);
RGFO_API rgfo_status rgfo_graph_to_string(const rgfo_graph* g, char** out);

/* densities; rationals are "p/q" strings */
RGFO_API rgfo_status rgfo_max_density(const rgfo_graph* g, char** out);
RGFO_API rgfo_status rgfo_rel_density(const rgfo_graph* pattern, const uint32_t* roots, size_t n_roots, char** out);
RGFO_API rgfo_status rgfo_is_safe(const rgfo_graph* pattern, const uint32_t* roots, size_t n_roots, const char* alpha,
                                  int* out);
RGFO_API rgfo_status rgfo_is_rigid(const rgfo_graph* pattern, const uint32_t* roots, size_t n_roots,
                                   const char* alpha, int* out);
/* {"safe":true} or {"safe":false,"vertices":[...]} */
RGFO_API rgfo_status rgfo_rigid_subextension(const rgfo_graph* pattern, const uint32_t* roots, size_t n_roots,
                                             const char* alpha, char** out_json);
/* {"closure":[...],"steps":[[...],...]}; shuffle != 0 draws the candidate order from seed. */
RGFO_API rgfo_status rgfo_closure(const rgfo_graph* g, const uint32_t* base, size_t n_base, unsigned t,
                                  const char* alpha, int shuffle, uint64_t seed, char** out_json);

/* model checking; timeout_seconds <= 0 means no limit */
RGFO_API rgfo_status rgfo_models(const rgfo_graph* g, const rgfo_formula* f, double timeout_seconds, int* out);
RGFO_API rgfo_status rgfo_has_extension(const rgfo_graph* host, const rgfo_graph* pattern, const uint32_t* roots,
                                        size_t n_roots, int* out);
/* {"triangle":..,"sparse_extension":..,"sparse_subgraph":..,"sparse_extension_complete":..} */
RGFO_API rgfo_status rgfo_case1_properties(const rgfo_graph* g, unsigned m_cap, char** out_json);

/* games; mode is "plain", "atmost:k" or "exact:k". {"winner":..,"sentence":..} */
RGFO_API rgfo_status rgfo_game(const rgfo_graph* g, const rgfo_graph* h, unsigned rounds, const char* mode,
                               int synthesize, char** out_json);
RGFO_API rgfo_status rgfo_game_prefixed(const rgfo_graph* g, const uint32_t* gx, const rgfo_graph* h,
                                        const uint32_t* hy, size_t m, unsigned rounds, int* duplicator_wins);

/* random experiments */
RGFO_API rgfo_status rgfo_alpha_to_p(size_t n, const char* alpha, double* out);
RGFO_API rgfo_experiment* rgfo_experiment_new(void);
RGFO_API void rgfo_experiment_free(rgfo_experiment* e);
RGFO_API rgfo_status rgfo_experiment_set_alpha(rgfo_experiment* e, const char* alpha);
RGFO_API rgfo_status rgfo_experiment_set_ns(rgfo_experiment* e, const size_t* ns, size_t count);
RGFO_API rgfo_status rgfo_experiment_set_trials(rgfo_experiment* e, unsigned trials);
RGFO_API rgfo_status rgfo_experiment_set_seed(rgfo_experiment* e, uint64_t seed);
RGFO_API rgfo_status rgfo_experiment_set_timeout(rgfo_experiment* e, double seconds);
RGFO_API rgfo_status rgfo_experiment_set_sentence(rgfo_experiment* e, const rgfo_formula* f);
RGFO_API rgfo_status rgfo_experiment_set_subgraph(rgfo_experiment* e, const rgfo_graph* pattern);
RGFO_API rgfo_status rgfo_experiment_set_extension(rgfo_experiment* e, const rgfo_graph* pattern,
                                                   const uint32_t* roots, size_t n_roots);
/* Appends one outer pattern; the first call fixes the middle and inner layers. */
RGFO_API rgfo_status rgfo_experiment_add_double_extension(rgfo_experiment* e, const rgfo_graph* outer,
                                                          const uint32_t* mid, size_t n_mid, size_t n_inner);
/* eps == NULL derives eps from alpha and t. */
RGFO_API rgfo_status rgfo_experiment_set_closure_bound(rgfo_experiment* e, int64_t c, unsigned t, const char* eps,
                                                       unsigned bases_per_trial);
/* csv != 0 yields the CSV table, otherwise JSON. */
RGFO_API rgfo_status rgfo_experiment_run(const rgfo_experiment* e, int csv, char** out);

#ifdef __cplusplus
}
#endif

#endif
