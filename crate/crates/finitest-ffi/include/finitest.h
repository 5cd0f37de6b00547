#ifndef FINITEST_H
#define FINITEST_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum FtStatus {
  FT_STATUS_OK = 0,
  FT_STATUS_NULL_POINTER = 1,
  FT_STATUS_INVALID_UTF8 = 2,
  FT_STATUS_PARSE_ERROR = 3,
  FT_STATUS_RESOURCE_LIMIT = 4,
  FT_STATUS_NOT_IN_CLASS = 5,
  FT_STATUS_ARGUMENT_ERROR = 6,
  FT_STATUS_INTERNAL_ERROR = 7,
} FtStatus;

/**
 * Tester verdicts.
 */
typedef enum FtVerdict {
  FT_VERDICT_ACCEPT = 0,
  FT_VERDICT_REJECT = 1,
  FT_VERDICT_OUTSIDE_CLASS = 2,
} FtVerdict;

typedef struct FtCatalog FtCatalog;

typedef struct FtGraph FtGraph;

typedef struct FtProperty FtProperty;

typedef struct FtTester FtTester;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *ft_version(void);

/**
 * Most recent error message on this thread, or NULL. Free the result
 * with `ft_string_free`.
 */
char *ft_last_error(void);

/**
 * # Safety
 * `s` must have been returned by this library and not freed yet.
 */
void ft_string_free(char *s);

/**
 * Build the type catalog for component bound `c` and degree bound `d`.
 */
enum FtStatus ft_catalog_new(uint32_t c, uint32_t d, struct FtCatalog **out);

/**
 * # Safety
 * `cat` must be a live handle from `ft_catalog_new`.
 */
void ft_catalog_free(struct FtCatalog *cat);

size_t ft_catalog_component_count(const struct FtCatalog *cat);

size_t ft_catalog_ball_count(const struct FtCatalog *cat);

/**
 * Catalog contents as JSON.
 */
enum FtStatus ft_catalog_json(const struct FtCatalog *cat, char **out);

/**
 * Compile a Hanf-normal-form JSON document against the catalog.
 */
enum FtStatus ft_property_compile_hnf(const struct FtCatalog *cat,
                                      const char *hnf_json,
                                      struct FtProperty **out);

/**
 * Compile a textual sentence in the guarded counting fragment.
 */
enum FtStatus ft_property_compile_sentence(const struct FtCatalog *cat,
                                           const char *sentence,
                                           struct FtProperty **out);

/**
 * Load previously compiled templates from JSON.
 */
enum FtStatus ft_property_from_json(const char *json, struct FtProperty **out);

enum FtStatus ft_property_json(const struct FtProperty *property, char **out);

size_t ft_property_template_count(const struct FtProperty *property);

/**
 * # Safety
 * `property` must be a live handle.
 */
void ft_property_free(struct FtProperty *property);

/**
 * Parse an explicit graph from the textual or JSON file format.
 */
enum FtStatus ft_graph_parse(const char *text, struct FtGraph **out);

/**
 * Instantiate a named family, e.g. "EDGES:n=1000000"; answers neighbor
 * queries procedurally, so n may be far beyond materialization.
 */
enum FtStatus ft_graph_family(const struct FtCatalog *cat, const char *spec, struct FtGraph **out);

uint64_t ft_graph_vertex_count(const struct FtGraph *graph);

/**
 * Total neighbor queries answered by this graph so far (family graphs
 * only; explicit graphs are wrapped per run).
 */
uint64_t ft_graph_queries(const struct FtGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle.
 */
void ft_graph_free(struct FtGraph *graph);

/**
 * Evaluate a sentence on a graph with the exact model checker. Family
 * graphs are materialized first, so this is desk-scale only.
 */
enum FtStatus ft_eval_sentence(const char *sentence, const struct FtGraph *graph, bool *out);

/**
 * Compile an executable tester for the property at the given epsilon.
 */
enum FtStatus ft_tester_new(const struct FtCatalog *cat,
                            const struct FtProperty *property,
                            double epsilon,
                            struct FtTester **out);

size_t ft_tester_unit_count(const struct FtTester *tester);

/**
 * Exact-regime threshold of one unit, or 0 when the index is bad.
 */
uint64_t ft_tester_unit_n0(const struct FtTester *tester, size_t unit);

/**
 * Samples per trial of one unit, or 0 when the index is bad.
 */
uint64_t ft_tester_unit_samples(const struct FtTester *tester, size_t unit);

/**
 * Run the amplified union tester once with the given seed.
 */
enum FtStatus ft_tester_run(const struct FtTester *tester,
                            const struct FtGraph *graph,
                            uint64_t seed,
                            enum FtVerdict *out);

/**
 * Run one unit (no amplification) once with the given seed.
 */
enum FtStatus ft_tester_run_unit(const struct FtTester *tester,
                                 size_t unit,
                                 const struct FtGraph *graph,
                                 uint64_t seed,
                                 enum FtVerdict *out);

/**
 * # Safety
 * `tester` must be a live handle.
 */
void ft_tester_free(struct FtTester *tester);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FINITEST_H */
