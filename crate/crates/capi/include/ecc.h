#ifndef ECC_CAPI_H
#define ECC_CAPI_H

/* Generated by cbindgen from the ecc-capi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Diameter algorithm selector.
 */
typedef enum EccDiameterVariant {
  EccDiameterVariant_Basic = 0,
  EccDiameterVariant_CenterInit = 1,
  EccDiameterVariant_Delegate = 2,
  EccDiameterVariant_CenterInitDelegate = 3,
} EccDiameterVariant;

/**
 * Call outcome. Zero is success; negative values are errors and
 * `ecc_last_error` carries the message.
 */
typedef enum EccStatus {
  EccStatus_Ok = 0,
  EccStatus_NullArgument = -1,
  EccStatus_InvalidUtf8 = -2,
  EccStatus_Io = -3,
  EccStatus_ParseError = -4,
  EccStatus_InvalidArgument = -5,
  /**
   * A certificate audit completed and rejected the claim.
   */
  EccStatus_Rejected = -6,
  /**
   * The certificate belongs to a different graph.
   */
  EccStatus_FingerprintMismatch = -7,
  EccStatus_InternalPanic = -8,
} EccStatus;

/**
 * Opaque graph handle.
 */
typedef struct EccGraph EccGraph;

/**
 * Radius answer: the value, a center witness, the sweeps spent and the
 * size of the radius certificate.
 */
typedef struct EccRadiusResult {
  uint64_t radius;
  uint64_t center;
  uint64_t sweeps;
  uint64_t certificate_size;
} EccRadiusResult;

/**
 * Diameter answer: the value, a diametral witness, the sweeps spent and
 * the size of the diameter certificate.
 */
typedef struct EccDiameterResult {
  uint64_t diameter;
  uint64_t witness;
  uint64_t sweeps;
  uint64_t certificate_size;
} EccDiameterResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *ecc_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by an `ecc_*` call and not freed before.
 */
void ecc_string_free(char *s);

/**
 * Reads a whitespace edge-list file (`-` for stdin, `.gz` accepted).
 *
 * # Safety
 * `path` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum EccStatus ecc_graph_read_edge_list(const char *path, struct EccGraph **out);

/**
 * Reads a DIMACS shortest-path file.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum EccStatus ecc_graph_read_dimacs_gr(const char *path, struct EccGraph **out);

/**
 * Parses an edge list held in memory.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum EccStatus ecc_graph_parse_edge_list(const char *text, struct EccGraph **out);

/**
 * Releases a graph handle.
 *
 * # Safety
 * `g` must come from an `ecc_graph_*` constructor and not be freed twice.
 */
void ecc_graph_free(struct EccGraph *g);

/**
 * Node count, or 0 for NULL.
 *
 * # Safety
 * `g` must be a live graph handle or NULL.
 */
uint64_t ecc_graph_node_count(const struct EccGraph *g);

/**
 * Stored arc count (undirected edges count twice), or 0 for NULL.
 *
 * # Safety
 * `g` must be a live graph handle or NULL.
 */
uint64_t ecc_graph_arc_count(const struct EccGraph *g);

/**
 * 1 for directed graphs, 0 otherwise.
 *
 * # Safety
 * `g` must be a live graph handle or NULL.
 */
int32_t ecc_graph_is_directed(const struct EccGraph *g);

/**
 * Restricts a graph to its largest (strongly) connected component. The
 * solvers below require this.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be a valid pointer.
 */
enum EccStatus ecc_graph_restrict_to_core(const struct EccGraph *g, struct EccGraph **out);

/**
 * Computes the radius with its certificate. `ranking_seed < 0` selects the
 * id ranking, otherwise the seeded random ranking. When `cert_json` is
 * non-NULL it receives the serialized certificate bundle.
 *
 * # Safety
 * `g` must be a live, core-restricted graph handle; `out` must be valid;
 * `cert_json` may be NULL.
 */
enum EccStatus ecc_radius(const struct EccGraph *g,
                          int64_t ranking_seed,
                          struct EccRadiusResult *out,
                          char **cert_json);

/**
 * Computes the diameter with its certificate; see [`ecc_radius`] for the
 * ranking and JSON conventions.
 *
 * # Safety
 * `g` must be a live, core-restricted graph handle; `out` must be valid;
 * `cert_json` may be NULL.
 */
enum EccStatus ecc_diameter(const struct EccGraph *g,
                            enum EccDiameterVariant variant,
                            int64_t ranking_seed,
                            struct EccDiameterResult *out,
                            char **cert_json);

/**
 * Computes all eccentricities into a caller-allocated array of length
 * `ecc_graph_node_count(g)`.
 *
 * # Safety
 * `g` must be a live, core-restricted graph handle; `out_ecc` must point
 * to at least `n` writable u64 slots; `sweeps` and `cert_json` may be NULL.
 */
enum EccStatus ecc_all_eccentricities(const struct EccGraph *g,
                                      int64_t ranking_seed,
                                      uint64_t *out_ecc,
                                      uint64_t *sweeps,
                                      char **cert_json);

/**
 * Audits a serialized certificate bundle against a graph. Returns `Ok`
 * when the audit accepts, `Rejected` when it refutes the claim, and
 * `FingerprintMismatch` when the bundle belongs to another graph.
 *
 * # Safety
 * `g` must be a live graph handle and `json` a valid NUL-terminated string.
 */
enum EccStatus ecc_verify_bundle(const struct EccGraph *g, const char *json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ECC_CAPI_H */
