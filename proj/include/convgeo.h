/* SPDX-License-Identifier: Apache-2.0
 *
 * C API for the convgeo library: finite convex geometries, their convex
 * dimension, and geometric representations by planar bodies and ellipsoids.
 *
 * All functions return a cg_status; CG_OK means the call succeeded. Boolean
 * outcomes (valid / isomorphic / in convex position) are written to out
 * parameters, never encoded as errors. On failure cg_last_error() returns a
 * thread-local description. Strings returned through char** are owned by the
 * caller and must be released with cg_string_free(); handles must be
 * released with their matching *_free().
 *
 * Payloads are JSON documents; the schemas are described in the README.
 */
#ifndef CONVGEO_H
#define CONVGEO_H

#include <stdint.h>

#ifndef CONVGEO_API
#define CONVGEO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cg_status {
  CG_OK = 0,
  CG_ERROR_INVALID_ARGUMENT = 1,
  CG_ERROR_PARSE = 2,
  CG_ERROR_CAP_EXCEEDED = 3,
  CG_ERROR_TOLERANCE_INCONCLUSIVE = 4,
  CG_ERROR_DEGENERATE_INPUT = 5,
  CG_ERROR_CONSTRUCTION_FAILED = 6,
  CG_ERROR_ORACLE_VIOLATION = 7,
  CG_ERROR_INTERNAL = 8
} cg_status;

typedef struct cg_geometry cg_geometry;
typedef struct cg_orderings cg_orderings;
typedef struct cg_bodies cg_bodies;
typedef struct cg_planar_rep cg_planar_rep;
typedef struct cg_ellipsoid_rep cg_ellipsoid_rep;

CONVGEO_API const char* cg_version(void);
CONVGEO_API const char* cg_last_error(void);
CONVGEO_API void cg_string_free(char* text);

CONVGEO_API void cg_geometry_free(cg_geometry* g);
CONVGEO_API void cg_orderings_free(cg_orderings* o);
CONVGEO_API void cg_bodies_free(cg_bodies* b);
CONVGEO_API void cg_planar_rep_free(cg_planar_rep* r);
CONVGEO_API void cg_ellipsoid_rep_free(cg_ellipsoid_rep* r);

/* ---- parsing and serialization ---- */

CONVGEO_API cg_status cg_orderings_from_json(const char* text, cg_orderings** out);
CONVGEO_API cg_status cg_orderings_to_json(const cg_orderings* o, char** out);
CONVGEO_API cg_status cg_geometry_from_json(const char* text, cg_geometry** out);
CONVGEO_API cg_status cg_geometry_to_json(const cg_geometry* g, char** out);
CONVGEO_API cg_status cg_bodies_from_json(const char* text, cg_bodies** out);
CONVGEO_API cg_status cg_bodies_to_json(const cg_bodies* b, char** out);
CONVGEO_API cg_status cg_planar_rep_from_json(const char* text, cg_planar_rep** out);
CONVGEO_API cg_status cg_planar_rep_to_json(const cg_planar_rep* r, char** out);
CONVGEO_API cg_status cg_ellipsoid_rep_from_json(const char* text,
                                                 cg_ellipsoid_rep** out);
CONVGEO_API cg_status cg_ellipsoid_rep_to_json(const cg_ellipsoid_rep* r, char** out);

/* ---- constructions and analysis ---- */

/* Family generated by the orderings: X is convex iff every outside element
 * dominates X in some ordering. */
CONVGEO_API cg_status cg_geometry_from_orderings(const cg_orderings* o,
                                                 cg_geometry** out);

/* Set-system axioms plus the anti-exchange property of a family given as
 * geometry JSON. valid receives 0/1; the report carries witnesses. */
CONVGEO_API cg_status cg_family_check_json(const char* family_text,
                                           char** report_json, int* valid);

/* Convex dimension: width of the copoint poset. The report lists every
 * copoint and a maximum antichain witness. */
CONVGEO_API cg_status cg_geometry_cdim(const cg_geometry* g, int* value,
                                       char** report_json);

/* Affine convexity geometry on {0, +-e_1, ..., +-e_n}, 1 <= n <= 4. */
CONVGEO_API cg_status cg_crosspolytope(int n, cg_geometry** out);

/* 1 iff the copoints attached to the center are exactly the 2^n sign sets
 * and every vertex copoint is its complement. */
CONVGEO_API cg_status cg_crosspolytope_copoints_ok(int n, int* ok);

/* Geometry of affine convexity on exact rational points (points JSON). */
CONVGEO_API cg_status cg_geometry_from_points_json(const char* text,
                                                   cg_geometry** out);

/* Geometry derived from planar bodies via the hull closure, with crossing
 * statistics, the sweep orderings and the k*C(n,2) dimension bound verdict
 * in stats_json. tolerance <= 0 keeps the default (1e-9). */
CONVGEO_API cg_status cg_bodies_derive(const cg_bodies* b, double tolerance,
                                       cg_geometry** out_geometry,
                                       char** stats_json);

/* 1 iff no selected body lies in the hull of the other selected ones. */
CONVGEO_API cg_status cg_bodies_convex_position(const cg_bodies* b,
                                                const int* indices, int count,
                                                double tolerance, int* ok);

/* ---- representations ---- */

/* Planar pinched-polygon representation. m <= 0 keeps the ray count at
 * max(#orderings, 3); epsilon <= 0 picks the validated default; shape is
 * one of inner-polygon | outer-polygon | midpoint-polygon | semialgebraic;
 * exact selects rational ray directions. */
CONVGEO_API cg_status cg_represent_planar(const cg_orderings* o, int m,
                                          double epsilon, const char* shape,
                                          int exact, cg_planar_rep** out);

CONVGEO_API cg_status cg_planar_rep_to_svg(const cg_planar_rep* r, char** out);

/* Derives the geometry of the representation bodies and compares it with g
 * element by element. ok receives 0/1; on 0 the report carries the first
 * disagreeing subset. */
CONVGEO_API cg_status cg_verify_planar(const cg_geometry* g, const cg_planar_rep* r,
                                       double tolerance, int* ok,
                                       char** report_json);

/* Axis-aligned ellipsoid representation with semiaxes in (1, s]. */
CONVGEO_API cg_status cg_represent_ellipsoids(const cg_orderings* o, double s,
                                              cg_ellipsoid_rep** out);

/* Axis-separation check for convex subsets plus the analytic and sampled
 * containment certificates for non-convex ones. samples <= 0 keeps the
 * default (20000); tau <= 0 keeps 1e-9. */
CONVGEO_API cg_status cg_verify_ellipsoid(const cg_geometry* g,
                                          const cg_ellipsoid_rep* r, long samples,
                                          uint64_t seed, double tau, int* ok,
                                          char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* CONVGEO_H */
