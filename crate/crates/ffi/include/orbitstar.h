#ifndef ORBITSTAR_H
#define ORBITSTAR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OrbStatus {
  ORB_STATUS_OK = 0,
  ORB_STATUS_NULL_POINTER = 1,
  ORB_STATUS_UTF8 = 2,
  ORB_STATUS_PARSE = 3,
  ORB_STATUS_INVALID = 4,
  ORB_STATUS_PANIC = 5,
} OrbStatus;

/*
 A Lie algebra together with its enveloping algebra U_h.
 */
typedef struct OrbAlgebra OrbAlgebra;

/*
 The sphere orbit x² + y² + z² = c(h) over an su(2)-type algebra.
 */
typedef struct OrbOrbit OrbOrbit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or NULL.

 The pointer stays valid until the next failing call on the same thread.
 */
const char *orb_last_error_message(void);

/*
 Releases a string returned through an `out` parameter. NULL is ignored.

 # Safety
 `s` must come from this library and not have been freed already.
 */
void orb_string_free(char *s);

/*
 Builds su(2) with the bracket {x, y} = z and cyclic.

 # Safety
 `out` must be a valid pointer to writable storage.
 */
enum OrbStatus orb_algebra_su2(struct OrbAlgebra **out);

/*
 Builds an algebra from the JSON file format (`names`, `brackets`).
 Fails with `ORB_STATUS_INVALID` if the constants violate Jacobi.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum OrbStatus orb_algebra_from_json(const char *json, struct OrbAlgebra **out);

/*
 # Safety
 `alg` must come from this library and not have been freed already.
 */
void orb_algebra_free(struct OrbAlgebra *alg);

/*
 Kirillov bracket {f, g}.

 # Safety
 Pointers must be valid; strings NUL-terminated.
 */
enum OrbStatus orb_bracket(const struct OrbAlgebra *alg, const char *f, const char *g, char **out);

/*
 Weyl-ordered product f ⋆_S g.

 # Safety
 Pointers must be valid; strings NUL-terminated.
 */
enum OrbStatus orb_star_s(const struct OrbAlgebra *alg, const char *f, const char *g, char **out);

/*
 Symmetrization W(f), printed in PBW normal form over the upper-case generators.

 # Safety
 Pointers must be valid; strings NUL-terminated.
 */
enum OrbStatus orb_weyl(const struct OrbAlgebra *alg, const char *f, char **out);

/*
 W⁻¹ of an element of U_h written in the upper-case generators, e.g. `Y*X`.

 # Safety
 Pointers must be valid; strings NUL-terminated.
 */
enum OrbStatus orb_weyl_inverse(const struct OrbAlgebra *alg, const char *a, char **out);

/*
 Orbit x² + y² + z² = c(h), with `level` a polynomial in `h` such as `1 + 1/2*h`.

 # Safety
 Pointers must be valid; strings NUL-terminated.
 */
enum OrbStatus orb_orbit_new(const struct OrbAlgebra *alg,
                             const char *level,
                             struct OrbOrbit **out);

/*
 # Safety
 `orbit` must come from this library and not have been freed already.
 */
void orb_orbit_free(struct OrbOrbit *orbit);

/*
 Tangential product f ⋆_P g.

 # Safety
 Pointers must be valid; strings NUL-terminated.
 */
enum OrbStatus orb_star_p(const struct OrbOrbit *orbit, const char *f, const char *g, char **out);

/*
 Quotient product on the sphere basis. Inputs with z-degree ≥ 2 in any
 term are rejected with `ORB_STATUS_INVALID`.

 # Safety
 Pointers must be valid; strings NUL-terminated.
 */
enum OrbStatus orb_star_quotient(const struct OrbOrbit *orbit,
                                 const char *f,
                                 const char *g,
                                 char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBITSTAR_H */
