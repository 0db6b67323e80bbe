/* C API for the hyperpend library.
 *
 * Every function returns a status code (HYP_STATUS_OK = 0 on success) and
 * writes results through out-pointers. Trajectory handles are opaque and
 * must be released with their _free function; strings returned by the
 * library are released with hyp_string_free.
 *
 * Kept in sync with crates/hyperpend-ffi/src/lib.rs; regenerable with
 * cbindgen using the bundled cbindgen.toml.
 */

#ifndef HYPERPEND_H
#define HYPERPEND_H

#include <stdint.h>
#include <stdlib.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. */
#define HYP_STATUS_OK 0
#define HYP_STATUS_NULL_POINTER 1
#define HYP_STATUS_INVALID_ARGUMENT 2
#define HYP_STATUS_INTEGRATION_FAILED 3
#define HYP_STATUS_NOT_IN_IMAGE 4
#define HYP_STATUS_INTERNAL 5

/* Rotation class encoding. */
#define HYP_CLASS_ELLIPTIC 0
#define HYP_CLASS_HYPERBOLIC 1
#define HYP_CLASS_PARABOLIC 2

/* Image stratum encoding (hyp_image_membership). */
#define HYP_STRATUM_INTERIOR 0
#define HYP_STRATUM_APEX_STATES 1
#define HYP_STRATUM_REST_STATES 2

/* Opaque full-space trajectory handle. */
typedef struct HypTrajectory HypTrajectory;

/* Opaque reduced-space trajectory handle. */
typedef struct HypReducedTrajectory HypReducedTrajectory;

/* Library version as a static NUL-terminated string; do not free. */
const char *hyp_version(void);

/* Integrate the constrained system. coeffs[0..len] are ascending polynomial
 * coefficients of the potential in the class's invariant coordinate (len = 0
 * for free motion); z0 points to six doubles (x1, x2, x3, y1, y2, y3). On
 * success *out owns a trajectory released with hyp_trajectory_free. */
int hyp_simulate(int class_code,
                 const double *coeffs,
                 size_t len,
                 const double *z0,
                 double dt,
                 size_t steps,
                 HypTrajectory **out);

/* Number of samples in a trajectory (steps + 1), or 0 for NULL. */
size_t hyp_trajectory_len(const HypTrajectory *traj);

/* Copy sample `index` into row: t, x1, x2, x3, y1, y2, y3, H, J, c1res,
 * c2res (11 doubles). */
int hyp_trajectory_row(const HypTrajectory *traj, size_t index, double *row);

/* Copy the four drift diagnostics: max |dH|, max |dJ|, max |c1|, max |c2|. */
int hyp_trajectory_drifts(const HypTrajectory *traj, double *out);

/* Release a trajectory handle. NULL is a no-op. */
void hyp_trajectory_free(HypTrajectory *traj);

/* Integrate the reduced system from w0 (four doubles w1..w4). */
int hyp_simulate_reduced(int class_code,
                         const double *coeffs,
                         size_t len,
                         const double *w0,
                         double dt,
                         size_t steps,
                         HypReducedTrajectory **out);

/* Number of samples in a reduced trajectory, or 0 for NULL. */
size_t hyp_reduced_trajectory_len(const HypReducedTrajectory *traj);

/* Copy sample `index` into row: t, w1, w2, w3, w4, jsq, h (7 doubles). */
int hyp_reduced_trajectory_row(const HypReducedTrajectory *traj,
                               size_t index,
                               double *row);

/* Release a reduced trajectory handle. NULL is a no-op. */
void hyp_reduced_trajectory_free(HypReducedTrajectory *traj);

/* Hilbert map: z (6 doubles) to w (4 doubles). */
int hyp_hilbert_map(int class_code, const double *z, double *w);

/* Canonical lift: w (4 doubles) to z (6 doubles); HYP_STATUS_NOT_IN_IMAGE
 * when w is not an image point. */
int hyp_lift(int class_code, const double *w, double *z);

/* Membership of w (4 doubles) in the image of the tangent bundle. Writes the
 * stratum code when `stratum` is non-NULL. */
int hyp_image_membership(int class_code, const double *w, int *stratum);

/* Classification of a linear-potential level set as a JSON string; release
 * with hyp_string_free. */
int hyp_classify_linear_json(int class_code,
                             double c,
                             double jsq,
                             double energy,
                             char **out);

/* Release a string returned by this library. NULL is a no-op. */
void hyp_string_free(char *s);

/* Run the deterministic verification harness; returns the number of failed
 * suites (0 means everything passed), or -1 on internal error. */
int hyp_verify(uint64_t seed, size_t counts);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HYPERPEND_H */
