#ifndef QUATSNELL_H
#define QUATSNELL_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QsMode {
  QS_MODE_PAPER_LITERAL = 0,
  QS_MODE_DISPERSION_CONSISTENT = 1,
} QsMode;

typedef enum QsRegime {
  QS_REGIME_PROPAGATING = 0,
  QS_REGIME_TOTAL_INTERNAL_REFLECTION = 1,
  QS_REGIME_TUNNELING = 2,
} QsRegime;

typedef enum QsStatus {
  QS_STATUS_OK = 0,
  QS_STATUS_NULL_POINTER = 1,
  QS_STATUS_INVALID_ENERGY = 2,
  QS_STATUS_INVALID_ANGLE = 3,
  QS_STATUS_INVALID_POTENTIAL = 4,
  QS_STATUS_BELOW_THRESHOLD = 5,
  QS_STATUS_DOMAIN = 6,
  QS_STATUS_NO_SOLUTION = 7,
  QS_STATUS_PANIC = 99,
} QsStatus;

/**
 * Opaque scattering configuration.
 */
typedef struct QsConfig QsConfig;

typedef struct QsComplex {
  double re;
  double im;
} QsComplex;

typedef struct QsKinematics {
  double p;
  double p_y;
  double p_z;
  struct QsComplex q_z;
  struct QsComplex q_tilde_z;
  /**
   * `n²` of the complex part alone.
   */
  double n_sq;
  /**
   * `N²` of the full step.
   */
  double index_sq;
  struct QsComplex alpha;
  struct QsComplex beta;
  enum QsRegime regime;
} QsKinematics;

typedef struct QsAmplitudes {
  struct QsComplex r;
  struct QsComplex r_tilde;
  struct QsComplex t;
  struct QsComplex t_tilde;
} QsAmplitudes;

typedef struct QsQuaternion {
  double w;
  double x;
  double y;
  double z;
} QsQuaternion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a configuration. `theta` is the incidence angle in radians.
 *
 * # Safety
 * `out` must be null or valid for a pointer write.
 */
enum QsStatus qs_config_new(double energy,
                            double theta,
                            double v1,
                            double v2,
                            double v3,
                            double d_star,
                            struct QsConfig **out);

/**
 * Releases a configuration. Null is ignored.
 *
 * # Safety
 * `cfg` must be null or a handle from [`qs_config_new`] not yet freed.
 */
void qs_config_free(struct QsConfig *cfg);

/**
 * # Safety
 * `cfg` must be a live handle; `out` must be valid for writes.
 */
enum QsStatus qs_kinematics(const struct QsConfig *cfg, struct QsKinematics *out);

/**
 * # Safety
 * `cfg` must be a live handle; `out` must be valid for writes.
 */
enum QsStatus qs_amplitudes(const struct QsConfig *cfg, enum QsMode mode, struct QsAmplitudes *out);

/**
 * Main reflection amplitude `R`.
 *
 * # Safety
 * `cfg` must be a live handle; `out` must be valid for writes.
 */
enum QsStatus qs_reflection(const struct QsConfig *cfg, enum QsMode mode, struct QsComplex *out);

/**
 * Wavefunction at `(y*, z*)` in the rotated frame.
 *
 * # Safety
 * `cfg` must be a live handle; `out` must be valid for writes.
 */
enum QsStatus qs_wavefunction(const struct QsConfig *cfg,
                              enum QsMode mode,
                              double y_star,
                              double z_star,
                              struct QsQuaternion *out);

/**
 * Critical angle for `a = V1/E`, `b = |V_q|/E`.
 *
 * `*has_angle` is 1 when an angle exists, 0 when every angle transmits and
 * 2 when every angle reflects; `*out` is `NaN` in the last two cases.
 *
 * # Safety
 * `out` and `has_angle` must be valid for writes.
 */
enum QsStatus qs_critical_angle(double a, double b, double *out, int32_t *has_angle);

/**
 * Refraction angle for incidence `theta` and index `index`; returns
 * `QS_STATUS_NO_SOLUTION` beyond the critical angle.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QsStatus qs_refraction_angle(double theta, double index, double *out);

/**
 * Hamilton product `a b`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QsStatus qs_quaternion_mul(struct QsQuaternion a,
                                struct QsQuaternion b,
                                struct QsQuaternion *out);

/**
 * Static description of a status code. Never null.
 */
const char *qs_status_message(enum QsStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUATSNELL_H */
