#ifndef LAPINV_H
#define LAPINV_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// A sample at this time used a non-finite image value.
#define LAPINV_FLAG_NON_FINITE_SAMPLE (1 << 0)

// Talbot contour integrand did not decay, or overflowed.
#define LAPINV_FLAG_CONTOUR_OVERFLOW (1 << 1)

// Time precedes the declared delay.
#define LAPINV_FLAG_UNDEFINED_BEFORE_DELAY (1 << 2)

// de Hoog fell back to direct summation.
#define LAPINV_FLAG_QD_BREAKDOWN (1 << 3)

// Schapery node matrix is numerically singular.
#define LAPINV_FLAG_ILL_CONDITIONED (1 << 4)

// Weeks prefactor or Laguerre sum overflowed.
#define LAPINV_FLAG_PREFACTOR_OVERFLOW (1 << 5)

// Result code of every fallible call.
typedef enum LapinvStatus {
  LAPINV_STATUS_OK = 0,
  LAPINV_STATUS_NULL_POINTER = 1,
  LAPINV_STATUS_INVALID_ARGUMENT = 2,
  LAPINV_STATUS_INVALID_STRATEGY = 3,
  LAPINV_STATUS_BUFFER_TOO_SMALL = 4,
  LAPINV_STATUS_PLAN_MISMATCH = 5,
  LAPINV_STATUS_IMAGE_ERROR = 6,
  LAPINV_STATUS_SINGULAR = 7,
  LAPINV_STATUS_OUTSIDE_DOMAIN = 8,
  LAPINV_STATUS_PANIC = 9,
  LAPINV_STATUS_OTHER = 10,
} LapinvStatus;

typedef enum LapinvMethod {
  LAPINV_METHOD_STEHFEST = 0,
  LAPINV_METHOD_SCHAPERY = 1,
  LAPINV_METHOD_WEEKS = 2,
  LAPINV_METHOD_TALBOT = 3,
  LAPINV_METHOD_DE_HOOG = 4,
} LapinvMethod;

typedef enum LapinvStrategy {
  LAPINV_STRATEGY_PER_TIME = 0,
  LAPINV_STRATEGY_PER_LOG_CYCLE = 1,
  LAPINV_STRATEGY_GLOBAL = 2,
} LapinvStrategy;

// Opaque boundary-element model of the benchmark rectangle.
typedef struct LapinvBem LapinvBem;

// Opaque inversion plan.
typedef struct LapinvPlan LapinvPlan;

// Free parameters. NaN in `delay` or `talbot_r` means "not set".
typedef struct LapinvOptions {
  double sigma;
  double steady_state;
  double delay;
  double dehoog_tolerance;
  double dehoog_period_factor;
  double talbot_r;
} LapinvOptions;

// Image callback: writes `f̄(re + i·im)` and returns `LAPINV_STATUS_OK`.
typedef enum LapinvStatus (*LapinvImageFn)(double re,
                                           double im,
                                           void *user,
                                           double *out_re,
                                           double *out_im);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Rule-of-thumb options: σ = 0, no delay, `f_s` = 0.
struct LapinvOptions lapinv_default_options(void);

// Library version as a static NUL-terminated string.
const char *lapinv_version(void);

// Copies the calling thread's last error message into `buf` (NUL-terminated,
// truncated to `cap`). Returns the full message length without the NUL.
size_t lapinv_last_error_message(char *buf, size_t cap);

// Plans the image samples needed to invert `times` (strictly increasing).
// `options` may be null for the defaults.
enum LapinvStatus lapinv_plan_new(enum LapinvMethod method,
                                  enum LapinvStrategy strategy,
                                  size_t terms,
                                  const double *times,
                                  size_t n_times,
                                  const struct LapinvOptions *options,
                                  struct LapinvPlan **out);

// Releases a plan. Null is ignored.
void lapinv_plan_free(struct LapinvPlan *plan);

// Number of distinct image evaluations the plan needs.
enum LapinvStatus lapinv_plan_len(const struct LapinvPlan *plan, size_t *out);

// Raw sample count before deduplication.
enum LapinvStatus lapinv_plan_requested(const struct LapinvPlan *plan, size_t *out);

// Writes the Laplace parameters to evaluate; both buffers hold `cap` values.
enum LapinvStatus lapinv_plan_points(const struct LapinvPlan *plan,
                                     double *re,
                                     double *im,
                                     size_t cap);

// Inverts from image values at [`lapinv_plan_points`] (`n_values` = plan length).
// Writes one value per planned time; `out_flags` may be null.
enum LapinvStatus lapinv_plan_invert(const struct LapinvPlan *plan,
                                     const double *values_re,
                                     const double *values_im,
                                     size_t n_values,
                                     double *out_values,
                                     uint32_t *out_flags,
                                     size_t n_times);

// Plans, evaluates `image` sequentially on the calling thread, and inverts.
enum LapinvStatus lapinv_invert(enum LapinvMethod method,
                                enum LapinvStrategy strategy,
                                size_t terms,
                                const double *times,
                                size_t n_times,
                                const struct LapinvOptions *options,
                                LapinvImageFn image,
                                void *user,
                                double *out_values,
                                uint32_t *out_flags);

// Gaver-Stehfest weights `V_1..V_n` for even `n`.
enum LapinvStatus lapinv_stehfest_weights(size_t n, double *out, size_t cap);

// `K0(z)` and `K1(z)` as `[re K0, im K0, re K1, im K1]`.
enum LapinvStatus lapinv_bessel_k01(double re, double im, double *out);

// BEM model of the 3 × 2 benchmark rectangle observed at `(x, y)`.
// Boundary data carry a unit time factor; multiply by the time image.
enum LapinvStatus lapinv_bem_new(size_t n_per_unit,
                                 double diffusivity,
                                 double x,
                                 double y,
                                 struct LapinvBem **out);

// Potential and x-flux at `p` as `[re φ̄, im φ̄, re q̄x, im q̄x]`.
enum LapinvStatus lapinv_bem_eval(const struct LapinvBem *bem, double re, double im, double *out);

// Releases a BEM model. Null is ignored.
void lapinv_bem_free(struct LapinvBem *bem);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAPINV_H */
