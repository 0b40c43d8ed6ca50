#ifndef LAGWAVE_H
#define LAGWAVE_H

/* Generated by cbindgen from the lagwave-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum LwfStatus {
  /**
   * Success.
   */
  LwfStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  LwfStatus_NullPointer = 1,
  /**
   * A parameter violated its domain constraint.
   */
  LwfStatus_InvalidArgument = 2,
  /**
   * A point lay outside the required region (half-plane, disc, ...).
   */
  LwfStatus_DomainError = 3,
  /**
   * An iterative procedure failed to converge or coverage could not be
   * certified.
   */
  LwfStatus_ConvergenceFailure = 4,
  /**
   * The caller-provided buffer is too small; the required size is
   * reported through the out-parameter.
   */
  LwfStatus_BufferTooSmall = 5,
  /**
   * The library panicked; this indicates a bug.
   */
  LwfStatus_Internal = 6,
} LwfStatus;

/**
 * Evaluation context: caches quadrature rules across calls.
 */
typedef struct LwfContext LwfContext;

/**
 * Quadrature rule handle (generalized Gauss-Laguerre).
 */
typedef struct LwfRule LwfRule;

/**
 * Spectral signal handle: finite orthonormal Laguerre expansion.
 */
typedef struct LwfSignal LwfSignal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string of the library (static storage, do not free).
 */
const char *lwf_version(void);

/**
 * Creates an evaluation context. Free with `lwf_context_free`.
 */
enum LwfStatus lwf_context_new(struct LwfContext **out);

/**
 * Frees a context created by `lwf_context_new`. Null is a no-op.
 */
void lwf_context_free(struct LwfContext *ctx);

/**
 * Gamma function on the real line.
 */
enum LwfStatus lwf_gamma(double x, double *out);

/**
 * Generalized Laguerre polynomial L_n^alpha(x).
 */
enum LwfStatus lwf_laguerre_polynomial(uint32_t n, double alpha, double x, double *out);

/**
 * Laguerre function l_n^alpha(x).
 */
enum LwfStatus lwf_laguerre_function(uint32_t n, double alpha, double x, double *out);

/**
 * Time-domain analyzing wavelet (series route).
 */
enum LwfStatus lwf_analyzing_wavelet(uint32_t n,
                                     double alpha,
                                     double t,
                                     double *out_re,
                                     double *out_im);

/**
 * Analyzing wavelet through the disc factorization (the independent
 * second route).
 */
enum LwfStatus lwf_analyzing_wavelet_disc_route(uint32_t n,
                                                double alpha,
                                                double t,
                                                double *out_re,
                                                double *out_im);

/**
 * Circular Jacobi polynomial g_n^alpha(z).
 */
enum LwfStatus lwf_circular_jacobi(uint32_t n,
                                   double alpha,
                                   double z_re,
                                   double z_im,
                                   double *out_re,
                                   double *out_im);

/**
 * Analytic window (1/(t+i))^{alpha+1}.
 */
enum LwfStatus lwf_paul_wavelet(double alpha, double t, double *out_re, double *out_im);

/**
 * Admissibility constant of the analyzing wavelet (requires alpha > 0).
 */
enum LwfStatus lwf_admissibility_constant(uint32_t n, double alpha, double *out);

/**
 * Sufficient-density thresholds: disc density n + alpha/2 and lattice
 * bound 4 pi / (2n + alpha) (infinity when 2n + alpha <= 0).
 */
enum LwfStatus lwf_density_thresholds(uint32_t n,
                                      double alpha,
                                      double *out_disc,
                                      double *out_lattice);

/**
 * Finite-radius lower-density estimate of the lattice {a^j (b k + i)},
 * probed on a five-point central grid with auto-extended coverage.
 */
enum LwfStatus lwf_lattice_density(double a, double b, double r, double *out);

/**
 * Builds an m-point generalized Gauss-Laguerre rule for the weight
 * x^beta e^{-x}. Free with `lwf_rule_free`.
 */
enum LwfStatus lwf_rule_new(uint32_t order, double beta, struct LwfRule **out);

/**
 * Frees a rule handle. Null is a no-op.
 */
void lwf_rule_free(struct LwfRule *rule);

/**
 * Number of nodes of the rule.
 */
enum LwfStatus lwf_rule_order(const struct LwfRule *rule, uint32_t *out);

/**
 * Copies nodes and weights into caller buffers of capacity `capacity`.
 * On `BufferTooSmall` the required capacity is left in `written`.
 */
enum LwfStatus lwf_rule_nodes_weights(const struct LwfRule *rule,
                                      double *nodes,
                                      double *weights,
                                      size_t capacity,
                                      size_t *written);

/**
 * Integrates `x^beta e^{-x} f(x)` with the rule: `f` receives each node
 * plus the opaque `ctx` pointer.
 */
enum LwfStatus lwf_rule_integrate(const struct LwfRule *rule,
                                  double (*f)(double, void*),
                                  void *ctx,
                                  double *out);

/**
 * Creates a spectral signal from coefficient arrays of length `len`
 * (imaginary parts may be null for a real signal). Free with
 * `lwf_signal_free`.
 */
enum LwfStatus lwf_signal_new(double basis_alpha,
                              const double *coeffs_re,
                              const double *coeffs_im,
                              size_t len,
                              struct LwfSignal **out);

/**
 * Frees a signal handle. Null is a no-op.
 */
void lwf_signal_free(struct LwfSignal *signal);

/**
 * Squared norm of the signal.
 */
enum LwfStatus lwf_signal_norm_sq(const struct LwfSignal *signal, double *out);

/**
 * Wavelet coefficient of the signal against the analyzing wavelet of
 * order (n, alpha) at translation x, scale s.
 */
enum LwfStatus lwf_wavelet_coefficient(struct LwfContext *ctx,
                                       const struct LwfSignal *signal,
                                       uint32_t n,
                                       double alpha,
                                       double x,
                                       double s,
                                       double *out_re,
                                       double *out_im);

/**
 * Bergman transform of the signal at z = z_re + i z_im (requires
 * z_im > 0).
 */
enum LwfStatus lwf_bergman_transform(struct LwfContext *ctx,
                                     const struct LwfSignal *signal,
                                     double alpha,
                                     double z_re,
                                     double z_im,
                                     double *out_re,
                                     double *out_im);

/**
 * Frame-bound estimation for the lattice {a^j (b k + i)}; the report is
 * written as NUL-terminated JSON into `buf`. On `BufferTooSmall` the
 * required capacity (including the NUL) is left in `written`.
 */
enum LwfStatus lwf_frame_bounds_json(uint32_t n,
                                     double alpha,
                                     double a,
                                     double b,
                                     int32_t j_min,
                                     int32_t j_max,
                                     int32_t k_min,
                                     int32_t k_max,
                                     uint32_t basis_size,
                                     uint32_t quadrature_order,
                                     bool auto_extend,
                                     char *buf,
                                     size_t capacity,
                                     size_t *written);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAGWAVE_H */
