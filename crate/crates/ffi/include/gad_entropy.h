#ifndef GAD_ENTROPY_H
#define GAD_ENTROPY_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum GadStatus {
  GAD_STATUS_OK = 0,
  GAD_STATUS_NULL_POINTER = 1,
  GAD_STATUS_NOT_HERMITIAN = 2,
  GAD_STATUS_TRACE_DEVIATION = 3,
  GAD_STATUS_NEGATIVE_EIGENVALUE = 4,
  GAD_STATUS_PARAMETER_OUT_OF_RANGE = 5,
  GAD_STATUS_ANGLE_OUT_OF_RANGE = 6,
  GAD_STATUS_COHERENCE_OUT_OF_RANGE = 7,
  GAD_STATUS_STEP_SIZE_INVALID = 8,
  GAD_STATUS_MISMATCHED_TEMPERATURE = 9,
  GAD_STATUS_REFERENCE_NOT_DIAGONAL = 10,
  GAD_STATUS_INDETERMINATE = 11,
  GAD_STATUS_CONSISTENCY_VIOLATION = 12,
  GAD_STATUS_INVALID_RECORD = 13,
  GAD_STATUS_PANIC = 99,
} GadStatus;

// Opaque generalized amplitude damping channel.
typedef struct GadChannelHandle GadChannelHandle;

// Opaque qubit density matrix.
typedef struct GadState GadState;

typedef struct GadComplex {
  double re;
  double im;
} GadComplex;

// Entropy budget in nats. A divergent production is `+INFINITY`.
typedef struct GadBudget {
  double total;
  double population;
  double coherence;
} GadBudget;

// Bootstrap standard errors of a reconstructed state.
typedef struct GadElementErrors {
  double rho00;
  double rho11;
  double re_rho01;
  double im_rho01;
} GadElementErrors;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never null.
const char *gad_status_message(enum GadStatus status);

// Message of the last failure on this thread, or null if none. Valid until
// the next failing call on the same thread.
const char *gad_last_error_message(void);

// Validates a row-major 2x2 complex matrix and wraps it as a state.
enum GadStatus gad_state_new(const struct GadComplex *elements, struct GadState **out);

enum GadStatus gad_state_from_bloch(double x, double y, double z, struct GadState **out);

// Wave-plate preparation at angle `alpha` (radians, `[0, pi/4]`).
enum GadStatus gad_state_prepare(double alpha, bool dephased, struct GadState **out);

void gad_state_free(struct GadState *state);

enum GadStatus gad_state_elements(const struct GadState *state, struct GadComplex *out);

enum GadStatus gad_von_neumann_entropy(const struct GadState *state, double *out);

// `D(rho || sigma)` in nats; `+INFINITY` when the support condition fails.
enum GadStatus gad_relative_entropy(const struct GadState *rho,
                                    const struct GadState *sigma,
                                    double *out);

enum GadStatus gad_l1_coherence(const struct GadState *state, double *out);

enum GadStatus gad_rel_entropy_coherence(const struct GadState *state, double *out);

enum GadStatus gad_fidelity(const struct GadState *a, const struct GadState *b, double *out);

enum GadStatus gad_dephase(const struct GadState *state, struct GadState **out);

enum GadStatus gad_channel_new(double p, double r, struct GadChannelHandle **out);

void gad_channel_free(struct GadChannelHandle *ch);

enum GadStatus gad_channel_apply(const struct GadChannelHandle *ch,
                                 const struct GadState *state,
                                 struct GadState **out);

enum GadStatus gad_channel_equilibrium(const struct GadChannelHandle *ch, struct GadState **out);

// Writes the four Kraus operators, each row-major, into `out[16]`.
enum GadStatus gad_channel_kraus(const struct GadChannelHandle *ch, struct GadComplex *out);

// Entropy production of `state` through `ch`, relative to the channel's
// equilibrium state.
enum GadStatus gad_budget(const struct GadState *state,
                          const struct GadChannelHandle *ch,
                          struct GadBudget *out);

enum GadStatus gad_p_from_temperature(double omega_s,
                                      double temperature,
                                      double gamma0,
                                      double *out);

enum GadStatus gad_r_from_time(double omega_s,
                               double temperature,
                               double gamma0,
                               double t,
                               double *out);

// Integrates the master equation up to `t`. A non-positive `dt` selects the
// default step.
enum GadStatus gad_evolve(double omega_s,
                          double temperature,
                          double gamma0,
                          const struct GadState *initial,
                          double t,
                          double dt,
                          struct GadState **out);

// Simulates four-basis tomography of `state` and reconstructs it.
// `errors` may be null.
enum GadStatus gad_tomography_reconstruct(const struct GadState *state,
                                          uint64_t shots_per_basis,
                                          uint64_t seed,
                                          size_t n_bootstrap,
                                          struct GadState **out,
                                          struct GadElementErrors *errors);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAD_ENTROPY_H */
