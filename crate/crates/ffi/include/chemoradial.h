#ifndef CHEMORADIAL_H
#define CHEMORADIAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum ChemoStatus {
  CHEMO_STATUS_OK = 0,
  CHEMO_STATUS_NULL_POINTER = 1,
  CHEMO_STATUS_INVALID_UTF8 = 2,
  CHEMO_STATUS_PARSE_ERROR = 3,
  CHEMO_STATUS_UNKNOWN_KEY = 4,
  CHEMO_STATUS_VALIDATION_ERROR = 5,
  CHEMO_STATUS_RUNTIME_ERROR = 6,
  // The requested quantity does not exist (e.g. no run yet, no blow-up).
  CHEMO_STATUS_NOT_AVAILABLE = 7,
  CHEMO_STATUS_BUFFER_TOO_SMALL = 8,
  CHEMO_STATUS_PANIC = 9,
} ChemoStatus;

typedef enum ChemoOutcome {
  CHEMO_OUTCOME_NOT_RUN = 0,
  CHEMO_OUTCOME_BOUNDED = 1,
  CHEMO_OUTCOME_BLOWUP = 2,
  CHEMO_OUTCOME_INCONCLUSIVE = 3,
} ChemoOutcome;

typedef enum ChemoVerdict {
  CHEMO_VERDICT_BOUNDED_THM31 = 0,
  CHEMO_VERDICT_BOUNDED_THM33 = 1,
  CHEMO_VERDICT_BLOWUP_THM41 = 2,
  CHEMO_VERDICT_BLOWUP_THM44 = 3,
  CHEMO_VERDICT_NO_THEOREM_APPLIES = 4,
} ChemoVerdict;

// Opaque simulation handle.
typedef struct ChemoSimulation ChemoSimulation;

// One recorded frame; same columns as `timeseries.csv`.
typedef struct ChemoFrame {
  double t;
  double linf_u;
  double min_u;
  double mass_u;
  double mass_v;
  double mass_w;
  double lsigma_u;
  double profile_sup;
  double dt;
} ChemoFrame;

// Regime prediction; absent values are NaN, `condition_case` is 0 when
// none of C1-C3 holds.
typedef struct ChemoPrediction {
  enum ChemoVerdict verdict;
  int32_t condition_case;
  double kappa_bound;
  double sigma_exponent;
} ChemoPrediction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a run configuration (TOML text) and builds a simulation.
//
// # Safety
// `config_toml` must be a valid NUL-terminated string and `out` a valid
// pointer. On success `*out` owns a handle to release with
// `chemo_simulation_free`.
enum ChemoStatus chemo_simulation_new(const char *config_toml, struct ChemoSimulation **out);

// Releases a handle; null is ignored.
//
// # Safety
// `sim` must be null or a handle from `chemo_simulation_new` not yet freed.
void chemo_simulation_free(struct ChemoSimulation *sim);

// Runs the simulation to its horizon or to blow-up detection.
//
// # Safety
// `sim` must be a live handle.
enum ChemoStatus chemo_simulation_run(struct ChemoSimulation *sim);

// Writes the classification of the last run (`NotRun` before any run).
//
// # Safety
// `sim` must be a live handle and `out` a valid pointer.
enum ChemoStatus chemo_simulation_outcome(const struct ChemoSimulation *sim,
                                          enum ChemoOutcome *out);

// Writes the detection time; `NotAvailable` unless the run blew up.
//
// # Safety
// `sim` must be a live handle and `out` a valid pointer.
enum ChemoStatus chemo_simulation_t_detect(const struct ChemoSimulation *sim, double *out);

// Number of recorded frames of the last run (0 before any run).
//
// # Safety
// `sim` must be null or a live handle.
size_t chemo_simulation_frame_count(const struct ChemoSimulation *sim);

// Copies frame `index` of the last run.
//
// # Safety
// `sim` must be a live handle and `out` a valid pointer.
enum ChemoStatus chemo_simulation_frame(const struct ChemoSimulation *sim,
                                        size_t index,
                                        struct ChemoFrame *out);

// Number of radial cells.
//
// # Safety
// `sim` must be null or a live handle.
size_t chemo_simulation_cells(const struct ChemoSimulation *sim);

// Copies the density: the final state after a run, the initial data before.
//
// # Safety
// `sim` must be a live handle and `buf` must hold `len` doubles.
enum ChemoStatus chemo_simulation_density(const struct ChemoSimulation *sim,
                                          double *buf,
                                          size_t len);

// Regime prediction for the handle's parameters.
//
// # Safety
// `sim` must be a live handle and `out` a valid pointer.
enum ChemoStatus chemo_simulation_predict(const struct ChemoSimulation *sim,
                                          struct ChemoPrediction *out);

// Regime prediction straight from configuration text, without a handle.
//
// # Safety
// `config_toml` must be a valid NUL-terminated string and `out` a valid
// pointer.
enum ChemoStatus chemo_predict(const char *config_toml, struct ChemoPrediction *out);

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *chemo_last_error(void);

// Library version as a static NUL-terminated string.
const char *chemo_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHEMORADIAL_H */
