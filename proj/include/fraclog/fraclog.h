#ifndef FRACLOG_FRACLOG_H
#define FRACLOG_FRACLOG_H

/*
 * C interface to the fraclog library: Caputo-fractional cubic population
 * models, their equilibria and stability, and fractional Adams integration.
 *
 * Every fallible call returns a fraclog_status. On failure the output
 * arguments are left untouched and fraclog_last_error() describes the
 * problem; the message is per thread and valid until the next failing call
 * on that thread. Handles are opaque, owned by the caller, and released
 * with the matching *_free function (which accepts NULL).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(FRACLOG_BUILDING)
#define FRACLOG_API __declspec(dllexport)
#else
#define FRACLOG_API __declspec(dllimport)
#endif
#else
#define FRACLOG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fraclog_status {
  FRACLOG_OK = 0,
  FRACLOG_ERR_INVALID_ARGUMENT = 1, /* domain or invariant violation */
  FRACLOG_ERR_DEGENERATE = 2,       /* a = b = c = 0 */
  FRACLOG_ERR_PRECONDITION = 3,     /* e.g. no reference solution for an order study */
  FRACLOG_ERR_BLOWUP = 4,           /* |u_j| exceeded 1e12 */
  FRACLOG_ERR_NUMERICAL = 5,        /* overflow, series accuracy loss */
  FRACLOG_ERR_IO = 6,
  FRACLOG_ERR_INTERNAL = 7
} fraclog_status;

typedef enum fraclog_method { FRACLOG_METHOD_EULER = 0, FRACLOG_METHOD_ADAMS = 1 } fraclog_method;

typedef enum fraclog_stability {
  FRACLOG_UNSTABLE = 0,
  FRACLOG_ASYMPTOTICALLY_STABLE = 1,
  FRACLOG_INCONCLUSIVE = 2
} fraclog_stability;

typedef struct fraclog_equilibrium {
  double x_eq;
  double lambda;
  fraclog_stability classification;
  int multiplicity;
} fraclog_equilibrium;

typedef struct fraclog_model fraclog_model;
typedef struct fraclog_trajectory fraclog_trajectory;
typedef struct fraclog_equilibria fraclog_equilibria;
typedef struct fraclog_convergence fraclog_convergence;

FRACLOG_API const char* fraclog_version(void);
FRACLOG_API const char* fraclog_last_error(void);
FRACLOG_API const char* fraclog_status_string(fraclog_status status);
FRACLOG_API const char* fraclog_stability_tag(fraclog_stability s); /* "U", "AS", "INCONCLUSIVE" */

/* Special functions. */
FRACLOG_API fraclog_status fraclog_gamma(double t, double* out);
FRACLOG_API fraclog_status fraclog_mittag_leffler(double alpha, double z, double* out);

/* Models. */
FRACLOG_API fraclog_status fraclog_model_cubic(double a, double b, double c, fraclog_model** out);
FRACLOG_API fraclog_status fraclog_model_logistic(double r, double K, fraclog_model** out);
FRACLOG_API fraclog_status fraclog_model_logistic_harvest(double r, double K, double E, fraclog_model** out);
FRACLOG_API fraclog_status fraclog_model_allee(double r, double K, double m, fraclog_model** out);
FRACLOG_API fraclog_status fraclog_model_allee_harvest(double r, double K, double m, double E,
                                                       fraclog_model** out);
FRACLOG_API void fraclog_model_free(fraclog_model* model);
FRACLOG_API const char* fraclog_model_name(const fraclog_model* model);
FRACLOG_API fraclog_status fraclog_model_coefficients(const fraclog_model* model, double* a, double* b,
                                                      double* c);
FRACLOG_API fraclog_status fraclog_model_rhs(const fraclog_model* model, double x, double* out);
FRACLOG_API fraclog_status fraclog_model_default_h_state(const fraclog_model* model, double x0, double* out);

/* Existence bound N^alpha > 3|a|h^2 + 2|b|h + |c|. */
FRACLOG_API fraclog_status fraclog_existence_bound(const fraclog_model* model, double h_state, double alpha,
                                                   double* rhs_bound, double* n_min);

/* Integration. On FRACLOG_ERR_BLOWUP, *blowup_index (if non-NULL) receives the
 * first offending step. */
FRACLOG_API fraclog_status fraclog_solve(const fraclog_model* model, double alpha, double x0, double t_final,
                                         int64_t n_steps, fraclog_method method, fraclog_trajectory** out,
                                         int64_t* blowup_index);
/* Grid size used when none is given (see solver::default_n_steps). */
FRACLOG_API fraclog_status fraclog_default_n_steps(const fraclog_model* model, double alpha, double x0,
                                                   double t_final, int64_t* out);
FRACLOG_API void fraclog_trajectory_free(fraclog_trajectory* traj);
FRACLOG_API size_t fraclog_trajectory_length(const fraclog_trajectory* traj);
FRACLOG_API const double* fraclog_trajectory_times(const fraclog_trajectory* traj);
FRACLOG_API const double* fraclog_trajectory_values(const fraclog_trajectory* traj);
FRACLOG_API fraclog_status fraclog_trajectory_write_csv(const fraclog_trajectory* traj, const char* path);

/* Equilibria and their classification. */
FRACLOG_API fraclog_status fraclog_classify_all(const fraclog_model* model, double alpha,
                                                fraclog_equilibria** out);
FRACLOG_API void fraclog_equilibria_free(fraclog_equilibria* eq);
FRACLOG_API size_t fraclog_equilibria_count(const fraclog_equilibria* eq);
FRACLOG_API fraclog_status fraclog_equilibria_get(const fraclog_equilibria* eq, size_t index,
                                                  fraclog_equilibrium* out);
FRACLOG_API fraclog_status fraclog_harvest_threshold(double r, double K, double m, double* out);
FRACLOG_API fraclog_status fraclog_logistic_harvest_equilibrium(double r, double K, double E, double* out);

/* Empirical order of convergence on grids base_steps * 2^k, k = 0..refinements. */
FRACLOG_API fraclog_status fraclog_convergence_study(const fraclog_model* model, double alpha, double x0,
                                                     double t_final, fraclog_method method, int64_t base_steps,
                                                     int refinements, fraclog_convergence** out);
FRACLOG_API void fraclog_convergence_free(fraclog_convergence* study);
FRACLOG_API size_t fraclog_convergence_levels(const fraclog_convergence* study);
FRACLOG_API fraclog_status fraclog_convergence_level(const fraclog_convergence* study, size_t index,
                                                     int64_t* n_steps, double* step, double* error);
FRACLOG_API double fraclog_convergence_order(const fraclog_convergence* study);

#ifdef __cplusplus
}
#endif

#endif /* FRACLOG_FRACLOG_H */
