/* C interface to the Gaussian wave packet dynamics library.
 *
 * All entry points return a gwp_status (or a handle that is NULL on failure);
 * gwp_last_error() yields a thread-local message for the most recent failure
 * on the calling thread. Handles are opaque and freed by their destroy
 * function; strings returned as char* are freed with gwp_string_free.
 */
#ifndef GWP_H
#define GWP_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gwp_status {
  GWP_OK = 0,
  GWP_ERR_CONFIG = 1,    /* bad configuration, usage, or input data */
  GWP_ERR_NUMERICAL = 2, /* numerically invalid state during a run */
  GWP_ERR_INVARIANT = 3  /* structural constraint or invariant violated */
} gwp_status;

const char* gwp_version(void);
const char* gwp_last_error(void);
void gwp_string_free(char* s);

/* ---- potential models ------------------------------------------------- */

typedef struct gwp_model gwp_model;

/* spec_json: {"type": "harmonic"|"quartic_radial"|"polynomial", ...} */
gwp_model* gwp_model_create(const char* spec_json, int dim);
void gwp_model_destroy(gwp_model* model);
int gwp_model_dim(const gwp_model* model);
gwp_status gwp_model_value(const gwp_model* model, const double* x, int dim, double* out);
gwp_status gwp_model_gradient(const gwp_model* model, const double* x, int dim, double* out);
gwp_status gwp_model_hessian(const gwp_model* model, const double* x, int dim,
                             double* out /* dim*dim, row-major */);

/* ---- simulations ------------------------------------------------------ */

typedef struct gwp_trajectory gwp_trajectory;

/* Runs the reduced dynamics described by a config document (no sweep). */
gwp_trajectory* gwp_simulate(const char* config_json);
void gwp_trajectory_destroy(gwp_trajectory* traj);
int gwp_trajectory_rows(const gwp_trajectory* traj);
int gwp_trajectory_cols(const gwp_trajectory* traj);
const char* gwp_trajectory_column_name(const gwp_trajectory* traj, int index);
gwp_status gwp_trajectory_column(const gwp_trajectory* traj, const char* name, double* out,
                                 int capacity);
gwp_status gwp_trajectory_write_csv(const gwp_trajectory* traj, const char* path);
char* gwp_trajectory_metadata(const gwp_trajectory* traj);

/* ---- command-level entry points (used by the CLI) ---------------------- */

/* Sweep-aware: writes trajectory.csv/metadata.json, or run-<hash>.* files. */
gwp_status gwp_run_simulate(const char* config_path, const char* out_dir);

/* fixture_path may be NULL for the suite default; *report_json receives the
 * report document. Returns GWP_ERR_INVARIANT when the suite fails. */
gwp_status gwp_run_check(const char* suite, const char* fixture_path, char** report_json);

/* columns: comma-separated y series; x_column may be NULL (defaults to "t"). */
gwp_status gwp_run_plot(const char* csv_path, const char* x_column, const char* columns,
                        const char* svg_path);

#ifdef __cplusplus
}
#endif

#endif /* GWP_H */
