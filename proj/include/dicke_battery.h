/* Copyright 2026 The dicke-battery Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* dicke_battery.h — C API of the collective-spin battery simulator.
 *
 * Conventions: hbar = 1; rates are expressed in units of gamma_minus and
 * energies per atom in units of omega0. Handles are opaque; every call
 * returns a db_status and writes results through out-parameters. On failure
 * db_last_error_message() returns a thread-local description of the most
 * recent error raised on the calling thread.
 *
 * All functions are thread-safe as long as each handle is used by one
 * thread at a time; distinct handles never share mutable state.
 */

#ifndef DICKE_BATTERY_H
#define DICKE_BATTERY_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum db_status {
    DB_OK = 0,
    DB_ERR_INVALID_ARGUMENT = 1,
    DB_ERR_DEGENERATE_ANGLE = 2,
    DB_ERR_RANGE = 3,
    DB_ERR_DIMENSION_MISMATCH = 4,
    DB_ERR_STEP_UNDERFLOW = 5,
    DB_ERR_POSITIVITY = 6,
    DB_ERR_BRACKET = 7,
    DB_ERR_IO = 8,
    DB_ERR_INTERNAL = 9
} db_status;

const char* db_status_name(db_status status);
const char* db_last_error_message(void);
const char* db_version(void);

/* ------------------------------ model ------------------------------ */

typedef struct db_params {
    int n_atoms;
    double omega0;      /* reporting scale only */
    double delta;       /* detuning omega0 - omega_pump */
    double rabi;        /* drive Rabi frequency, >= 0 */
    double gamma0;      /* decay rate at the pump frequency */
    double gamma_plus;  /* decay rate at omega_pump + omega_p */
    double gamma_minus; /* decay rate at omega_pump - omega_p; rate unit */
} db_params;

void db_params_init(db_params* p);

typedef struct db_derived {
    double omega_p;   /* sqrt(delta^2 + rabi^2) */
    double theta;     /* atan2(rabi, delta), in (0, pi) */
    double ratio_r;   /* gamma_plus / gamma_minus */
    double x;         /* ratio_r * cot^4(theta/2) */
    double gamma_eff; /* gamma_plus cos^4(theta/2) - gamma_minus sin^4(theta/2) */
    double phi0;      /* atanh(cos theta) */
} db_derived;

db_status db_derive(const db_params* p, db_derived* out);

/* Opaque model: parameters plus precomputed operators and basis rotation. */
typedef struct db_model db_model;

db_status db_model_create(const db_params* p, db_model** out);
void db_model_free(db_model* m);
int db_model_dim(const db_model* m); /* n_atoms + 1, or 0 on null */
db_status db_model_derived(const db_model* m, db_derived* out);

/* --------------------- steady state and ergotropy ------------------ */

typedef struct db_ergotropy_report {
    double energy_ss;                 /* Tr(rho_ss H0), units omega0 */
    double passive_energy;            /* units omega0 */
    double ergotropy_total;           /* units omega0 */
    double ergotropy_per_atom;        /* units omega0 */
    double ergotropy_per_atom_closed; /* geometric-series closed form */
    double x;
    double theta;
    double r;
} db_ergotropy_report;

db_status db_steady_report(const db_model* m, db_ergotropy_report* out);

/* Populations over m ascending; len must be at least n_atoms + 1. */
db_status db_steady_populations(const db_model* m, double* out, int len);
db_status db_steady_populations_xn(int n_atoms, double x, double* out, int len);

db_status db_ergotropy_asymptotic(double x, double theta, double r,
                                  double* out);

/* ------------------------ analytic charging ------------------------ */

db_status db_energy_analytic(const db_model* m, double t, double* out);
db_status db_energy_lower_bound(double tau, double theta, double* out);
db_status db_tau90(double theta, double* out);

/* branch: 0 selects the gamma_eff >= 0 (x > 1) branch, nonzero the x < 1
 * mirror. Outputs may be NULL when not wanted. */
db_status db_power_bound(double r, double theta, int x_below_one_branch,
                         double* charge_fraction, double* bound,
                         double* tau90_out);

db_status db_analytic_power(const db_model* m, double t, double* out);

/* <J+> of the charged steady state; imaginary part vanishes for the
 * diagonal steady state. */
db_status db_initial_coherence(const db_model* m, double* re, double* im);

/* --------------------------- trajectories -------------------------- */

typedef struct db_integrator_config {
    double rel_tol;  /* default 1e-8 */
    double abs_tol;  /* default 1e-10 */
    double max_step; /* <= 0: unbounded; the step itself for fixed RK4 */
    int fixed_rk4;   /* 0: adaptive embedded RK45, 1: fixed-step RK4 */
} db_integrator_config;

void db_integrator_config_init(db_integrator_config* cfg);

typedef enum db_generator {
    DB_GENERATOR_SECULAR = 0, /* dressed-frame secular master equation */
    DB_GENERATOR_FULL = 1     /* full collective-decay master equation */
} db_generator;

typedef enum db_frame {
    DB_FRAME_DRIVE_OFF = 0, /* pump removed during emission */
    DB_FRAME_DRIVEN = 1     /* drive kept on */
} db_frame;

typedef struct db_trajectory db_trajectory;

/* Charging from the uncharged battery. sample_every <= 0 picks a default
 * cadence. */
db_status db_charge_run(const db_model* m, db_generator generator,
                        double t_end, double sample_every,
                        const db_integrator_config* cfg, db_trajectory** out);

/* Collective emission from the charged steady state at rate gamma0. */
db_status db_discharge_run(const db_model* m, db_frame frame, double t_end,
                           double sample_every,
                           const db_integrator_config* cfg,
                           db_trajectory** out);

void db_trajectory_free(db_trajectory* t);
long db_trajectory_size(const db_trajectory* t);

typedef struct db_sample {
    double t;
    double energy_per_atom; /* battery charge per atom, units omega0 */
    double re_jp, im_jp;    /* <J+> in the bare frame */
    double energy_variance; /* units omega0^2 */
    double trace_error;
    double min_eigval;
    double coherent_power;  /* gamma0 |<J+>|^2; 0 for charge runs */
    double coherent_energy; /* cumulative, units omega0; 0 for charge runs */
} db_sample;

db_status db_trajectory_sample(const db_trajectory* t, long i, db_sample* out);
db_status db_trajectory_stats(const db_trajectory* t, double* max_trace_error,
                              double* max_hermiticity_error,
                              double* min_eigenvalue);
db_status db_discharge_summary(const db_trajectory* t,
                               double* stored_energy_initial,
                               double* coherent_fraction);
db_status db_trajectory_write_csv(const db_trajectory* t, const char* path);

/* ----------------------------- scenarios --------------------------- */

/* Batch entry point used by the command-line front end. Lists may be NULL
 * with length 0. The scenario writes its CSV output(s) plus a JSON run
 * summary at "<out_path>.summary.json". */
typedef struct db_scenario_spec {
    const char* scenario; /* fig1|fig2|fig3|fig4|steady|charge|discharge|sweep */
    db_params params;
    db_integrator_config integrator;
    double t_end;       /* <= 0: scenario default */
    double sample_every;/* <= 0: scenario default */
    const char* out_path; /* NULL: "<scenario>.csv" */
    db_frame frame;
    db_generator generator;
    int has_theta;
    double theta;
    int has_x;
    double x;
    const int* n_list;
    int n_list_len;
    const double* r_list;
    int r_list_len;
    double theta_min, theta_max;
    int theta_steps;
    int threads;          /* <= 0: hardware concurrency */
    double rabi_per_atom; /* <= 0: default 40 */
} db_scenario_spec;

void db_scenario_spec_init(db_scenario_spec* spec);

typedef struct db_run_summary {
    double wall_time_s;
    double max_trace_error;
    double max_hermiticity_error;
    double min_eigenvalue;
    int grid_points;
    int failed_points;
} db_run_summary;

db_status db_scenario_run(const db_scenario_spec* spec, db_run_summary* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DICKE_BATTERY_H */
