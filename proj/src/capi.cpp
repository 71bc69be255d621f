// Copyright 2026 The dicke-battery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// capi.cpp — extern "C" shell around the C++ core. Exceptions are caught at
// the boundary and mapped to status codes; the message of the most recent
// failure is kept per thread.

#include "dicke_battery.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "dicke/charging_curve.hpp"
#include "dicke/discharge.hpp"
#include "dicke/errors.hpp"
#include "dicke/lindblad.hpp"
#include "dicke/scenario.hpp"
#include "dicke/steady_state.hpp"

namespace {

thread_local std::string g_last_error;

db_status code_to_status(dicke::ErrorCode code) {
    using dicke::ErrorCode;
    switch (code) {
        case ErrorCode::invalid_argument: return DB_ERR_INVALID_ARGUMENT;
        case ErrorCode::degenerate_angle: return DB_ERR_DEGENERATE_ANGLE;
        case ErrorCode::range: return DB_ERR_RANGE;
        case ErrorCode::dimension_mismatch: return DB_ERR_DIMENSION_MISMATCH;
        case ErrorCode::step_underflow: return DB_ERR_STEP_UNDERFLOW;
        case ErrorCode::positivity: return DB_ERR_POSITIVITY;
        case ErrorCode::bracket: return DB_ERR_BRACKET;
        case ErrorCode::io: return DB_ERR_IO;
        case ErrorCode::internal: return DB_ERR_INTERNAL;
    }
    return DB_ERR_INTERNAL;
}

template <typename Fn>
db_status guarded(Fn&& fn) {
    try {
        fn();
        return DB_OK;
    } catch (const dicke::Error& e) {
        g_last_error = e.what();
        return code_to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DB_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return DB_ERR_INTERNAL;
    }
}

db_status invalid(const char* msg) {
    g_last_error = msg;
    return DB_ERR_INVALID_ARGUMENT;
}

dicke::ModelParams to_params(const db_params& p) {
    dicke::ModelParams mp;
    mp.n_atoms = p.n_atoms;
    mp.omega0 = p.omega0;
    mp.delta = p.delta;
    mp.rabi = p.rabi;
    mp.gamma0 = p.gamma0;
    mp.gamma_plus = p.gamma_plus;
    mp.gamma_minus = p.gamma_minus;
    return mp;
}

db_derived to_c(const dicke::DerivedParams& d) {
    return db_derived{d.omega_p, d.theta, d.ratio_r, d.x, d.gamma_eff, d.phi0};
}

dicke::IntegratorConfig to_config(const db_integrator_config* cfg) {
    dicke::IntegratorConfig c;
    if (cfg) {
        c.rel_tol = cfg->rel_tol;
        c.abs_tol = cfg->abs_tol;
        c.max_step = cfg->max_step;
        c.scheme = cfg->fixed_rk4 ? dicke::Scheme::rk4_fixed
                                  : dicke::Scheme::rk45_adaptive;
    }
    return c;
}

} // namespace

struct db_model {
    dicke::ModelParams params;
    dicke::DerivedParams derived;
    dicke::SpinOperators ops;
    dicke::RotationMatrix rot;
};

struct db_trajectory {
    dicke::Trajectory traj;
    std::vector<double> coherent_power;  // empty for charge runs
    std::vector<double> coherent_energy;
    double stored_energy_initial = 0.0;
    double coherent_fraction = 0.0;
    bool is_discharge = false;
};

extern "C" {

const char* db_status_name(db_status status) {
    switch (status) {
        case DB_OK: return "ok";
        case DB_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case DB_ERR_DEGENERATE_ANGLE: return "degenerate_angle";
        case DB_ERR_RANGE: return "range";
        case DB_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
        case DB_ERR_STEP_UNDERFLOW: return "step_underflow";
        case DB_ERR_POSITIVITY: return "positivity";
        case DB_ERR_BRACKET: return "bracket";
        case DB_ERR_IO: return "io";
        case DB_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* db_last_error_message(void) { return g_last_error.c_str(); }

const char* db_version(void) { return "1.0.0"; }

void db_params_init(db_params* p) {
    if (!p) return;
    p->n_atoms = 1;
    p->omega0 = 1.0;
    p->delta = 0.0;
    p->rabi = 0.0;
    p->gamma0 = 1.0;
    p->gamma_plus = 1.0;
    p->gamma_minus = 1.0;
}

db_status db_derive(const db_params* p, db_derived* out) {
    if (!p || !out) return invalid("db_derive: null argument");
    return guarded([&] { *out = to_c(dicke::derive(to_params(*p))); });
}

db_status db_model_create(const db_params* p, db_model** out) {
    if (!p || !out) return invalid("db_model_create: null argument");
    *out = nullptr;
    return guarded([&] {
        auto m = std::make_unique<db_model>();
        m->params = to_params(*p);
        m->derived = dicke::derive(m->params);
        m->ops = dicke::build_spin_operators(m->params.n_atoms);
        m->rot = dicke::rotation_matrix(m->ops, m->derived.theta);
        *out = m.release();
    });
}

void db_model_free(db_model* m) { delete m; }

int db_model_dim(const db_model* m) { return m ? m->ops.dim : 0; }

db_status db_model_derived(const db_model* m, db_derived* out) {
    if (!m || !out) return invalid("db_model_derived: null argument");
    *out = to_c(m->derived);
    return DB_OK;
}

db_status db_steady_report(const db_model* m, db_ergotropy_report* out) {
    if (!m || !out) return invalid("db_steady_report: null argument");
    return guarded([&] {
        const dicke::ErgotropyReport rep = dicke::ergotropy_exact(
            m->params.n_atoms, m->derived.x, m->derived.theta);
        out->energy_ss = rep.energy_ss;
        out->passive_energy = rep.passive_energy;
        out->ergotropy_total = rep.ergotropy;
        out->ergotropy_per_atom = rep.ergotropy_per_atom;
        out->ergotropy_per_atom_closed = rep.ergotropy_per_atom_closed;
        out->x = rep.x;
        out->theta = rep.theta;
        out->r = rep.r;
    });
}

db_status db_steady_populations(const db_model* m, double* out, int len) {
    if (!m || !out) return invalid("db_steady_populations: null argument");
    return db_steady_populations_xn(m->params.n_atoms, m->derived.x, out, len);
}

db_status db_steady_populations_xn(int n_atoms, double x, double* out,
                                   int len) {
    if (!out) return invalid("db_steady_populations_xn: null output");
    if (len < n_atoms + 1) {
        return invalid("db_steady_populations_xn: buffer too small");
    }
    return guarded([&] {
        const std::vector<double> p = dicke::steady_populations(n_atoms, x);
        std::memcpy(out, p.data(), p.size() * sizeof(double));
    });
}

db_status db_ergotropy_asymptotic(double x, double theta, double r,
                                  double* out) {
    if (!out) return invalid("db_ergotropy_asymptotic: null output");
    return guarded([&] { *out = dicke::ergotropy_asymptotic(x, theta, r); });
}

db_status db_energy_analytic(const db_model* m, double t, double* out) {
    if (!m || !out) return invalid("db_energy_analytic: null argument");
    return guarded([&] {
        *out = dicke::energy_analytic(t, m->params.n_atoms, m->derived);
    });
}

db_status db_energy_lower_bound(double tau, double theta, double* out) {
    if (!out) return invalid("db_energy_lower_bound: null output");
    return guarded([&] { *out = dicke::energy_lower_bound(tau, theta); });
}

db_status db_tau90(double theta, double* out) {
    if (!out) return invalid("db_tau90: null output");
    return guarded([&] { *out = dicke::tau90(theta); });
}

db_status db_power_bound(double r, double theta, int x_below_one_branch,
                         double* charge_fraction, double* bound,
                         double* tau90_out) {
    return guarded([&] {
        const dicke::PowerBoundPoint pt = dicke::power_bound_point(
            r, theta,
            x_below_one_branch ? dicke::PowerBranch::x_below_one
                               : dicke::PowerBranch::x_above_one);
        if (charge_fraction) *charge_fraction = pt.charge_fraction;
        if (bound) *bound = pt.bound;
        if (tau90_out) *tau90_out = pt.tau90;
    });
}

db_status db_analytic_power(const db_model* m, double t, double* out) {
    if (!m || !out) return invalid("db_analytic_power: null argument");
    return guarded([&] {
        *out = dicke::analytic_power(t, m->params.n_atoms, m->derived);
    });
}

db_status db_initial_coherence(const db_model* m, double* re, double* im) {
    if (!m) return invalid("db_initial_coherence: null model");
    return guarded([&] {
        const std::vector<double> pops =
            dicke::steady_populations(m->params.n_atoms, m->derived.x);
        dicke::Matrix diag = dicke::Matrix::Zero(m->ops.dim, m->ops.dim);
        for (int i = 0; i < m->ops.dim; ++i) diag(i, i) = pops[i];
        const dicke::DensityMatrix rho{dicke::Basis::dressed, std::move(diag)};
        const dicke::Complex c =
            dicke::initial_coherence(rho, m->derived, m->ops);
        if (re) *re = c.real();
        if (im) *im = c.imag();
    });
}

void db_integrator_config_init(db_integrator_config* cfg) {
    if (!cfg) return;
    cfg->rel_tol = 1e-8;
    cfg->abs_tol = 1e-10;
    cfg->max_step = 0.0;
    cfg->fixed_rk4 = 0;
}

db_status db_charge_run(const db_model* m, db_generator generator,
                        double t_end, double sample_every,
                        const db_integrator_config* cfg, db_trajectory** out) {
    if (!m || !out) return invalid("db_charge_run: null argument");
    *out = nullptr;
    return guarded([&] {
        auto t = std::make_unique<db_trajectory>();
        if (sample_every <= 0.0) sample_every = t_end / 400.0;
        const dicke::GeneratorKind kind = (generator == DB_GENERATOR_SECULAR)
            ? dicke::GeneratorKind::secular
            : dicke::GeneratorKind::full;
        t->traj = dicke::run_charge(m->params, kind, t_end, sample_every,
                                    to_config(cfg), false)
                      .trajectory;
        *out = t.release();
    });
}

db_status db_discharge_run(const db_model* m, db_frame frame, double t_end,
                           double sample_every,
                           const db_integrator_config* cfg,
                           db_trajectory** out) {
    if (!m || !out) return invalid("db_discharge_run: null argument");
    *out = nullptr;
    return guarded([&] {
        auto t = std::make_unique<db_trajectory>();
        const dicke::DensityMatrix rho0 =
            dicke::steady_state_bare(m->params, m->derived, m->ops, m->rot);
        const dicke::DischargeResult res = dicke::run_discharge(
            rho0, m->params,
            frame == DB_FRAME_DRIVEN ? dicke::DischargeFrame::driven
                                     : dicke::DischargeFrame::drive_off,
            t_end, to_config(cfg), sample_every);
        t->traj = res.trajectory;
        t->coherent_power = res.coherent_power;
        t->coherent_energy = res.coherent_energy;
        t->stored_energy_initial = res.stored_energy_initial;
        t->coherent_fraction = res.coherent_fraction;
        t->is_discharge = true;
        *out = t.release();
    });
}

void db_trajectory_free(db_trajectory* t) { delete t; }

long db_trajectory_size(const db_trajectory* t) {
    return t ? static_cast<long>(t->traj.observables.size()) : 0;
}

db_status db_trajectory_sample(const db_trajectory* t, long i,
                               db_sample* out) {
    if (!t || !out) return invalid("db_trajectory_sample: null argument");
    if (i < 0 || i >= db_trajectory_size(t)) {
        g_last_error = "db_trajectory_sample: index out of range";
        return DB_ERR_RANGE;
    }
    const dicke::ObservableRecord& rec = t->traj.observables[i];
    out->t = rec.t;
    out->energy_per_atom = rec.energy_per_atom;
    out->re_jp = rec.coherence_jp.real();
    out->im_jp = rec.coherence_jp.imag();
    out->energy_variance = rec.energy_variance;
    out->trace_error = rec.trace_error;
    out->min_eigval = rec.min_eigenvalue;
    out->coherent_power = t->is_discharge ? t->coherent_power[i] : 0.0;
    out->coherent_energy = t->is_discharge ? t->coherent_energy[i] : 0.0;
    return DB_OK;
}

db_status db_trajectory_stats(const db_trajectory* t, double* max_trace_error,
                              double* max_hermiticity_error,
                              double* min_eigenvalue) {
    if (!t) return invalid("db_trajectory_stats: null trajectory");
    if (max_trace_error) *max_trace_error = t->traj.max_trace_error;
    if (max_hermiticity_error) {
        *max_hermiticity_error = t->traj.max_hermiticity_error;
    }
    if (min_eigenvalue) *min_eigenvalue = t->traj.min_eigenvalue;
    return DB_OK;
}

db_status db_discharge_summary(const db_trajectory* t,
                               double* stored_energy_initial,
                               double* coherent_fraction) {
    if (!t) return invalid("db_discharge_summary: null trajectory");
    if (!t->is_discharge) {
        g_last_error = "db_discharge_summary: not a discharge trajectory";
        return DB_ERR_INVALID_ARGUMENT;
    }
    if (stored_energy_initial) *stored_energy_initial = t->stored_energy_initial;
    if (coherent_fraction) *coherent_fraction = t->coherent_fraction;
    return DB_OK;
}

db_status db_trajectory_write_csv(const db_trajectory* t, const char* path) {
    if (!t || !path) return invalid("db_trajectory_write_csv: null argument");
    return guarded([&] { dicke::write_trajectory_csv(path, t->traj); });
}

void db_scenario_spec_init(db_scenario_spec* spec) {
    if (!spec) return;
    std::memset(spec, 0, sizeof *spec);
    db_params_init(&spec->params);
    db_integrator_config_init(&spec->integrator);
    spec->scenario = "steady";
}

db_status db_scenario_run(const db_scenario_spec* spec, db_run_summary* out) {
    if (!spec || !spec->scenario) {
        return invalid("db_scenario_run: null spec or scenario name");
    }
    return guarded([&] {
        dicke::ScenarioSpec s;
        s.kind = dicke::scenario_from_name(spec->scenario);
        s.params = to_params(spec->params);
        s.integrator = to_config(&spec->integrator);
        s.t_end = spec->t_end;
        s.sample_every = spec->sample_every;
        if (spec->out_path) s.out_path = spec->out_path;
        s.frame = spec->frame == DB_FRAME_DRIVEN
            ? dicke::DischargeFrame::driven
            : dicke::DischargeFrame::drive_off;
        s.generator = spec->generator == DB_GENERATOR_FULL
            ? dicke::GeneratorKind::full
            : dicke::GeneratorKind::secular;
        s.has_theta = spec->has_theta != 0;
        s.theta = spec->theta;
        s.has_x = spec->has_x != 0;
        s.x = spec->x;
        if (spec->n_list && spec->n_list_len > 0) {
            s.n_list.assign(spec->n_list, spec->n_list + spec->n_list_len);
        }
        if (spec->r_list && spec->r_list_len > 0) {
            s.r_list.assign(spec->r_list, spec->r_list + spec->r_list_len);
        }
        s.theta_min = spec->theta_min;
        s.theta_max = spec->theta_max;
        s.theta_steps = spec->theta_steps;
        s.threads = spec->threads;
        s.rabi_per_atom = spec->rabi_per_atom;

        const dicke::RunSummary sum = dicke::run_scenario(s);
        if (out) {
            out->wall_time_s = sum.wall_time_s;
            out->max_trace_error = sum.max_trace_error;
            out->max_hermiticity_error = sum.max_hermiticity_error;
            out->min_eigenvalue = sum.min_eigenvalue;
            out->grid_points = sum.grid_points;
            out->failed_points = sum.failed_points;
        }
    });
}

} // extern "C"
