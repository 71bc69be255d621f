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

#include "dicke/scenario.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include <json.hpp>

#include "dicke/charging_curve.hpp"
#include "dicke/errors.hpp"
#include "dicke/steady_state.hpp"

namespace dicke {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    if (!std::isfinite(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string join_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    row += '\n';
    return row;
}

class CsvFile {
public:
    explicit CsvFile(const std::string& path) : path_(path), out_(path) {
        require(out_.good(), ErrorCode::io, "cannot open for writing: " + path);
    }
    void header(const std::vector<std::string>& names) { out_ << join_row(names); }
    void row(const std::vector<std::string>& cells) { out_ << join_row(cells); }
    void raw(const std::string& line) { out_ << line; }
    void close() {
        out_.close();
        require(out_.good(), ErrorCode::io, "write failed: " + path_);
    }

private:
    std::string path_;
    std::ofstream out_;
};

std::vector<double> linspace(double lo, double hi, int steps) {
    require(steps >= 1, ErrorCode::invalid_argument, "grid needs >= 1 point");
    std::vector<double> v(steps);
    if (steps == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < steps; ++i) {
        v[i] = lo + (hi - lo) * i / (steps - 1);
    }
    return v;
}

ModelParams with_theta(ModelParams p, double theta) {
    require(theta > 0.0 && theta < M_PI, ErrorCode::degenerate_angle,
            "theta override must lie strictly inside (0, pi)");
    require(p.rabi > 0.0, ErrorCode::invalid_argument,
            "theta override needs rabi > 0 to fix the drive magnitude");
    p.delta = (std::abs(theta - 0.5 * M_PI) < 1e-12)
        ? 0.0
        : p.rabi / std::tan(theta);
    return p;
}

void merge_invariants(RunSummary& s, const Trajectory& traj) {
    s.max_trace_error = std::max(s.max_trace_error, traj.max_trace_error);
    s.max_hermiticity_error =
        std::max(s.max_hermiticity_error, traj.max_hermiticity_error);
    s.min_eigenvalue = std::min(s.min_eigenvalue, traj.min_eigenvalue);
}

} // namespace

ChargeRun run_charge(const ModelParams& p, GeneratorKind kind, double t_end,
                     double sample_every, const IntegratorConfig& cfg,
                     bool store_states) {
    ChargeRun run;
    run.derived = derive(p);
    const SpinOperators ops = build_spin_operators(p.n_atoms);
    const DensityMatrix ground = ground_state_bare(p.n_atoms);

    if (kind == GeneratorKind::secular) {
        const RotationMatrix rot = rotation_matrix(ops, run.derived.theta);
        const DensityMatrix rho0 = to_dressed(ground, rot);
        const double n0 = expectation(rho0.rho, ops.jz).real();
        const double expected = -0.5 * p.n_atoms * std::cos(run.derived.theta);
        require(std::abs(n0 - expected) <= 1e-8 * p.n_atoms,
                ErrorCode::internal,
                "dressed-frame initial population is off its exact value");
        const SecularGenerator gen(p, run.derived, ops);
        const ObservableSet obs =
            make_observables(ops, Basis::dressed, run.derived.theta);
        run.trajectory = integrate(rho0, std::cref(gen), t_end, cfg,
                                   sample_every, &obs, store_states);
    } else {
        const Matrix h1 = p.delta * ops.jz - p.rabi * ops.jx;
        const FullGenerator gen(h1, p.gamma_minus, ops);
        const ObservableSet obs = make_observables(ops, Basis::bare);
        run.trajectory = integrate(ground, std::cref(gen), t_end, cfg,
                                   sample_every, &obs, store_states);
    }
    return run;
}

namespace {

// ------------------------------ scenarios ------------------------------

void scenario_fig1(const ScenarioSpec& spec, const std::string& path,
                   RunSummary& summary) {
    const std::vector<int> n_list =
        spec.n_list.empty() ? std::vector<int>{2, 4} : spec.n_list;
    const double r = 0.1;
    const double lo = (spec.theta_steps > 0) ? spec.theta_min : 0.05;
    const double hi = (spec.theta_steps > 0) ? spec.theta_max : M_PI - 0.05;
    const int steps = (spec.theta_steps > 0) ? spec.theta_steps : 150;
    const std::vector<double> thetas = linspace(lo, hi, steps);

    CsvFile csv(path);
    csv.header({"n_atoms", "theta_in_rad", "x",
                "ergotropy_per_atom_exact_in_omega0",
                "ergotropy_per_atom_closed_in_omega0",
                "ergotropy_per_atom_asymptotic_in_omega0"});
    for (int n : n_list) {
        for (double th : thetas) {
            const double half_cot = 1.0 / std::tan(0.5 * th);
            const double x = r * std::pow(half_cot, 4);
            const ErgotropyReport rep = ergotropy_exact(n, x, th);
            const double asym = (x == 1.0)
                ? std::numeric_limits<double>::quiet_NaN()
                : ergotropy_asymptotic(x, th, r);
            csv.row({std::to_string(n), fmt(th), fmt(x),
                     fmt(rep.ergotropy_per_atom),
                     fmt(rep.ergotropy_per_atom_closed), fmt(asym)});
            ++summary.grid_points;
        }
    }
    csv.close();
}

void scenario_fig2(const ScenarioSpec& spec, const std::string& path,
                   RunSummary& summary) {
    const std::vector<int> n_list =
        spec.n_list.empty() ? std::vector<int>{8, 16, 32} : spec.n_list;
    const double theta = spec.has_theta ? spec.theta : 1.87;
    const double rabi_per_atom =
        (spec.rabi_per_atom > 0.0) ? spec.rabi_per_atom : 40.0;

    CsvFile csv(path);
    csv.header({"n_atoms", "t_times_n_gamma_minus",
                "energy_per_atom_numeric_in_omega0",
                "energy_per_atom_analytic_in_omega0",
                "energy_per_atom_lower_bound_in_omega0"});
    for (int n : n_list) {
        ModelParams p;
        p.n_atoms = n;
        p.gamma0 = 1.0;
        p.gamma_plus = 10.0;
        p.gamma_minus = 1.0;
        p.rabi = rabi_per_atom * n;
        p = with_theta(p, theta);
        const DerivedParams d = derive(p);
        require(d.gamma_eff > 0.0, ErrorCode::invalid_argument,
                "charging overlay needs gamma_eff > 0 (x > 1)");
        const double tau_end = 10.0;
        const double t_end = (spec.t_end > 0.0)
            ? spec.t_end
            : 2.0 * tau_end / (n * d.gamma_eff);
        const double dt = (spec.sample_every > 0.0)
            ? spec.sample_every
            : t_end / 500.0;
        const ChargeRun run = run_charge(p, GeneratorKind::secular, t_end, dt,
                                         spec.integrator, false);
        merge_invariants(summary, run.trajectory);
        for (const auto& rec : run.trajectory.observables) {
            const double tau = 0.5 * n * d.gamma_eff * rec.t;
            csv.row({std::to_string(n), fmt(rec.t * n * p.gamma_minus),
                     fmt(rec.energy_per_atom),
                     fmt(energy_analytic(rec.t, n, d)),
                     fmt(energy_lower_bound(tau, d.theta))});
        }
        ++summary.grid_points;
    }
    csv.close();
}

void scenario_fig3(const ScenarioSpec& spec, const std::string& path,
                   RunSummary& summary) {
    const std::vector<double> r_list =
        spec.r_list.empty() ? std::vector<double>{1.0, 5.0, 10.0} : spec.r_list;
    const int steps = (spec.theta_steps > 0) ? spec.theta_steps : 120;

    CsvFile csv(path);
    csv.header({"r", "theta_in_rad", "charge_fraction",
                "tau90_dimensionless",
                "power_bound_in_n2_omega0_gamma_minus"});
    for (double r : r_list) {
        // Admissible x >= 1 range: theta up to 2 atan(r^(1/4)).
        const double lo = (spec.theta_steps > 0) ? spec.theta_min : 0.05;
        const double hi = (spec.theta_steps > 0)
            ? spec.theta_max
            : 2.0 * std::atan(std::pow(r, 0.25));
        for (double th : linspace(lo, hi, steps)) {
            const PowerBoundPoint pt =
                power_bound_point(r, th, PowerBranch::x_above_one);
            csv.row({fmt(r), fmt(th), fmt(pt.charge_fraction), fmt(pt.tau90),
                     fmt(pt.bound)});
            ++summary.grid_points;
        }
    }
    csv.close();
}

void scenario_fig4(const ScenarioSpec& spec, const std::string& path,
                   RunSummary& summary) {
    const std::vector<int> n_list =
        spec.n_list.empty() ? std::vector<int>{2, 4, 8} : spec.n_list;
    const double theta = spec.has_theta ? spec.theta : 1.87;

    CsvFile csv(path);
    csv.header({"n_atoms", "t_times_n_gamma0", "energy_per_atom_in_omega0",
                "coherent_power_in_omega0_gamma_minus",
                "coherent_energy_total_in_omega0",
                "stored_energy_total_in_omega0"});
    for (int n : n_list) {
        ModelParams p;
        p.n_atoms = n;
        p.gamma0 = 1.0;
        p.gamma_plus = 10.0;
        p.gamma_minus = 1.0;
        p.rabi = 1.0;
        p = with_theta(p, theta);
        const DerivedParams d = derive(p);
        const SpinOperators ops = build_spin_operators(n);
        const RotationMatrix rot = rotation_matrix(ops, d.theta);
        const DensityMatrix rho0 = steady_state_bare(p, d, ops, rot);
        const double t_end =
            (spec.t_end > 0.0) ? spec.t_end : 20.0 / (n * p.gamma0);
        const DischargeResult res = run_discharge(rho0, p, spec.frame, t_end,
                                                  spec.integrator,
                                                  spec.sample_every);
        merge_invariants(summary, res.trajectory);
        const double stored = steady_charge(n, d.x, d.theta);
        const auto& recs = res.trajectory.observables;
        for (std::size_t i = 0; i < recs.size(); ++i) {
            csv.row({std::to_string(n), fmt(recs[i].t * n * p.gamma0),
                     fmt(recs[i].energy_per_atom), fmt(res.coherent_power[i]),
                     fmt(res.coherent_energy[i]), fmt(stored)});
        }
        ++summary.grid_points;
    }
    csv.close();
}

void scenario_steady(const ScenarioSpec& spec, const std::string& path,
                     RunSummary& summary, json& extra) {
    const ModelParams p = resolve_params(spec);
    double x;
    double theta = std::numeric_limits<double>::quiet_NaN();
    if (spec.has_x) {
        x = spec.x;
        // theta is still reported when the rates define one.
        try {
            theta = derive(p).theta;
        } catch (const Error&) {
        }
    } else {
        const DerivedParams d = derive(p);
        x = d.x;
        theta = d.theta;
    }
    const std::vector<double> pops = steady_populations(p.n_atoms, x);

    CsvFile csv(path);
    csv.header({"m", "population"});
    for (int i = 0; i <= p.n_atoms; ++i) {
        csv.row({fmt(i - 0.5 * p.n_atoms), fmt(pops[i])});
    }
    csv.close();
    ++summary.grid_points;

    extra["x"] = x;
    if (std::isfinite(theta)) {
        const ErgotropyReport rep = ergotropy_exact(p.n_atoms, x, theta);
        extra["theta"] = theta;
        extra["energy_ss_in_omega0"] = rep.energy_ss;
        extra["charge_per_atom_in_omega0"] =
            (rep.energy_ss + 0.5 * p.n_atoms) / p.n_atoms;
        extra["passive_energy_in_omega0"] = rep.passive_energy;
        extra["ergotropy_total_in_omega0"] = rep.ergotropy;
        extra["ergotropy_per_atom_in_omega0"] = rep.ergotropy_per_atom;
        extra["ergotropy_per_atom_closed_in_omega0"] =
            rep.ergotropy_per_atom_closed;
    }
}

void scenario_charge(const ScenarioSpec& spec, const std::string& path,
                     RunSummary& summary, json& extra) {
    const ModelParams p = resolve_params(spec);
    const DerivedParams d = derive(p);
    double t_end = spec.t_end;
    if (t_end <= 0.0) {
        t_end = (std::abs(d.gamma_eff) > 1e-12)
            ? 20.0 / (p.n_atoms * std::abs(d.gamma_eff))
            : 10.0 / p.gamma_minus;
    }
    const double dt = (spec.sample_every > 0.0) ? spec.sample_every
                                                : t_end / 400.0;
    const ChargeRun run =
        run_charge(p, spec.generator, t_end, dt, spec.integrator, false);
    merge_invariants(summary, run.trajectory);
    write_trajectory_csv(path, run.trajectory);
    ++summary.grid_points;
    extra["final_energy_per_atom_in_omega0"] =
        run.trajectory.observables.back().energy_per_atom;
}

void scenario_discharge(const ScenarioSpec& spec, const std::string& path,
                        RunSummary& summary, json& extra) {
    const ModelParams p = resolve_params(spec);
    const DerivedParams d = derive(p);
    const SpinOperators ops = build_spin_operators(p.n_atoms);
    const RotationMatrix rot = rotation_matrix(ops, d.theta);
    const DensityMatrix rho0 = steady_state_bare(p, d, ops, rot);
    const double t_end =
        (spec.t_end > 0.0) ? spec.t_end : 20.0 / (p.n_atoms * p.gamma0);
    const DischargeResult res = run_discharge(rho0, p, spec.frame, t_end,
                                              spec.integrator,
                                              spec.sample_every);
    merge_invariants(summary, res.trajectory);

    CsvFile csv(path);
    csv.header({"t_in_inverse_gamma_minus", "energy_per_atom_in_omega0",
                "re_jp", "im_jp", "energy_variance_in_omega0_sq",
                "trace_error", "min_eigval",
                "coherent_power_in_omega0_gamma_minus",
                "coherent_energy_total_in_omega0"});
    const auto& recs = res.trajectory.observables;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        csv.row({fmt(recs[i].t), fmt(recs[i].energy_per_atom),
                 fmt(recs[i].coherence_jp.real()),
                 fmt(recs[i].coherence_jp.imag()),
                 fmt(recs[i].energy_variance), fmt(recs[i].trace_error),
                 fmt(recs[i].min_eigenvalue), fmt(res.coherent_power[i]),
                 fmt(res.coherent_energy[i])});
    }
    csv.close();
    ++summary.grid_points;
    extra["stored_energy_initial_in_omega0"] = res.stored_energy_initial;
    extra["coherent_fraction"] = res.coherent_fraction;
}

struct SweepPoint {
    int n_atoms;
    double r;
    double theta;
};

std::string sweep_row(const SweepPoint& pt, const ModelParams& base) {
    std::vector<std::string> cells;
    try {
        ModelParams p = base;
        p.n_atoms = pt.n_atoms;
        p.gamma_plus = pt.r * base.gamma_minus;
        const double omega_p =
            (std::hypot(base.delta, base.rabi) > 0.0)
            ? std::hypot(base.delta, base.rabi)
            : 1.0;
        p.rabi = omega_p * std::sin(pt.theta);
        p.delta = omega_p * std::cos(pt.theta);
        const DerivedParams d = derive(p);
        const ErgotropyReport rep =
            ergotropy_exact(p.n_atoms, d.x, d.theta);
        const double asym = (d.x == 1.0)
            ? std::numeric_limits<double>::quiet_NaN()
            : ergotropy_asymptotic(d.x, d.theta, d.ratio_r);
        const PowerBranch branch = (d.x >= 1.0) ? PowerBranch::x_above_one
                                                : PowerBranch::x_below_one;
        const PowerBoundPoint pb = power_bound_point(d.ratio_r, d.theta, branch);
        const bool charging = d.gamma_eff > 0.0;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        cells = {std::to_string(p.n_atoms), fmt(pt.r), fmt(d.theta), fmt(d.x),
                 fmt(d.omega_p), fmt(d.gamma_eff),
                 fmt(steady_charge(p.n_atoms, d.x, d.theta) / p.n_atoms),
                 fmt(rep.ergotropy_per_atom),
                 fmt(rep.ergotropy_per_atom_closed), fmt(asym), fmt(pb.tau90),
                 fmt(pb.charge_fraction), fmt(pb.bound),
                 fmt(charging ? power_envelope(0.5, p.n_atoms, d) : nan),
                 fmt(charging ? power_envelope(1.0, p.n_atoms, d) : nan),
                 fmt(charging ? power_envelope(2.0, p.n_atoms, d) : nan),
                 "ok"};
    } catch (const Error& e) {
        cells.assign(16, "");
        cells[0] = std::to_string(pt.n_atoms);
        cells[1] = fmt(pt.r);
        cells[2] = fmt(pt.theta);
        std::string what = e.what();
        for (char& c : what) {
            if (c == ',' || c == '\n') c = ';';
        }
        cells.push_back("error:" + what);
    }
    return join_row(cells);
}

void scenario_sweep(const ScenarioSpec& spec, const std::string& path,
                    RunSummary& summary) {
    const ModelParams base = resolve_params(spec);
    const std::vector<int> n_list =
        spec.n_list.empty() ? std::vector<int>{base.n_atoms} : spec.n_list;
    const std::vector<double> r_list = spec.r_list.empty()
        ? std::vector<double>{base.gamma_plus / base.gamma_minus}
        : spec.r_list;
    std::vector<double> thetas;
    if (spec.theta_steps > 0) {
        require(spec.theta_min > 0.0 && spec.theta_max < M_PI
                    && spec.theta_min <= spec.theta_max,
                ErrorCode::invalid_argument,
                "sweep theta grid must lie inside (0, pi)");
        thetas = linspace(spec.theta_min, spec.theta_max, spec.theta_steps);
    } else {
        thetas = {derive(base).theta};
    }

    std::vector<SweepPoint> points;
    for (int n : n_list)
        for (double r : r_list)
            for (double th : thetas) points.push_back({n, r, th});
    require(!points.empty(), ErrorCode::invalid_argument, "empty sweep grid");

    std::vector<std::string> rows(points.size());
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned nthreads = (spec.threads > 0)
        ? static_cast<unsigned>(spec.threads)
        : std::max(1u, hw);
    std::atomic<std::size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= points.size()) return;
            rows[i] = sweep_row(points[i], base);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < nthreads; ++k) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    CsvFile csv(path);
    csv.header({"n_atoms", "r", "theta_in_rad", "x", "omega_p", "gamma_eff",
                "charge_per_atom_in_omega0",
                "ergotropy_per_atom_exact_in_omega0",
                "ergotropy_per_atom_closed_in_omega0",
                "ergotropy_per_atom_asymptotic_in_omega0",
                "tau90_dimensionless", "charge_fraction",
                "power_bound_in_n2_omega0_gamma_minus",
                "power_env_tau_half_in_omega0_gamma_minus",
                "power_env_tau_one_in_omega0_gamma_minus",
                "power_env_tau_two_in_omega0_gamma_minus", "status"});
    // Row strings already carry their newline.
    for (const auto& r : rows) csv.raw(r);
    csv.close();

    summary.grid_points = static_cast<int>(points.size());
    for (const auto& r : rows) {
        if (r.find("error:") != std::string::npos) ++summary.failed_points;
    }
}

} // namespace

ScenarioKind scenario_from_name(const std::string& name) {
    if (name == "fig1") return ScenarioKind::fig1;
    if (name == "fig2") return ScenarioKind::fig2;
    if (name == "fig3") return ScenarioKind::fig3;
    if (name == "fig4") return ScenarioKind::fig4;
    if (name == "steady") return ScenarioKind::steady;
    if (name == "charge") return ScenarioKind::charge;
    if (name == "discharge") return ScenarioKind::discharge;
    if (name == "sweep") return ScenarioKind::sweep;
    fail(ErrorCode::invalid_argument,
         "unknown scenario '" + name
             + "' (expected fig1|fig2|fig3|fig4|steady|charge|discharge|sweep)");
}

const char* scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::fig1: return "fig1";
        case ScenarioKind::fig2: return "fig2";
        case ScenarioKind::fig3: return "fig3";
        case ScenarioKind::fig4: return "fig4";
        case ScenarioKind::steady: return "steady";
        case ScenarioKind::charge: return "charge";
        case ScenarioKind::discharge: return "discharge";
        case ScenarioKind::sweep: return "sweep";
    }
    return "unknown";
}

ModelParams resolve_params(const ScenarioSpec& spec) {
    ModelParams p = spec.params;
    if (spec.has_theta) p = with_theta(p, spec.theta);
    return p;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    CsvFile csv(path);
    csv.header({"t_in_inverse_gamma_minus", "energy_per_atom_in_omega0",
                "re_jp", "im_jp", "energy_variance_in_omega0_sq",
                "trace_error", "min_eigval"});
    for (const auto& rec : traj.observables) {
        csv.row({fmt(rec.t), fmt(rec.energy_per_atom),
                 fmt(rec.coherence_jp.real()), fmt(rec.coherence_jp.imag()),
                 fmt(rec.energy_variance), fmt(rec.trace_error),
                 fmt(rec.min_eigenvalue)});
    }
    csv.close();
}

RunSummary run_scenario(const ScenarioSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    RunSummary summary;
    summary.scenario = scenario_name(spec.kind);
    const std::string path = spec.out_path.empty()
        ? std::string(scenario_name(spec.kind)) + ".csv"
        : spec.out_path;

    json extra = json::object();
    switch (spec.kind) {
        case ScenarioKind::fig1: scenario_fig1(spec, path, summary); break;
        case ScenarioKind::fig2: scenario_fig2(spec, path, summary); break;
        case ScenarioKind::fig3: scenario_fig3(spec, path, summary); break;
        case ScenarioKind::fig4: scenario_fig4(spec, path, summary); break;
        case ScenarioKind::steady:
            scenario_steady(spec, path, summary, extra);
            break;
        case ScenarioKind::charge:
            scenario_charge(spec, path, summary, extra);
            break;
        case ScenarioKind::discharge:
            scenario_discharge(spec, path, summary, extra);
            break;
        case ScenarioKind::sweep: scenario_sweep(spec, path, summary); break;
    }
    summary.outputs.push_back(path);

    const auto stop = std::chrono::steady_clock::now();
    summary.wall_time_s =
        std::chrono::duration<double>(stop - start).count();

    json js;
    js["scenario"] = summary.scenario;
    js["outputs"] = summary.outputs;
    js["wall_time_s"] = summary.wall_time_s;
    js["grid_points"] = summary.grid_points;
    js["failed_points"] = summary.failed_points;
    js["params"] = {
        {"n_atoms", spec.params.n_atoms}, {"omega0", spec.params.omega0},
        {"delta", spec.params.delta},     {"rabi", spec.params.rabi},
        {"gamma0", spec.params.gamma0},
        {"gamma_plus", spec.params.gamma_plus},
        {"gamma_minus", spec.params.gamma_minus}};
    if (spec.has_theta) js["params"]["theta"] = spec.theta;
    if (spec.has_x) js["params"]["x"] = spec.x;
    js["invariants"] = {{"max_trace_error", summary.max_trace_error},
                        {"max_hermiticity_error", summary.max_hermiticity_error},
                        {"min_eigenvalue", summary.min_eigenvalue}};
    try {
        const DerivedParams d = derive(resolve_params(spec));
        js["derived"] = {{"omega_p", d.omega_p}, {"theta", d.theta},
                         {"r", d.ratio_r},       {"x", d.x},
                         {"gamma_eff", d.gamma_eff}, {"phi0", d.phi0}};
    } catch (const Error&) {
        // scenarios driven purely by grids need not have derivable params
    }
    if (!extra.empty()) js["results"] = extra;

    const std::string summary_path = path + ".summary.json";
    std::ofstream out(summary_path);
    require(out.good(), ErrorCode::io, "cannot write " + summary_path);
    out << js.dump(2) << '\n';
    out.close();
    require(out.good(), ErrorCode::io, "write failed: " + summary_path);
    summary.outputs.push_back(summary_path);
    return summary;
}

} // namespace dicke
