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

// dicke-battery — batch front end over the shared-library C API.
//
// Usage: dicke-battery <scenario> [options]
// Scenarios: fig1 fig2 fig3 fig4 steady charge discharge sweep
//
// Options can also come from a flat key = value config file (--config);
// command-line flags override file values. Exit codes: 0 success,
// 2 validation error, 3 numerical failure, 4 partial sweep failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dicke_battery.h"

namespace {

struct Options {
    std::string scenario;
    std::string config_path;
    std::string out_path;
    std::string frame = "drive_off";
    std::string generator = "secular";
    int n_atoms = 1;
    double omega0 = 1.0;
    double delta = 0.0;
    double rabi = 0.0;
    double gamma0 = 1.0;
    double gamma_plus = 1.0;
    double gamma_minus = 1.0;
    std::optional<double> theta;
    std::optional<double> x;
    double t_end = 0.0;
    double sample_every = 0.0;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_step = 0.0;
    bool fixed_rk4 = false;
    std::vector<int> n_list;
    std::vector<double> r_list;
    double theta_min = 0.0;
    double theta_max = 0.0;
    int theta_steps = 0;
    int threads = 0;
    double rabi_per_atom = 0.0;
};

int parse_int(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const int out = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw CLI::ValidationError(where + ": expected an integer, got '" + v + "'");
    }
}

double parse_double(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw CLI::ValidationError(where + ": expected a number, got '" + v + "'");
    }
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> items;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Flat "key = value" file; '#' starts a comment. Keys mirror the CLI flags.
void apply_config_file(const std::string& path, Options& opt) {
    std::ifstream in(path);
    if (!in.good()) {
        throw CLI::ValidationError("cannot read config file: " + path);
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = path + ":" + std::to_string(lineno);
        if (eq == std::string::npos) {
            throw CLI::ValidationError(where + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) {
            throw CLI::ValidationError(where + ": empty value for '" + key + "'");
        }
        if (key == "n_atoms") opt.n_atoms = parse_int(value, where);
        else if (key == "omega0") opt.omega0 = parse_double(value, where);
        else if (key == "delta") opt.delta = parse_double(value, where);
        else if (key == "rabi") opt.rabi = parse_double(value, where);
        else if (key == "gamma0") opt.gamma0 = parse_double(value, where);
        else if (key == "gamma_plus") opt.gamma_plus = parse_double(value, where);
        else if (key == "gamma_minus") opt.gamma_minus = parse_double(value, where);
        else if (key == "theta") opt.theta = parse_double(value, where);
        else if (key == "x") opt.x = parse_double(value, where);
        else if (key == "t_end") opt.t_end = parse_double(value, where);
        else if (key == "sample_every") opt.sample_every = parse_double(value, where);
        else if (key == "rel_tol") opt.rel_tol = parse_double(value, where);
        else if (key == "abs_tol") opt.abs_tol = parse_double(value, where);
        else if (key == "max_step") opt.max_step = parse_double(value, where);
        else if (key == "out") opt.out_path = value;
        else if (key == "frame") opt.frame = value;
        else if (key == "generator") opt.generator = value;
        else if (key == "threads") opt.threads = parse_int(value, where);
        else if (key == "theta_min") opt.theta_min = parse_double(value, where);
        else if (key == "theta_max") opt.theta_max = parse_double(value, where);
        else if (key == "theta_steps") opt.theta_steps = parse_int(value, where);
        else if (key == "rabi_per_atom") opt.rabi_per_atom = parse_double(value, where);
        else if (key == "n_list") {
            opt.n_list.clear();
            for (const auto& s : split_list(value)) {
                opt.n_list.push_back(parse_int(s, where));
            }
        } else if (key == "r_list") {
            opt.r_list.clear();
            for (const auto& s : split_list(value)) {
                opt.r_list.push_back(parse_double(s, where));
            }
        } else {
            throw CLI::ValidationError(where + ": unknown key '" + key + "'");
        }
    }
}

int status_to_exit_code(db_status st) {
    switch (st) {
        case DB_OK: return 0;
        case DB_ERR_INVALID_ARGUMENT:
        case DB_ERR_DEGENERATE_ANGLE:
        case DB_ERR_RANGE:
        case DB_ERR_DIMENSION_MISMATCH:
        case DB_ERR_IO: return 2;
        default: return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collective-spin quantum battery simulator (CSV-emitting batch tool)"};
    app.require_subcommand(0, 0);

    Options opt;
    std::string scenario;
    app.add_option("scenario", scenario,
                   "fig1|fig2|fig3|fig4|steady|charge|discharge|sweep")
        ->required();
    app.add_option("--config", opt.config_path, "flat key = value config file");
    app.add_option("--n-atoms,--n", opt.n_atoms, "number of atoms N");
    app.add_option("--omega0", opt.omega0, "atomic frequency (reporting scale)");
    app.add_option("--delta", opt.delta, "detuning");
    app.add_option("--rabi", opt.rabi, "drive Rabi frequency");
    app.add_option("--gamma0", opt.gamma0, "decay rate at the pump frequency");
    app.add_option("--gamma-plus", opt.gamma_plus, "upper-sideband decay rate");
    app.add_option("--gamma-minus", opt.gamma_minus, "lower-sideband decay rate (rate unit)");
    double theta_flag = -1.0, x_flag = -1.0;
    auto* theta_opt = app.add_option("--theta", theta_flag,
                                     "mixing angle; overrides delta via delta = rabi/tan(theta)");
    auto* x_opt = app.add_option("--x", x_flag,
                                 "detailed-balance parameter (steady scenario)");
    app.add_option("--t-end", opt.t_end, "integration end time (1/gamma_minus)");
    app.add_option("--sample-every", opt.sample_every, "sampling cadence");
    app.add_option("--rel-tol", opt.rel_tol, "integrator relative tolerance");
    app.add_option("--abs-tol", opt.abs_tol, "integrator absolute tolerance");
    app.add_option("--max-step", opt.max_step, "max step (fixed step for RK4)");
    app.add_flag("--rk4-fixed", opt.fixed_rk4, "use fixed-step RK4");
    app.add_option("--out", opt.out_path, "output CSV path");
    app.add_option("--frame", opt.frame, "discharge frame: drive_off|driven");
    app.add_option("--generator", opt.generator, "charge generator: secular|full");
    std::string n_list_flag, r_list_flag;
    auto* n_list_opt = app.add_option("--n-list", n_list_flag, "comma-separated N values");
    auto* r_list_opt = app.add_option("--r-list", r_list_flag, "comma-separated r values");
    app.add_option("--theta-min", opt.theta_min, "sweep grid lower angle");
    app.add_option("--theta-max", opt.theta_max, "sweep grid upper angle");
    app.add_option("--theta-steps", opt.theta_steps, "sweep grid points");
    app.add_option("--threads", opt.threads, "sweep worker threads");
    app.add_option("--rabi-per-atom", opt.rabi_per_atom,
                   "drive scaling for fig2 (rabi = value * N)");

    try {
        app.parse(argc, argv);
        opt.scenario = scenario;
        // Config file first, then explicit flags on top of it.
        if (!opt.config_path.empty()) {
            Options file_opt = opt;
            // Reset to defaults so the file fills a clean slate, then replay
            // CLI values by reparsing over the file result.
            apply_config_file(opt.config_path, file_opt);
            // CLI flags that were actually given override the file.
            Options merged = file_opt;
            if (app.count("--n-atoms")) merged.n_atoms = opt.n_atoms;
            if (app.count("--omega0")) merged.omega0 = opt.omega0;
            if (app.count("--delta")) merged.delta = opt.delta;
            if (app.count("--rabi")) merged.rabi = opt.rabi;
            if (app.count("--gamma0")) merged.gamma0 = opt.gamma0;
            if (app.count("--gamma-plus")) merged.gamma_plus = opt.gamma_plus;
            if (app.count("--gamma-minus")) merged.gamma_minus = opt.gamma_minus;
            if (app.count("--t-end")) merged.t_end = opt.t_end;
            if (app.count("--sample-every")) merged.sample_every = opt.sample_every;
            if (app.count("--rel-tol")) merged.rel_tol = opt.rel_tol;
            if (app.count("--abs-tol")) merged.abs_tol = opt.abs_tol;
            if (app.count("--max-step")) merged.max_step = opt.max_step;
            if (app.count("--rk4-fixed")) merged.fixed_rk4 = opt.fixed_rk4;
            if (app.count("--out")) merged.out_path = opt.out_path;
            if (app.count("--frame")) merged.frame = opt.frame;
            if (app.count("--generator")) merged.generator = opt.generator;
            if (app.count("--theta-min")) merged.theta_min = opt.theta_min;
            if (app.count("--theta-max")) merged.theta_max = opt.theta_max;
            if (app.count("--theta-steps")) merged.theta_steps = opt.theta_steps;
            if (app.count("--threads")) merged.threads = opt.threads;
            if (app.count("--rabi-per-atom")) merged.rabi_per_atom = opt.rabi_per_atom;
            opt = merged;
        }
        if (theta_opt->count()) opt.theta = theta_flag;
        if (x_opt->count()) opt.x = x_flag;
        if (n_list_opt->count()) {
            opt.n_list.clear();
            for (const auto& s : split_list(n_list_flag)) {
                opt.n_list.push_back(parse_int(s, "--n-list"));
            }
        }
        if (r_list_opt->count()) {
            opt.r_list.clear();
            for (const auto& s : split_list(r_list_flag)) {
                opt.r_list.push_back(parse_double(s, "--r-list"));
            }
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    db_scenario_spec spec;
    db_scenario_spec_init(&spec);
    spec.scenario = opt.scenario.c_str();
    spec.params.n_atoms = opt.n_atoms;
    spec.params.omega0 = opt.omega0;
    spec.params.delta = opt.delta;
    spec.params.rabi = opt.rabi;
    spec.params.gamma0 = opt.gamma0;
    spec.params.gamma_plus = opt.gamma_plus;
    spec.params.gamma_minus = opt.gamma_minus;
    spec.integrator.rel_tol = opt.rel_tol;
    spec.integrator.abs_tol = opt.abs_tol;
    spec.integrator.max_step = opt.max_step;
    spec.integrator.fixed_rk4 = opt.fixed_rk4 ? 1 : 0;
    spec.t_end = opt.t_end;
    spec.sample_every = opt.sample_every;
    if (!opt.out_path.empty()) spec.out_path = opt.out_path.c_str();
    if (opt.frame == "driven") {
        spec.frame = DB_FRAME_DRIVEN;
    } else if (opt.frame != "drive_off") {
        std::cerr << "error: --frame must be drive_off or driven\n";
        return 2;
    }
    if (opt.generator == "full") {
        spec.generator = DB_GENERATOR_FULL;
    } else if (opt.generator != "secular") {
        std::cerr << "error: --generator must be secular or full\n";
        return 2;
    }
    if (opt.theta) {
        spec.has_theta = 1;
        spec.theta = *opt.theta;
    }
    if (opt.x) {
        spec.has_x = 1;
        spec.x = *opt.x;
    }
    if (!opt.n_list.empty()) {
        spec.n_list = opt.n_list.data();
        spec.n_list_len = static_cast<int>(opt.n_list.size());
    }
    if (!opt.r_list.empty()) {
        spec.r_list = opt.r_list.data();
        spec.r_list_len = static_cast<int>(opt.r_list.size());
    }
    spec.theta_min = opt.theta_min;
    spec.theta_max = opt.theta_max;
    spec.theta_steps = opt.theta_steps;
    spec.threads = opt.threads;
    spec.rabi_per_atom = opt.rabi_per_atom;

    // The steady scenario also reports its populations on stdout.
    if (opt.scenario == "steady" && opt.x) {
        std::vector<double> pops(opt.n_atoms + 1);
        const db_status st = db_steady_populations_xn(
            opt.n_atoms, *opt.x, pops.data(), opt.n_atoms + 1);
        if (st != DB_OK) {
            std::cerr << "error: " << db_last_error_message() << "\n";
            return status_to_exit_code(st);
        }
        std::printf("# steady populations (m ascending), N=%d x=%.12g\n",
                    opt.n_atoms, *opt.x);
        for (int i = 0; i <= opt.n_atoms; ++i) {
            std::printf("m=%+.1f  p=%.12g\n", i - 0.5 * opt.n_atoms, pops[i]);
        }
    }

    db_run_summary summary;
    const db_status st = db_scenario_run(&spec, &summary);
    if (st != DB_OK) {
        std::cerr << "error (" << db_status_name(st)
                  << "): " << db_last_error_message() << "\n";
        return status_to_exit_code(st);
    }
    if (summary.failed_points > 0) {
        std::cerr << "warning: " << summary.failed_points << " of "
                  << summary.grid_points << " grid points failed\n";
        return 4;
    }
    std::printf("%s: %d grid point(s) in %.3f s -> %s\n", opt.scenario.c_str(),
                summary.grid_points, summary.wall_time_s,
                opt.out_path.empty() ? (opt.scenario + ".csv").c_str()
                                     : opt.out_path.c_str());
    return 0;
}
