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

// scenario.hpp — Batch scenario runner: canned parameter regimes for the
// standard plots, single-trajectory exports, and parallel parameter sweeps.
// All outputs are CSV files (header row names the units) plus a JSON run
// summary next to each CSV. Everything is deterministic: identical specs
// produce byte-identical CSV data.

#pragma once

#include <string>
#include <vector>

#include "dicke/discharge.hpp"
#include "dicke/lindblad.hpp"
#include "dicke/model.hpp"

namespace dicke {

enum class ScenarioKind { fig1, fig2, fig3, fig4, steady, charge, discharge, sweep };

enum class GeneratorKind { secular, full };

ScenarioKind scenario_from_name(const std::string& name);
const char* scenario_name(ScenarioKind k);

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::steady;
    ModelParams params;
    IntegratorConfig integrator;
    double t_end = 0.0;        // <= 0: scenario-specific default
    double sample_every = 0.0; // <= 0: scenario-specific default
    std::string out_path;      // empty: "<scenario>.csv"
    DischargeFrame frame = DischargeFrame::drive_off;
    GeneratorKind generator = GeneratorKind::secular;

    // Optional overrides. theta fixes the mixing angle by solving
    // delta = rabi / tan(theta) at the given rabi; x bypasses the rate
    // parameters entirely (steady populations only need N and x).
    bool has_theta = false;
    double theta = 0.0;
    bool has_x = false;
    double x = 0.0;

    // Grids for the sweep and figure scenarios.
    std::vector<int> n_list;
    std::vector<double> r_list;
    double theta_min = 0.0, theta_max = 0.0;
    int theta_steps = 0;

    int threads = 0;            // <= 0: hardware concurrency
    double rabi_per_atom = 0.0; // <= 0: default 40 (drive scaled with N)
};

struct RunSummary {
    std::string scenario;
    std::vector<std::string> outputs;
    double wall_time_s = 0.0;
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 1.0;
    int grid_points = 0;
    int failed_points = 0;
};

/// Resolves the effective model parameters of a spec (theta override applied).
ModelParams resolve_params(const ScenarioSpec& spec);

/// Runs one scenario, writing its CSV output(s) and a JSON summary.
RunSummary run_scenario(const ScenarioSpec& spec);

struct ChargeRun {
    Trajectory trajectory;
    DerivedParams derived;
};

/// One charging trajectory from the uncharged battery. The secular generator
/// runs in the dressed basis (the mean-field initial value -(N/2)cos(theta)
/// is asserted at startup); the full generator runs in the bare basis.
ChargeRun run_charge(const ModelParams& p, GeneratorKind kind, double t_end,
                     double sample_every, const IntegratorConfig& cfg,
                     bool store_states = false);

/// Trajectory export in the standard column layout.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

} // namespace dicke
