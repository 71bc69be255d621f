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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dicke/errors.hpp"
#include "dicke/scenario.hpp"
#include "dicke/steady_state.hpp"

using namespace dicke;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        rows.push_back(cells);
    }
    return rows;
}

int column_index(const std::vector<std::string>& header,
                 const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::string tmp_path(const std::string& name) {
    return std::string("scenario_test_") + name;
}

} // namespace

TEST_CASE("scenario names round-trip and bad names are rejected") {
    for (const char* name : {"fig1", "fig2", "fig3", "fig4", "steady",
                             "charge", "discharge", "sweep"}) {
        CHECK(std::string(scenario_name(scenario_from_name(name))) == name);
    }
    CHECK_THROWS_AS(scenario_from_name("fig9"), Error);
}

TEST_CASE("steady scenario: single-atom populations at x = 2") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::steady;
    spec.params.n_atoms = 1;
    spec.has_x = true;
    spec.x = 2.0;
    spec.out_path = tmp_path("steady.csv");
    const RunSummary sum = run_scenario(spec);
    CHECK(sum.failed_points == 0);
    const auto rows = read_csv(spec.out_path);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][0] == "m");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(std::stod(rows[2][1]) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("charge scenario: long-time energy equals the steady value") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::charge;
    spec.params.n_atoms = 6;
    spec.params.gamma_plus = 10.0;
    spec.params.gamma_minus = 1.0;
    spec.params.gamma0 = 1.0;
    spec.params.rabi = 40.0;
    spec.has_theta = true;
    spec.theta = 1.87;
    spec.t_end = 8.1; // tau ~ 20: deep into the steady state
    spec.out_path = tmp_path("charge.csv");
    const RunSummary sum = run_scenario(spec);
    CHECK(sum.max_trace_error <= 1e-8);

    const auto rows = read_csv(spec.out_path);
    const int e_col = column_index(rows[0], "energy_per_atom_in_omega0");
    REQUIRE(e_col >= 0);
    const double final_energy = std::stod(rows.back()[e_col]);

    const DerivedParams d = derive(resolve_params(spec));
    const double steady = steady_charge(6, d.x, d.theta) / 6.0;
    CHECK(final_energy == doctest::Approx(steady).epsilon(1e-6));
}

TEST_CASE("charge scenario: full generator route works too") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::charge;
    spec.generator = GeneratorKind::full;
    spec.params.n_atoms = 2;
    spec.params.gamma_plus = 2.0;
    spec.params.gamma_minus = 1.0;
    spec.params.rabi = 30.0;
    spec.has_theta = true;
    spec.theta = 1.2;
    spec.t_end = 3.0;
    spec.out_path = tmp_path("charge_full.csv");
    const RunSummary sum = run_scenario(spec);
    CHECK(sum.grid_points == 1);
    CHECK(sum.min_eigenvalue >= -1e-6);
}

TEST_CASE("fig1 scenario: curve shape and column contract") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::fig1;
    spec.out_path = tmp_path("fig1.csv");
    run_scenario(spec);
    const auto rows = read_csv(spec.out_path);
    REQUIRE(rows.size() > 100);
    CHECK(column_index(rows[0], "ergotropy_per_atom_exact_in_omega0") >= 0);
    // exact and closed-form columns agree row by row
    const int xi = column_index(rows[0], "x");
    const int ei = column_index(rows[0], "ergotropy_per_atom_exact_in_omega0");
    const int ci = column_index(rows[0], "ergotropy_per_atom_closed_in_omega0");
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(std::stod(rows[k][ei])
              == doctest::Approx(std::stod(rows[k][ci])).epsilon(1e-9).scale(1.0));
        CHECK(std::stod(rows[k][xi]) > 0.0);
    }
}

TEST_CASE("fig3 scenario: tau90 column holds the near-constant value on the "
          "small-angle window and stays finite elsewhere") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::fig3;
    spec.out_path = tmp_path("fig3.csv");
    run_scenario(spec);
    const auto rows = read_csv(spec.out_path);
    const int ti = column_index(rows[0], "theta_in_rad");
    const int t90i = column_index(rows[0], "tau90_dimensionless");
    const int bi = column_index(rows[0], "power_bound_in_n2_omega0_gamma_minus");
    REQUIRE(ti >= 0);
    REQUIRE(t90i >= 0);
    REQUIRE(bi >= 0);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double theta = std::stod(rows[k][ti]);
        const double t90 = std::stod(rows[k][t90i]);
        CHECK(t90 > 2.9);
        CHECK(t90 < 3.2);
        if (theta <= 1.05) CHECK(std::abs(t90 - 2.973) <= 0.01);
        CHECK(std::stod(rows[k][bi]) >= -1e-12);
    }
}

TEST_CASE("sweep scenario: deterministic rows, N^2 envelope scaling, "
          "duplicate points identical") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::sweep;
    spec.params.n_atoms = 4;
    spec.params.gamma_plus = 10.0;
    spec.params.gamma_minus = 1.0;
    spec.params.rabi = 1.0;
    spec.has_theta = true;
    spec.theta = 1.87;
    spec.n_list = {4, 8, 8};
    spec.out_path = tmp_path("sweep.csv");
    const RunSummary sum = run_scenario(spec);
    CHECK(sum.failed_points == 0);
    CHECK(sum.grid_points == 3);

    const auto rows = read_csv(spec.out_path);
    REQUIRE(rows.size() == 4);
    const int pi = column_index(rows[0], "power_env_tau_one_in_omega0_gamma_minus");
    REQUIRE(pi >= 0);
    const double p4 = std::stod(rows[1][pi]);
    const double p8 = std::stod(rows[2][pi]);
    CHECK(p8 == doctest::Approx(4.0 * p4).epsilon(1e-10));
    // duplicate grid points produce byte-identical rows
    CHECK(rows[2] == rows[3]);

    // a second run of the same spec is byte-identical
    const std::string first = slurp(spec.out_path);
    run_scenario(spec);
    CHECK(slurp(spec.out_path) == first);
}

TEST_CASE("sweep scenario: a one-point grid reproduces the single-point "
          "computation") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::sweep;
    spec.params.n_atoms = 6;
    spec.params.gamma_plus = 10.0;
    spec.params.gamma_minus = 1.0;
    spec.params.rabi = 1.0;
    spec.has_theta = true;
    spec.theta = 1.87;
    spec.out_path = tmp_path("sweep_one.csv");
    const RunSummary sum = run_scenario(spec);
    CHECK(sum.grid_points == 1);
    const auto rows = read_csv(spec.out_path);
    REQUIRE(rows.size() == 2);
    const int ei = column_index(rows[0], "ergotropy_per_atom_exact_in_omega0");
    REQUIRE(ei >= 0);
    const DerivedParams d = derive(resolve_params(spec));
    const ErgotropyReport rep = ergotropy_exact(6, d.x, d.theta);
    CHECK(std::stod(rows[1][ei])
          == doctest::Approx(rep.ergotropy_per_atom).epsilon(1e-11));
}

TEST_CASE("sweep scenario: failed points carry an error tag and the run "
          "continues") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::sweep;
    spec.params.n_atoms = 2;
    spec.params.rabi = 1.0;
    spec.params.gamma_plus = 1.0;
    spec.params.gamma_minus = 1.0;
    spec.has_theta = true;
    spec.theta = 1.0;
    // second r value is invalid (negative rate)
    spec.r_list = {1.0, -2.0};
    spec.out_path = tmp_path("sweep_fail.csv");
    const RunSummary sum = run_scenario(spec);
    CHECK(sum.grid_points == 2);
    CHECK(sum.failed_points == 1);
    const auto rows = read_csv(spec.out_path);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].back() == "ok");
    CHECK(rows[2].back().rfind("error:", 0) == 0);
}

TEST_CASE("fig2 scenario: small instance runs and the overlay columns exist") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::fig2;
    spec.n_list = {4};
    spec.rabi_per_atom = 20.0;
    spec.out_path = tmp_path("fig2.csv");
    const RunSummary sum = run_scenario(spec);
    CHECK(sum.max_trace_error <= 1e-8);
    const auto rows = read_csv(spec.out_path);
    const int num = column_index(rows[0], "energy_per_atom_numeric_in_omega0");
    const int ana = column_index(rows[0], "energy_per_atom_analytic_in_omega0");
    const int low = column_index(rows[0], "energy_per_atom_lower_bound_in_omega0");
    REQUIRE(num >= 0);
    REQUIRE(ana >= 0);
    REQUIRE(low >= 0);
    // Both overlays start at zero charge and end near the plateau.
    CHECK(std::stod(rows[1][num]) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(std::stod(rows[1][ana]) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    const double plateau = std::pow(std::sin(0.5 * 1.87), 2);
    CHECK(std::stod(rows.back()[ana]) == doctest::Approx(plateau).epsilon(0.01));
}

TEST_CASE("fig4 scenario: stored-energy reference matches the steady value") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::fig4;
    spec.n_list = {2};
    spec.out_path = tmp_path("fig4.csv");
    run_scenario(spec);
    const auto rows = read_csv(spec.out_path);
    const int si = column_index(rows[0], "stored_energy_total_in_omega0");
    REQUIRE(si >= 0);
    const double x = 10.0 * std::pow(1.0 / std::tan(0.5 * 1.87), 4);
    CHECK(std::stod(rows[1][si])
          == doctest::Approx(steady_charge(2, x, 1.87)).epsilon(1e-9));
}

TEST_CASE("summary JSON is written next to the CSV") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::steady;
    spec.params.n_atoms = 2;
    spec.has_x = true;
    spec.x = 3.0;
    spec.out_path = tmp_path("steady_sum.csv");
    const RunSummary sum = run_scenario(spec);
    REQUIRE(sum.outputs.size() == 2);
    const std::string js = slurp(spec.out_path + ".summary.json");
    CHECK(js.find("\"scenario\": \"steady\"") != std::string::npos);
    CHECK(js.find("wall_time_s") != std::string::npos);
    CHECK(js.find("invariants") != std::string::npos);
}

TEST_CASE("trajectory CSV export uses the standard columns") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::charge;
    spec.params.n_atoms = 2;
    spec.params.gamma_plus = 5.0;
    spec.params.rabi = 10.0;
    spec.has_theta = true;
    spec.theta = 1.0;
    spec.t_end = 1.0;
    spec.out_path = tmp_path("traj.csv");
    run_scenario(spec);
    const auto rows = read_csv(spec.out_path);
    const std::vector<std::string> expect = {
        "t_in_inverse_gamma_minus", "energy_per_atom_in_omega0", "re_jp",
        "im_jp", "energy_variance_in_omega0_sq", "trace_error", "min_eigval"};
    CHECK(rows[0] == expect);
}
