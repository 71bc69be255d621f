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

// steady_state.hpp — Detailed-balance steady state of the secular master
// equation, stored energy, passive-state construction and ergotropy.
//
// The steady populations over the dressed levels m = -N/2 .. N/2 are
// p_m ∝ x^(N/2 - m) with x = r cot^4(theta/2); adjacent levels satisfy
// p_{m+1}/p_m = 1/x exactly. All power sums are evaluated in log space so
// that large N and extreme x stay representable.

#pragma once

#include <vector>

#include "dicke/model.hpp"

namespace dicke {

struct ErgotropyReport {
    std::vector<double> populations;   // over m ascending (index 0 = -N/2)
    double energy_ss = 0.0;            // Tr(rho_ss H0) in units omega0
    double passive_energy = 0.0;       // Tr(rho_passive H0) in units omega0
    double ergotropy = 0.0;            // energy_ss - passive_energy, total
    double ergotropy_per_atom = 0.0;
    double ergotropy_per_atom_closed = 0.0; // geometric-series closed form
    double x = 0.0;
    double theta = 0.0;
    double r = 0.0;                    // echo: x tan^4(theta/2)
};

/// Steady populations over m ascending. Rejects non-finite or non-positive x.
std::vector<double> steady_populations(int n_atoms, double x);

/// Tr(rho_ss H0) in units omega0: cos(theta) * sum_m m p_m.
double steady_energy(int n_atoms, double x, double theta);

/// Battery charge of the steady state in units omega0: energy measured from
/// the bare ground level, steady_energy + N/2.
double steady_charge(int n_atoms, double x, double theta);

/// Full report: exact sums, brute-force passive state and the closed form.
ErgotropyReport ergotropy_exact(int n_atoms, double x, double theta);

/// Closed-form ergotropy per atom. Uses the geometric-series expression away
/// from x = 1 and the exact finite sums when |x - 1| <= 1e-6, where the
/// (x - 1) denominators are removable.
double ergotropy_per_atom_closed_form(int n_atoms, double x, double theta);

/// Large-N ergotropy per atom: cos^2(theta/2) for x < 1, sin^2(theta/2) for
/// x > 1; cross-checked against the equivalent 1/(1 + sqrt(r/x)) forms.
/// Rejects x = 1 (branch point). Inputs must satisfy x = r cot^4(theta/2).
double ergotropy_asymptotic(double x, double theta, double r);

} // namespace dicke
