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

// discharge.hpp — Superradiant energy release from the charged steady state:
// collective decay at rate gamma0, the coherently emitted power
// dW/dt = gamma0 omega0 |<J+>|^2, and its cumulative integral.

#pragma once

#include <vector>

#include "dicke/lindblad.hpp"
#include "dicke/model.hpp"
#include "dicke/steady_state.hpp"

namespace dicke {

/// <J+> of a dressed-basis state, evaluated through the rotated-operator
/// combination cos(theta) jx - sin(theta) jz + i jy. For the diagonal steady
/// state this tends to (N/2) sin(theta) at large N.
Complex initial_coherence(const DensityMatrix& rho_dressed,
                          const DerivedParams& d, const SpinOperators& ops);

/// Charged steady state expressed in the bare basis: u diag(p) u^dag.
DensityMatrix steady_state_bare(const ModelParams& p, const DerivedParams& d,
                                const SpinOperators& ops,
                                const RotationMatrix& rot);

enum class DischargeFrame {
    drive_off, // pump removed; H = 0 in the frame rotating at omega0
    driven,    // drive kept on during emission
};

struct DischargeResult {
    Trajectory trajectory;               // bare basis
    std::vector<double> coherent_power;  // gamma0 |<J+>|^2, units omega0 gamma0
    std::vector<double> coherent_energy; // trapezoid cumulative, units omega0
    double stored_energy_initial = 0.0;  // battery charge E(0), units omega0
    double coherent_fraction = 0.0;      // W(end) / E(0)
};

/// Integrates the collective-decay master equation with rate gamma0 from
/// rho0 (bare basis). sample_every <= 0 picks a cadence of 0.01/(N gamma0)
/// so the quadrature resolves the superradiant burst.
DischargeResult run_discharge(const DensityMatrix& rho0_bare,
                              const ModelParams& p, DischargeFrame frame,
                              double t_end, const IntegratorConfig& cfg,
                              double sample_every = 0.0);

/// Least-squares exponent of the power law peak(Var H0) ~ N^s over the given
/// atom numbers, each discharged from its charged steady state.
double variance_scaling_exponent(const std::vector<int>& n_list,
                                 double theta, double r, double gamma0,
                                 const IntegratorConfig& cfg);

} // namespace dicke
