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

// charging_curve.hpp — Large-N analytic charging curve, its mean-field
// derivation (kept with exact coefficients as a validation oracle), and the
// average-power / final-charge tradeoff bound.
//
// Dimensionless time is tau = N * gamma_eff * t / 2. The per-atom battery
// charge (units omega0) along the charging transient is
//   E(t) = 1/2 - cos(theta) tanh(tau + phi0)/2
//        - sin(theta) cos(omega_p t) / (2 cosh(tau + phi0)),
// with phi0 = atanh(cos theta). Hyperbolic terms are evaluated through
// addition formulas so E(0) = 0 holds to machine precision and large tau
// cannot overflow.

#pragma once

#include <vector>

#include "dicke/model.hpp"
#include "dicke/types.hpp"

namespace dicke {

/// Per-atom battery charge at time t from the large-N analytic solution.
double energy_analytic(double t, int n_atoms, const DerivedParams& d);

/// Monotone lower envelope of the analytic charge as a function of the
/// dimensionless time tau (the fast oscillation replaced by its worst case).
double energy_lower_bound(double tau, double theta);

/// Dimensionless time at which the lower envelope reaches 90% of its
/// steady-state value sin^2(theta/2). Bracketing + bisection on [0, 100] to
/// 1e-12; throws ErrorCode::bracket if no sign change exists.
double tau90(double theta);

enum class PowerBranch { x_above_one, x_below_one };

struct PowerBoundPoint {
    double theta = 0.0;
    double charge_fraction = 0.0; // final charge / (N omega0)
    double bound = 0.0;           // lower bound on P_av / (N^2 omega0 gamma_minus)
    double tau90 = 0.0;
};

/// Average-power lower bound versus final charge for rate ratio r, sampled at
/// the given angles. On the x>1 branch the charge fraction is sin^2(theta/2)
/// and the bound is 0.9 E (r(1-E)^2 - E^2) / (2 tau90); the mirrored x<1
/// branch uses cos^2(theta/2) and E((1-E)^2 - r E^2). Angles must keep
/// gamma_eff >= 0 on the chosen branch.
std::vector<PowerBoundPoint> power_bound_curve(double r,
                                               const std::vector<double>& thetas,
                                               PowerBranch branch);
PowerBoundPoint power_bound_point(double r, double theta, PowerBranch branch);

// ----------------------- mean-field validation oracle ------------------

// Exact (finite-N) coefficients of the closed population equation
//   d<n>/dt = kappa [ (1-x)(j(j+1) - <n>^2) - (1+x)<n> ],
// whose solution is <n>(t) = a - b tanh(c t + phi0).
struct MeanFieldCoeffs {
    double a = 0.0;    // (x+1) / (2(x-1))
    double b = 0.0;    // sqrt(j(j+1) + a^2)
    double c = 0.0;    // gamma_eff * b
    double phi0 = 0.0; // atanh((a + (N/2) cos theta)/b), exact initial phase
    double y0 = 0.0;   // initial coherence amplitude -(N/2) sin theta
};

MeanFieldCoeffs meanfield_coeffs(int n_atoms, const DerivedParams& d);

/// <n>(t) = a - b tanh(c t + phi0) with exact coefficients.
double meanfield_population(double t, const MeanFieldCoeffs& mf);

/// Residual of the closed population equation under the substitution
/// <n^2> -> <n>^2, evaluated on the analytic solution. Vanishes identically
/// up to rounding; used as a self-test.
double meanfield_ode_residual(double t, int n_atoms, const ModelParams& p,
                              const DerivedParams& d);

/// Coherence amplitude y(t) of the one-off-diagonal sum, with the exact
/// finite-N decay corrections retained. Rejects x = 1.
Complex coherence_solution(double t, int n_atoms, const ModelParams& p,
                           const DerivedParams& d);

/// Large-N reduced form -(N/2) cos(omega_p t) / cosh(N gamma_eff t/2 + phi0)
/// (the sin(theta) amplitude cancels against cosh(phi0) = 1/sin(theta)).
double coherence_reduced(double t, int n_atoms, const DerivedParams& d);

// ------------------------------- power ---------------------------------

/// Instantaneous total charging power dE_total/dt (units N-free: omega0
/// gamma_minus when rates are in gamma_minus), by analytic differentiation
/// of the charging curve.
double analytic_power(double t, int n_atoms, const DerivedParams& d);

/// Non-oscillating envelope power at dimensionless time tau:
/// (N^2 gamma_eff / 2) d/dtau [lower envelope]. Scales exactly as N^2 at
/// fixed tau.
double power_envelope(double tau, int n_atoms, const DerivedParams& d);

} // namespace dicke
