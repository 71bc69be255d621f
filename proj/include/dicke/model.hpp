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

// model.hpp — Physical parameters of the driven, collectively decaying
// battery, the derived dressed-frame quantities, and the Hamiltonians.
//
// Conventions: gamma_minus > 0 is the rate unit; omega0 is informational
// (energies are reported per atom in units of omega0); hbar = 1.

#pragma once

#include "dicke/spin_ops.hpp"
#include "dicke/types.hpp"

namespace dicke {

struct ModelParams {
    int n_atoms = 1;
    double omega0 = 1.0;       // atomic frequency, reporting scale only
    double delta = 0.0;        // detuning omega0 - omega_pump
    double rabi = 0.0;         // Rabi frequency of the drive, >= 0
    double gamma0 = 1.0;       // decay rate at the pump frequency
    double gamma_plus = 1.0;   // decay rate at omega_pump + omega_p
    double gamma_minus = 1.0;  // decay rate at omega_pump - omega_p (rate unit)

    void validate() const;
};

struct DerivedParams {
    double omega_p = 0.0;   // generalized Rabi frequency sqrt(delta^2 + rabi^2)
    double theta = 0.0;     // mixing angle atan2(rabi, delta), in (0, pi)
    double ratio_r = 0.0;   // gamma_plus / gamma_minus
    double x = 0.0;         // ratio_r * cot^4(theta/2), detailed-balance parameter
    double gamma_eff = 0.0; // gamma_plus cos^4(theta/2) - gamma_minus sin^4(theta/2)
    double phi0 = 0.0;      // atanh(cos theta)
};

/// Derives the dressed-frame quantities. Throws ErrorCode::degenerate_angle
/// when theta lands on 0 or pi (x diverges or vanishes there).
DerivedParams derive(const ModelParams& p);

struct Hamiltonians {
    Matrix h0;         // omega0 * jz
    Matrix h1;         // delta * jz - rabi * jx (frame rotating at the pump)
    Matrix h1_dressed; // omega_p * jz, i.e. h1 expressed in its own eigenbasis
};

Hamiltonians build_hamiltonians(const ModelParams& p, const SpinOperators& ops);

/// Elementwise max-abs residual of the lowering-operator decomposition in the
/// rotated basis:
///   jm = -sin(theta) jz' - (1-cos(theta))/2 jp' + (1+cos(theta))/2 jm'
/// with primed operators obtained by conjugating with the rotation. Used as a
/// self-test of the dressed-frame bookkeeping.
double jminus_decomposition_residual(const SpinOperators& ops,
                                     const RotationMatrix& rot);

} // namespace dicke
