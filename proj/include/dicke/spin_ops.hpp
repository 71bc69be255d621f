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

// spin_ops.hpp — Collective angular-momentum operators on the symmetric
// subspace of N two-level atoms (j = N/2, dimension N+1), plus the basis
// rotation about y used to move between the bare and dressed frames.
//
// Basis ordering is ascending in m: index 0 corresponds to m = -N/2 (the
// collective ground state), index N to m = +N/2.

#pragma once

#include "dicke/types.hpp"

namespace dicke {

struct SpinOperators {
    int n_atoms = 0;
    int dim = 0;          // n_atoms + 1
    Matrix jz, jp, jm, jx, jy;

    // Ladder amplitudes c_i = sqrt(j(j+1) - m_i(m_i+1)), i = 0 .. dim-2,
    // i.e. jp(i+1, i) = c_i. Kept alongside the dense matrices because the
    // master-equation right-hand sides exploit the banded structure.
    RealVector ladder;

    // m value at basis index i.
    double m_value(int i) const { return i - 0.5 * n_atoms; }
};

/// Builds the dense collective spin operators for n_atoms >= 1.
SpinOperators build_spin_operators(int n_atoms);

struct RotationMatrix {
    double theta = 0.0;
    Matrix u;             // exp(i * jy * theta), unitary (in fact real orthogonal)
};

/// Rotation by theta (in [0, pi]) about y: u = exp(i jy theta), so that
/// u jz u^dag = cos(theta) jz - sin(theta) jx.
RotationMatrix rotation_matrix(const SpinOperators& ops, double theta);

/// Conjugates a by the rotation: u a u^dag.
Matrix rotate_operator(const RotationMatrix& rot, const Matrix& a);

/// Scaling-and-squaring Pade matrix exponential (order 13, Higham scaling).
/// Exposed so tests can cross-check it against the closed-form rotation.
Matrix matrix_exponential(const Matrix& a);

} // namespace dicke
