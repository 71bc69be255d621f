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

#include "dicke/model.hpp"

#include <cmath>

#include "dicke/errors.hpp"

namespace dicke {

void ModelParams::validate() const {
    require(n_atoms >= 1, ErrorCode::invalid_argument, "n_atoms must be >= 1");
    require(rabi >= 0.0, ErrorCode::invalid_argument, "rabi must be >= 0");
    require(gamma0 >= 0.0 && gamma_plus >= 0.0, ErrorCode::invalid_argument,
            "decay rates must be >= 0");
    require(gamma_minus > 0.0, ErrorCode::invalid_argument,
            "gamma_minus must be > 0 (it is the rate unit)");
    require(!(delta == 0.0 && rabi == 0.0), ErrorCode::invalid_argument,
            "delta and rabi cannot both vanish (omega_p must be > 0)");
    require(std::isfinite(delta) && std::isfinite(rabi) && std::isfinite(gamma0)
                && std::isfinite(gamma_plus) && std::isfinite(gamma_minus),
            ErrorCode::invalid_argument, "parameters must be finite");
}

DerivedParams derive(const ModelParams& p) {
    p.validate();
    DerivedParams d;
    d.omega_p = std::hypot(p.delta, p.rabi);
    d.theta = std::atan2(p.rabi, p.delta); // rabi >= 0 puts theta in [0, pi]
    require(d.theta > 0.0 && d.theta < M_PI, ErrorCode::degenerate_angle,
            "theta = 0 or pi: detailed-balance parameter x is singular");
    d.ratio_r = p.gamma_plus / p.gamma_minus;

    const double half = 0.5 * d.theta;
    const double cot = std::cos(half) / std::sin(half);
    d.x = d.ratio_r * cot * cot * cot * cot;
    require(std::isfinite(d.x) && d.x > 0.0, ErrorCode::degenerate_angle,
            "x = r cot^4(theta/2) is not finite");

    const double s2 = std::sin(half) * std::sin(half);
    const double c2 = std::cos(half) * std::cos(half);
    d.gamma_eff = p.gamma_plus * c2 * c2 - p.gamma_minus * s2 * s2;
    d.phi0 = std::atanh(std::cos(d.theta));
    return d;
}

Hamiltonians build_hamiltonians(const ModelParams& p, const SpinOperators& ops) {
    p.validate();
    require(ops.n_atoms == p.n_atoms, ErrorCode::dimension_mismatch,
            "spin operators were built for a different n_atoms");
    Hamiltonians h;
    h.h0 = p.omega0 * ops.jz;
    h.h1 = p.delta * ops.jz - p.rabi * ops.jx;
    h.h1_dressed = std::hypot(p.delta, p.rabi) * ops.jz;
    return h;
}

double jminus_decomposition_residual(const SpinOperators& ops,
                                     const RotationMatrix& rot) {
    const double theta = rot.theta;
    const Matrix jz_r = rotate_operator(rot, ops.jz);
    const Matrix jp_r = rotate_operator(rot, ops.jp);
    const Matrix jm_r = rotate_operator(rot, ops.jm);
    const Matrix reconstructed = -std::sin(theta) * jz_r
        - 0.5 * (1.0 - std::cos(theta)) * jp_r
        + 0.5 * (1.0 + std::cos(theta)) * jm_r;
    return (ops.jm - reconstructed).cwiseAbs().maxCoeff();
}

} // namespace dicke
