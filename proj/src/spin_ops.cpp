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

#include "dicke/spin_ops.hpp"

#include <cmath>

#include "dicke/errors.hpp"

namespace dicke {

SpinOperators build_spin_operators(int n_atoms) {
    require(n_atoms >= 1, ErrorCode::invalid_argument,
            "n_atoms must be >= 1 (empty battery rejected)");

    SpinOperators ops;
    ops.n_atoms = n_atoms;
    ops.dim = n_atoms + 1;
    const int d = ops.dim;
    const double j = 0.5 * n_atoms;

    ops.jz = Matrix::Zero(d, d);
    ops.jp = Matrix::Zero(d, d);
    ops.ladder = RealVector::Zero(d - 1);

    for (int i = 0; i < d; ++i) {
        const double m = i - j;
        ops.jz(i, i) = m;
        if (i + 1 < d) {
            // <m+1| J+ |m> = sqrt(j(j+1) - m(m+1))
            const double c = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
            ops.ladder(i) = c;
            ops.jp(i + 1, i) = c;
        }
    }
    ops.jm = ops.jp.adjoint();
    ops.jx = 0.5 * (ops.jp + ops.jm);
    ops.jy = (ops.jp - ops.jm) / (2.0 * kImaginaryUnit);
    return ops;
}

namespace {

// Pade order-13 coefficients for expm (Higham 2005).
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

} // namespace

Matrix matrix_exponential(const Matrix& a) {
    require(a.rows() == a.cols(), ErrorCode::dimension_mismatch,
            "matrix_exponential requires a square matrix");
    const Eigen::Index d = a.rows();
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff(); // inf-norm
    // theta_13 from Higham's table; below it the [13/13] Pade error is < eps.
    const double theta13 = 5.371920351148152;
    int squarings = 0;
    Matrix as = a;
    if (norm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
        as *= std::pow(2.0, -squarings);
    }

    const Matrix a2 = as * as;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;
    const Matrix ident = Matrix::Identity(d, d);

    const Matrix u_inner = a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2)
        + kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 + kPade13[1] * ident;
    const Matrix u = as * u_inner;
    const Matrix v = a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2)
        + kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 + kPade13[0] * ident;

    Matrix r = (v - u).partialPivLu().solve(v + u);
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

RotationMatrix rotation_matrix(const SpinOperators& ops, double theta) {
    require(theta >= 0.0 && theta <= M_PI, ErrorCode::invalid_argument,
            "rotation angle must lie in [0, pi]");
    RotationMatrix rot;
    rot.theta = theta;
    if (theta == 0.0) {
        rot.u = Matrix::Identity(ops.dim, ops.dim);
        return rot;
    }
    rot.u = matrix_exponential(kImaginaryUnit * theta * ops.jy);
    return rot;
}

Matrix rotate_operator(const RotationMatrix& rot, const Matrix& a) {
    require(a.rows() == a.cols() && a.rows() == rot.u.rows(),
            ErrorCode::dimension_mismatch,
            "operator dimension does not match rotation dimension");
    return rot.u * a * rot.u.adjoint();
}

} // namespace dicke
