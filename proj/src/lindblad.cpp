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

#include "dicke/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "dicke/errors.hpp"

namespace dicke {

StateCheck DensityMatrix::check() const {
    StateCheck c;
    c.hermiticity_error = 0.5 * (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    c.trace_error = std::abs(rho.trace() - Complex{1.0, 0.0});
    const Matrix sym = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues().minCoeff();
    return c;
}

void DensityMatrix::validate() const {
    require(rho.rows() == rho.cols() && rho.rows() >= 2,
            ErrorCode::dimension_mismatch, "density matrix must be square");
    const StateCheck c = check();
    require(c.hermiticity_error <= 1e-10, ErrorCode::invalid_argument,
            "density matrix is not Hermitian to 1e-10");
    require(c.trace_error <= 1e-10, ErrorCode::invalid_argument,
            "density matrix trace differs from 1 by more than 1e-10");
    require(c.min_eigenvalue >= -1e-8, ErrorCode::positivity,
            "density matrix has an eigenvalue below -1e-8");
}

DensityMatrix ground_state_bare(int n_atoms) {
    require(n_atoms >= 1, ErrorCode::invalid_argument, "n_atoms must be >= 1");
    DensityMatrix dm;
    dm.basis = Basis::bare;
    dm.rho = Matrix::Zero(n_atoms + 1, n_atoms + 1);
    dm.rho(0, 0) = 1.0;
    return dm;
}

DensityMatrix to_dressed(const DensityMatrix& bare, const RotationMatrix& rot) {
    require(bare.basis == Basis::bare, ErrorCode::invalid_argument,
            "to_dressed expects a bare-basis state");
    require(bare.rho.rows() == rot.u.rows(), ErrorCode::dimension_mismatch,
            "state and rotation dimensions disagree");
    return DensityMatrix{Basis::dressed, rot.u.adjoint() * bare.rho * rot.u};
}

DensityMatrix to_bare(const DensityMatrix& dressed, const RotationMatrix& rot) {
    require(dressed.basis == Basis::dressed, ErrorCode::invalid_argument,
            "to_bare expects a dressed-basis state");
    require(dressed.rho.rows() == rot.u.rows(), ErrorCode::dimension_mismatch,
            "state and rotation dimensions disagree");
    return DensityMatrix{Basis::bare, rot.u * dressed.rho * rot.u.adjoint()};
}

Matrix lindblad_dissipator(const Matrix& jump, const Matrix& rho) {
    require(jump.rows() == jump.cols() && rho.rows() == rho.cols()
                && jump.rows() == rho.rows(),
            ErrorCode::dimension_mismatch,
            "jump operator and state dimensions disagree");
    const Matrix jdj = jump.adjoint() * jump;
    return jump * rho * jump.adjoint() - 0.5 * (jdj * rho + rho * jdj);
}

Complex expectation(const Matrix& rho, const Matrix& obs) {
    require(rho.rows() == rho.cols() && obs.rows() == obs.cols()
                && rho.rows() == obs.rows(),
            ErrorCode::dimension_mismatch,
            "state and observable dimensions disagree");
    // Tr(rho obs) = sum_ij rho(i,j) obs(j,i)
    return (rho.transpose().cwiseProduct(obs)).sum();
}

// ----------------------------- generators -----------------------------

FullGenerator::FullGenerator(Matrix h, double gamma, const SpinOperators& ops)
    : h_(std::move(h)), gamma_(gamma), dim_(ops.dim) {
    require(gamma >= 0.0, ErrorCode::invalid_argument, "gamma must be >= 0");
    has_h_ = h_.size() > 0;
    if (has_h_) {
        require(h_.rows() == dim_ && h_.cols() == dim_,
                ErrorCode::dimension_mismatch,
                "Hamiltonian dimension does not match the spin operators");
    }
    const int d = dim_;
    const RealVector& c = ops.ladder;
    lower_outer_ = Matrix::Zero(d - 1, d - 1);
    for (int a = 0; a < d - 1; ++a)
        for (int b = 0; b < d - 1; ++b)
            lower_outer_(a, b) = gamma_ * c(a) * c(b);
    anticomm_ = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double di = (i >= 1) ? c(i - 1) * c(i - 1) : 0.0;
        for (int j = 0; j < d; ++j) {
            const double dj = (j >= 1) ? c(j - 1) * c(j - 1) : 0.0;
            anticomm_(i, j) = 0.5 * gamma_ * (di + dj);
        }
    }
}

void FullGenerator::operator()(const Matrix& rho, Matrix& out) const {
    const int d = dim_;
    if (has_h_) {
        out.noalias() = -kImaginaryUnit * (h_ * rho);
        out.noalias() += kImaginaryUnit * (rho * h_);
    } else {
        out.setZero(d, d);
    }
    if (gamma_ > 0.0) {
        // jm rho jp shifts the (i+1, j+1) block up-left, weighted by c_i c_j.
        out.topLeftCorner(d - 1, d - 1).array() +=
            lower_outer_.array() * rho.bottomRightCorner(d - 1, d - 1).array();
        out.array() -= anticomm_.array() * rho.array();
    }
}

SecularGenerator::SecularGenerator(const ModelParams& p, const DerivedParams& d,
                                   const SpinOperators& ops) {
    const double half = 0.5 * d.theta;
    const double s2 = std::sin(half) * std::sin(half);
    const double c2 = std::cos(half) * std::cos(half);
    const double sin_theta = std::sin(d.theta);
    precompute(d.omega_p, p.gamma0 * sin_theta * sin_theta,
               p.gamma_minus * s2 * s2, p.gamma_plus * c2 * c2, ops);
}

SecularGenerator::SecularGenerator(double omega_p, double dephasing_rate,
                                   double up_rate, double down_rate,
                                   const SpinOperators& ops) {
    precompute(omega_p, dephasing_rate, up_rate, down_rate, ops);
}

void SecularGenerator::precompute(double omega_p, double dephasing_rate,
                                  double up_rate, double down_rate,
                                  const SpinOperators& ops) {
    dim_ = ops.dim;
    const int d = dim_;
    const RealVector& c = ops.ladder;

    elementwise_ = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double zi = ops.m_value(i);
        const double ci2 = (i < d - 1) ? c(i) * c(i) : 0.0;   // (jm jp)_ii
        const double di2 = (i >= 1) ? c(i - 1) * c(i - 1) : 0.0; // (jp jm)_ii
        for (int j = 0; j < d; ++j) {
            const double zj = ops.m_value(j);
            const double cj2 = (j < d - 1) ? c(j) * c(j) : 0.0;
            const double dj2 = (j >= 1) ? c(j - 1) * c(j - 1) : 0.0;
            const double dz = zi - zj;
            elementwise_(i, j) =
                Complex{-0.5 * dephasing_rate * dz * dz
                            - 0.5 * up_rate * (ci2 + cj2)
                            - 0.5 * down_rate * (di2 + dj2),
                        -omega_p * dz};
        }
    }

    up_outer_ = Matrix::Zero(d - 1, d - 1);
    down_outer_ = Matrix::Zero(d - 1, d - 1);
    for (int a = 0; a < d - 1; ++a) {
        for (int b = 0; b < d - 1; ++b) {
            up_outer_(a, b) = up_rate * c(a) * c(b);
            down_outer_(a, b) = down_rate * c(a) * c(b);
        }
    }
}

void SecularGenerator::operator()(const Matrix& rho, Matrix& out) const {
    const int d = dim_;
    out.array() = elementwise_.array() * rho.array();
    // jp rho jm feeds population upward: out(i+1, j+1) += up(i,j) rho(i,j).
    out.bottomRightCorner(d - 1, d - 1).array() +=
        up_outer_.array() * rho.topLeftCorner(d - 1, d - 1).array();
    // jm rho jp feeds population downward: out(i, j) += down(i,j) rho(i+1,j+1).
    out.topLeftCorner(d - 1, d - 1).array() +=
        down_outer_.array() * rho.bottomRightCorner(d - 1, d - 1).array();
}

Matrix rhs_full(const DensityMatrix& rho, const Matrix& h1, double gamma,
                const SpinOperators& ops) {
    require(rho.basis == Basis::bare, ErrorCode::invalid_argument,
            "rhs_full expects a bare-basis state");
    FullGenerator gen(h1, gamma, ops);
    Matrix out(ops.dim, ops.dim);
    require(rho.rho.rows() == ops.dim, ErrorCode::dimension_mismatch,
            "state dimension does not match the spin operators");
    gen(rho.rho, out);
    return out;
}

Matrix rhs_secular(const DensityMatrix& rho, const ModelParams& p,
                   const DerivedParams& d, const SpinOperators& ops) {
    require(rho.basis == Basis::dressed, ErrorCode::invalid_argument,
            "rhs_secular expects a dressed-basis state");
    require(rho.rho.rows() == ops.dim, ErrorCode::dimension_mismatch,
            "state dimension does not match the spin operators");
    SecularGenerator gen(p, d, ops);
    Matrix out(ops.dim, ops.dim);
    gen(rho.rho, out);
    return out;
}

// ---------------------------- observables -----------------------------

ObservableSet make_observables(const SpinOperators& ops, Basis basis,
                               double theta) {
    ObservableSet set;
    set.n_atoms = ops.n_atoms;
    if (basis == Basis::bare) {
        set.h0 = ops.jz;
        set.jp_bare = ops.jp;
    } else {
        // Bare-frame operators conjugated into the dressed basis.
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        set.h0 = c * ops.jz + s * ops.jx;
        set.jp_bare = c * ops.jx - s * ops.jz + kImaginaryUnit * ops.jy;
    }
    set.h0_sq = set.h0 * set.h0;
    return set;
}

ObservableRecord ObservableSet::evaluate(double t, const Matrix& rho) const {
    ObservableRecord rec;
    rec.t = t;
    const double e = expectation(rho, h0).real();
    rec.energy_per_atom = (e + 0.5 * n_atoms) / n_atoms;
    rec.coherence_jp = expectation(rho, jp_bare);
    rec.energy_variance = expectation(rho, h0_sq).real() - e * e;
    return rec;
}

// ---------------------------- integration -----------------------------

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// b - b_hat, for the embedded 4th-order error estimate.
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

constexpr double kMinStep = 1e-14;
constexpr double kPositivityFloor = -1e-6;

double error_norm(const Matrix& err, const Matrix& y0, const Matrix& y1,
                  double abs_tol, double rel_tol) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < err.cols(); ++j) {
        for (Eigen::Index i = 0; i < err.rows(); ++i) {
            const double scale = abs_tol
                + rel_tol * std::max(std::abs(y0(i, j)), std::abs(y1(i, j)));
            worst = std::max(worst, std::abs(err(i, j)) / scale);
        }
    }
    return worst;
}

struct Sampler {
    Trajectory* traj;
    const ObservableSet* obs;
    bool store_states;

    void operator()(double t, const Matrix& y) const {
        const double trace_err = std::abs(y.trace() - Complex{1.0, 0.0});
        Eigen::SelfAdjointEigenSolver<Matrix> es(y, Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        require(min_eig >= kPositivityFloor, ErrorCode::positivity,
                "integration diverged: eigenvalue below -1e-6 at t="
                    + std::to_string(t));
        traj->times.push_back(t);
        traj->max_trace_error = std::max(traj->max_trace_error, trace_err);
        traj->min_eigenvalue = std::min(traj->min_eigenvalue, min_eig);
        if (store_states) traj->states.push_back(y);
        ObservableRecord rec;
        if (obs) rec = obs->evaluate(t, y);
        rec.t = t;
        rec.trace_error = trace_err;
        rec.min_eigenvalue = min_eig;
        traj->observables.push_back(rec);
    }
};

} // namespace

Trajectory integrate(const DensityMatrix& rho0, const RhsFn& rhs, double t_end,
                     const IntegratorConfig& cfg, double sample_every,
                     const ObservableSet* observables, bool store_states) {
    rho0.validate();
    require(t_end > 0.0, ErrorCode::invalid_argument, "t_end must be > 0");
    require(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0, ErrorCode::invalid_argument,
            "integrator tolerances must be > 0");

    Trajectory traj;
    traj.basis = rho0.basis;
    traj.n_atoms = static_cast<int>(rho0.rho.rows()) - 1;
    Sampler sample{&traj, observables, store_states};

    const double dt_sample = (sample_every > 0.0) ? sample_every : t_end;
    Matrix y = rho0.rho;
    sample(0.0, y);

    const Eigen::Index d = y.rows();
    Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), k5(d, d), k6(d, d), k7(d, d);
    Matrix ytmp(d, d), ynew(d, d), errm(d, d);

    double t = 0.0;
    long sample_idx = 1;
    double next_sample = std::min(dt_sample, t_end);

    const double max_step = (cfg.max_step > 0.0)
        ? cfg.max_step
        : std::numeric_limits<double>::infinity();

    const bool fixed = (cfg.scheme == Scheme::rk4_fixed);
    double h_fixed = 0.0;
    if (fixed) {
        h_fixed = (cfg.max_step > 0.0) ? cfg.max_step : dt_sample / 100.0;
        require(h_fixed > 0.0, ErrorCode::invalid_argument,
                "rk4_fixed needs a positive step (set max_step)");
    }

    rhs(y, k1);
    double h = std::min({0.01 * (1.0 + y.cwiseAbs().maxCoeff())
                             / (1e-12 + k1.cwiseAbs().maxCoeff()),
                         max_step, next_sample});
    if (fixed) h = h_fixed;

    while (t < t_end * (1.0 - 1e-15)) {
        const double t_target = next_sample;
        if (t_target - t < kMinStep) {
            // Snap over an interval too small to integrate.
            t = t_target;
        } else {
            double h_try = std::min({h, t_target - t, max_step});
            if (fixed) h_try = std::min(h_fixed, t_target - t);

            if (fixed) {
                // classic RK4
                rhs(y, k1);
                ytmp = y + (0.5 * h_try) * k1;
                rhs(ytmp, k2);
                ytmp = y + (0.5 * h_try) * k2;
                rhs(ytmp, k3);
                ytmp = y + h_try * k3;
                rhs(ytmp, k4);
                y += (h_try / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                t += h_try;
            } else {
                ytmp = y + (h_try * kA21) * k1;
                rhs(ytmp, k2);
                ytmp = y + h_try * (kA31 * k1 + kA32 * k2);
                rhs(ytmp, k3);
                ytmp = y + h_try * (kA41 * k1 + kA42 * k2 + kA43 * k3);
                rhs(ytmp, k4);
                ytmp = y + h_try * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4);
                rhs(ytmp, k5);
                ytmp = y + h_try
                    * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5);
                rhs(ytmp, k6);
                ynew = y + h_try
                    * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
                rhs(ynew, k7);
                errm = h_try
                    * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6
                       + kE7 * k7);
                double err = error_norm(errm, y, ynew, cfg.abs_tol, cfg.rel_tol);
                if (!std::isfinite(err)) err = 10.0;

                if (err <= 1.0) {
                    t += h_try;
                    y = ynew;
                    k1 = k7; // first-same-as-last
                    const double grow = (err == 0.0)
                        ? 5.0
                        : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
                    h = h_try * grow;
                } else {
                    const double shrink =
                        std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
                    h = h_try * shrink;
                    require(h >= kMinStep, ErrorCode::step_underflow,
                            "adaptive step fell below 1e-14 at t="
                                + std::to_string(t));
                    continue; // retry without advancing
                }
            }

            // Drift control: measure hermiticity error, then re-symmetrize.
            const double herm = 0.5 * (y - y.adjoint()).cwiseAbs().maxCoeff();
            traj.max_hermiticity_error =
                std::max(traj.max_hermiticity_error, herm);
            y = 0.5 * (y + Matrix(y.adjoint()));
        }

        if (t >= next_sample * (1.0 - 1e-15)) {
            sample(next_sample, y);
            ++sample_idx;
            next_sample = std::min(sample_idx * dt_sample, t_end);
            if (next_sample <= t * (1.0 + 1e-15) && t < t_end * (1.0 - 1e-15)) {
                next_sample = t_end;
            }
        }
    }

    if (!store_states) traj.states.push_back(y);
    return traj;
}

} // namespace dicke
