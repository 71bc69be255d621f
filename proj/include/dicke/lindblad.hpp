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

// lindblad.hpp — Master-equation right-hand sides (full collective decay and
// its secular approximation in the dressed frame) and an embedded adaptive
// Runge-Kutta integrator for density-matrix trajectories.
//
// The full generator acts in the bare basis; the secular generator acts in
// the dressed basis, where the rotated operators have the standard
// diagonal/ladder matrix form. Conversion between bases happens only when
// observables are evaluated.

#pragma once

#include <functional>
#include <vector>

#include "dicke/model.hpp"
#include "dicke/spin_ops.hpp"
#include "dicke/types.hpp"

namespace dicke {

enum class Basis { bare, dressed };

struct StateCheck {
    double hermiticity_error = 0.0; // max |rho - rho^dag| / 2
    double trace_error = 0.0;       // |Tr(rho) - 1|
    double min_eigenvalue = 0.0;
};

struct DensityMatrix {
    Basis basis = Basis::bare;
    Matrix rho;

    StateCheck check() const;
    // Throws unless Hermitian to 1e-10, unit trace to 1e-10 and
    // min eigenvalue >= -1e-8.
    void validate() const;
};

/// |m = -N/2><-N/2| in the bare basis (the uncharged battery).
DensityMatrix ground_state_bare(int n_atoms);

/// Same physical state expressed in the dressed basis: u^dag rho u.
DensityMatrix to_dressed(const DensityMatrix& bare, const RotationMatrix& rot);

/// Inverse transformation: u rho' u^dag.
DensityMatrix to_bare(const DensityMatrix& dressed, const RotationMatrix& rot);

/// Generic dissipator  L rho L^dag - (L^dag L rho + rho L^dag L)/2.
Matrix lindblad_dissipator(const Matrix& jump, const Matrix& rho);

/// Tr(rho * obs), evaluated without forming the product matrix.
Complex expectation(const Matrix& rho, const Matrix& obs);

// ----------------------------- generators -----------------------------

using RhsFn = std::function<void(const Matrix&, Matrix&)>;

// Full master equation in the bare basis:
//   drho/dt = -i [h, rho] + gamma D[jm] rho.
// The dissipator uses the banded structure of jm; the commutator is dense.
class FullGenerator {
public:
    FullGenerator(Matrix h, double gamma, const SpinOperators& ops);
    void operator()(const Matrix& rho, Matrix& out) const;
    int dim() const { return dim_; }

private:
    Matrix h_;
    bool has_h_ = false;
    double gamma_ = 0.0;
    int dim_ = 0;
    Matrix lower_outer_;  // c_i c_j, scaled by gamma
    Matrix anticomm_;     // (d_i + d_j)/2 with d_i = c_{i-1}^2, scaled
};

// Secular master equation in the dressed basis:
//   drho/dt = -i omega_p [jz, rho] + gamma0 sin^2(theta) D[jz] rho
//           + gamma_minus sin^4(theta/2) D[jp] rho
//           + gamma_plus  cos^4(theta/2) D[jm] rho.
// All terms are elementwise or single-diagonal shifts, so one evaluation
// costs O(dim^2).
class SecularGenerator {
public:
    SecularGenerator(const ModelParams& p, const DerivedParams& d,
                     const SpinOperators& ops);
    // Raw-coefficient constructor, used by tests to switch terms on and off.
    SecularGenerator(double omega_p, double dephasing_rate, double up_rate,
                     double down_rate, const SpinOperators& ops);
    void operator()(const Matrix& rho, Matrix& out) const;
    int dim() const { return dim_; }

private:
    void precompute(double omega_p, double dephasing_rate, double up_rate,
                    double down_rate, const SpinOperators& ops);
    int dim_ = 0;
    Matrix elementwise_;  // acts as coeff(i,j) * rho(i,j)
    Matrix up_outer_;     // rho(i-1,j-1) -> out(i,j)
    Matrix down_outer_;   // rho(i+1,j+1) -> out(i,j)
};

// Convenience free functions matching the module contracts. Both verify the
// basis tag of the state.
Matrix rhs_full(const DensityMatrix& rho, const Matrix& h1, double gamma,
                const SpinOperators& ops);
Matrix rhs_secular(const DensityMatrix& rho, const ModelParams& p,
                   const DerivedParams& d, const SpinOperators& ops);

// ----------------------------- integration ----------------------------

enum class Scheme { rk45_adaptive, rk4_fixed };

struct IntegratorConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_step = 0.0; // <= 0 means unbounded; for rk4_fixed this IS the step
    Scheme scheme = Scheme::rk45_adaptive;
};

struct ObservableRecord {
    double t = 0.0;
    double energy_per_atom = 0.0;  // battery charge E/(N omega0), 0 = ground
    Complex coherence_jp{0.0, 0.0}; // <J+> evaluated in the bare frame
    double energy_variance = 0.0;  // <H0^2> - <H0>^2 in units omega0^2
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;
};

struct Trajectory {
    Basis basis = Basis::bare;
    int n_atoms = 0;
    std::vector<double> times;
    std::vector<Matrix> states;
    std::vector<ObservableRecord> observables;
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 1.0;

    const Matrix& final_state() const { return states.back(); }
};

// Evaluates the basis-independent observables for states stored in a given
// basis. In the dressed basis the bare-frame operators are conjugated by the
// inverse rotation, which turns jz into cos(theta) jz + sin(theta) jx and
// jp into cos(theta) jx - sin(theta) jz + i jy.
struct ObservableSet {
    int n_atoms = 0;
    Matrix h0;     // bare Hamiltonian in the trajectory basis, units omega0
    Matrix h0_sq;
    Matrix jp_bare;

    ObservableRecord evaluate(double t, const Matrix& rho) const;
};

ObservableSet make_observables(const SpinOperators& ops, Basis basis,
                               double theta = 0.0);

/// Integrates drho/dt = rhs(rho) from rho0 up to t_end, sampling every
/// sample_every time units (the final time is always sampled). Throws
/// ErrorCode::step_underflow if the adaptive step drops below 1e-14 and
/// ErrorCode::positivity if a sampled state has an eigenvalue below -1e-6.
Trajectory integrate(const DensityMatrix& rho0, const RhsFn& rhs, double t_end,
                     const IntegratorConfig& cfg, double sample_every,
                     const ObservableSet* observables = nullptr,
                     bool store_states = true);

} // namespace dicke
