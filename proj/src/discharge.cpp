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

#include "dicke/discharge.hpp"

#include <cmath>

#include "dicke/errors.hpp"

namespace dicke {

Complex initial_coherence(const DensityMatrix& rho_dressed,
                          const DerivedParams& d, const SpinOperators& ops) {
    require(rho_dressed.basis == Basis::dressed, ErrorCode::invalid_argument,
            "initial_coherence expects a dressed-basis state");
    const double c = std::cos(d.theta);
    const double s = std::sin(d.theta);
    const Matrix jp_bare = c * ops.jx - s * ops.jz + kImaginaryUnit * ops.jy;
    return expectation(rho_dressed.rho, jp_bare);
}

DensityMatrix steady_state_bare(const ModelParams& p, const DerivedParams& d,
                                const SpinOperators& ops,
                                const RotationMatrix& rot) {
    const std::vector<double> pops = steady_populations(p.n_atoms, d.x);
    Matrix diag = Matrix::Zero(ops.dim, ops.dim);
    for (int i = 0; i < ops.dim; ++i) diag(i, i) = pops[i];
    DensityMatrix dressed{Basis::dressed, std::move(diag)};
    return to_bare(dressed, rot);
}

DischargeResult run_discharge(const DensityMatrix& rho0_bare,
                              const ModelParams& p, DischargeFrame frame,
                              double t_end, const IntegratorConfig& cfg,
                              double sample_every) {
    require(rho0_bare.basis == Basis::bare, ErrorCode::invalid_argument,
            "run_discharge expects a bare-basis initial state");
    require(p.gamma0 > 0.0, ErrorCode::invalid_argument,
            "discharge requires gamma0 > 0");
    p.validate();

    const SpinOperators ops = build_spin_operators(p.n_atoms);
    Matrix h;
    if (frame == DischargeFrame::driven) {
        h = p.delta * ops.jz - p.rabi * ops.jx;
    }
    FullGenerator gen(h, p.gamma0, ops);
    const ObservableSet obs = make_observables(ops, Basis::bare);

    if (sample_every <= 0.0) {
        sample_every = 0.01 / (p.n_atoms * p.gamma0);
    }

    DischargeResult res;
    res.trajectory = integrate(rho0_bare, std::cref(gen), t_end, cfg,
                               sample_every, &obs, /*store_states=*/false);

    const auto& recs = res.trajectory.observables;
    res.coherent_power.resize(recs.size());
    res.coherent_energy.resize(recs.size());
    double w = 0.0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        res.coherent_power[i] = p.gamma0 * std::norm(recs[i].coherence_jp);
        if (i > 0) {
            w += 0.5 * (res.coherent_power[i] + res.coherent_power[i - 1])
                * (recs[i].t - recs[i - 1].t);
        }
        res.coherent_energy[i] = w;
    }
    res.stored_energy_initial = recs.front().energy_per_atom * p.n_atoms;
    res.coherent_fraction = (res.stored_energy_initial > 0.0)
        ? w / res.stored_energy_initial
        : 0.0;
    return res;
}

double variance_scaling_exponent(const std::vector<int>& n_list,
                                 double theta, double r, double gamma0,
                                 const IntegratorConfig& cfg) {
    require(n_list.size() >= 4, ErrorCode::invalid_argument,
            "need at least 4 atom numbers for the power-law fit");
    std::vector<double> log_n, log_peak;
    for (int n : n_list) {
        ModelParams p;
        p.n_atoms = n;
        p.gamma0 = gamma0;
        p.gamma_plus = r;
        p.gamma_minus = 1.0;
        // theta is realized through delta = rabi cot(theta) at unit omega_p.
        p.rabi = std::sin(theta);
        p.delta = std::cos(theta);
        const DerivedParams d = derive(p);
        const SpinOperators ops = build_spin_operators(n);
        const RotationMatrix rot = rotation_matrix(ops, d.theta);
        const DensityMatrix rho0 = steady_state_bare(p, d, ops, rot);
        const DischargeResult res = run_discharge(
            rho0, p, DischargeFrame::drive_off, 20.0 / (n * gamma0), cfg);
        double peak = 0.0;
        for (const auto& rec : res.trajectory.observables) {
            peak = std::max(peak, rec.energy_variance);
        }
        log_n.push_back(std::log(static_cast<double>(n)));
        log_peak.push_back(std::log(peak));
    }
    // Least-squares slope of log(peak) vs log(N).
    const std::size_t m = log_n.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += log_n[i];
        sy += log_peak[i];
        sxx += log_n[i] * log_n[i];
        sxy += log_n[i] * log_peak[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace dicke
