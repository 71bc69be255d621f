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

#include <doctest.h>

#include <cmath>

#include "dicke/charging_curve.hpp"
#include "dicke/errors.hpp"
#include "test_support.hpp"

using namespace dicke;

namespace {

ModelParams params_for(double theta, double r, double omega_p, int n_atoms,
                       double gamma0 = 1.0) {
    ModelParams p;
    p.n_atoms = n_atoms;
    p.rabi = omega_p * std::sin(theta);
    p.delta = omega_p * std::cos(theta);
    p.gamma_plus = r;
    p.gamma_minus = 1.0;
    p.gamma0 = gamma0;
    return p;
}

} // namespace

TEST_CASE("analytic charge: zero at t = 0 by exact cancellation") {
    for (double theta : {0.3, 1.2, 1.87, 2.8}) {
        const DerivedParams d = derive(params_for(theta, 10.0, 37.0, 16));
        CHECK(std::abs(energy_analytic(0.0, 16, d)) < 1e-14);
    }
}

TEST_CASE("analytic charge: plateau is sin^2(theta/2) for x > 1") {
    const DerivedParams d = derive(params_for(1.87, 10.0, 100.0, 16));
    const double plateau = std::pow(std::sin(0.5 * 1.87), 2);
    CHECK(energy_analytic(1e5, 16, d) == doctest::Approx(plateau).epsilon(1e-12));
    CHECK(plateau == doctest::Approx(0.648).epsilon(2e-3));
}

TEST_CASE("analytic charge: agreement with the secular integration improves "
          "with N") {
    // Drive scaled with N so omega_p / (N gamma_eff) stays fixed.
    IntegratorConfig cfg;
    double prev = 1e9;
    for (int n : {10, 20, 40}) {
        const ModelParams p = params_for(1.87, 10.0, 12.0 * n, n);
        const DerivedParams d = derive(p);
        const SpinOperators ops = build_spin_operators(n);
        const RotationMatrix rot = rotation_matrix(ops, d.theta);
        const SecularGenerator gen(p, d, ops);
        const DensityMatrix rho0 = to_dressed(ground_state_bare(n), rot);
        const ObservableSet obs =
            make_observables(ops, Basis::dressed, d.theta);
        const double t_end = 12.0 / (n * d.gamma_eff);
        const Trajectory traj = integrate(rho0, std::cref(gen), t_end, cfg,
                                          t_end / 300.0, &obs, false);
        double dev = 0.0;
        for (const auto& rec : traj.observables) {
            dev = std::max(dev, std::abs(rec.energy_per_atom
                                         - energy_analytic(rec.t, n, d)));
        }
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("lower envelope: endpoints and monotonicity") {
    CHECK(std::abs(energy_lower_bound(0.0, 1.87)) < 1e-14);
    CHECK(energy_lower_bound(900.0, 1.87)
          == doctest::Approx(std::pow(std::sin(0.5 * 1.87), 2)).epsilon(1e-12));
    double prev = -1.0;
    for (double tau = 0.0; tau <= 12.0; tau += 0.05) {
        const double v = energy_lower_bound(tau, 1.87);
        CHECK(v >= prev - 1e-14);
        prev = v;
    }
}

TEST_CASE("lower envelope: never exceeds the oscillating solution") {
    for (double theta : {0.9, 1.87, 2.3}) {
        for (int n : {8, 64}) {
            const DerivedParams d = derive(params_for(theta, 10.0, 21.0 * n, n));
            for (double t = 0.0; t <= 14.0 / (n * d.gamma_eff);
                 t += 0.07 / (n * d.gamma_eff)) {
                const double tau = 0.5 * n * d.gamma_eff * t;
                CHECK(energy_analytic(t, n, d)
                      >= energy_lower_bound(tau, theta) - 1e-12);
            }
        }
    }
}

TEST_CASE("tau90: root-finder contract") {
    for (double theta : {0.2, 0.9, 1.5707963267948966, 2.2, 3.0}) {
        const double t90 = tau90(theta);
        const double target = 0.9 * std::pow(std::sin(0.5 * theta), 2);
        CHECK(std::abs(energy_lower_bound(t90, theta) - target) < 1e-9);
    }
}

TEST_CASE("tau90: right angle solves sech(tau) = 0.1 exactly") {
    // cos(theta) = 0 reduces the envelope to (1 - sech tau)/2, so the 90%
    // point is arccosh(10) = 2.99322...; a frozen closed-form oracle.
    CHECK(tau90(M_PI / 2.0) == doctest::Approx(std::acosh(10.0)).epsilon(1e-10));
}

TEST_CASE("tau90: near-constant 2.973 +/- 0.005 on the small-angle window") {
    // The published near-constancy claim reproduces on theta in [0.2, 1.05];
    // outside that window the root keeps growing (2.993 at pi/2, 3.19 at
    // 2.6), which the acceptance suite reports verbatim.
    double lo = 1e9, hi = -1e9;
    for (double theta = 0.2; theta <= 1.05; theta += 0.05) {
        const double v = tau90(theta);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        CHECK(std::abs(v - 2.973) <= 0.005);
    }
    CHECK(hi - lo < 0.01);
    CHECK(tau90(2.6) > 3.1); // documents the drift outside the window
}

TEST_CASE("power bound: zero at the branch boundary, arithmetic check") {
    // r = 1, charge fraction 1/2 sits exactly at gamma_eff = 0.
    const PowerBoundPoint edge =
        power_bound_point(1.0, M_PI / 2.0, PowerBranch::x_above_one);
    CHECK(edge.charge_fraction == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(edge.bound) < 1e-12);

    // independent arithmetic at r = 5, E = 0.3
    const double theta = 2.0 * std::asin(std::sqrt(0.3));
    const PowerBoundPoint pt =
        power_bound_point(5.0, theta, PowerBranch::x_above_one);
    const double expect =
        0.9 / (2.0 * tau90(theta)) * 0.3 * (5.0 * 0.49 - 0.09);
    CHECK(pt.bound == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("power bound: r = 10 curve has one interior maximum") {
    std::vector<double> thetas;
    for (int i = 1; i <= 60; ++i) {
        thetas.push_back(2.0 * std::atan(std::pow(10.0, 0.25)) * i / 61.0);
    }
    const auto curve = power_bound_curve(10.0, thetas, PowerBranch::x_above_one);
    int sign_changes = 0;
    for (std::size_t i = 2; i < curve.size(); ++i) {
        const double d1 = curve[i - 1].bound - curve[i - 2].bound;
        const double d2 = curve[i].bound - curve[i - 1].bound;
        if (d1 > 0 && d2 < 0) ++sign_changes;
    }
    CHECK(sign_changes == 1);
    CHECK(curve.front().bound >= 0.0);
    CHECK(curve.back().bound >= -1e-12);
}

TEST_CASE("power bound: mirrored branch matches by reflection") {
    const double r = 4.0;
    const double theta = 1.1;
    const PowerBoundPoint above =
        power_bound_point(r, theta, PowerBranch::x_above_one);
    const PowerBoundPoint below =
        power_bound_point(1.0 / r, M_PI - theta, PowerBranch::x_below_one);
    CHECK(below.charge_fraction
          == doctest::Approx(above.charge_fraction).epsilon(1e-12));
    // (1-E)^2 - E^2/r = (r(1-E)^2 - E^2)/r, and tau90 maps onto itself
    CHECK(below.bound == doctest::Approx(above.bound / r).epsilon(1e-10));
    // off-branch angles rejected
    CHECK_THROWS_AS(power_bound_point(1.0, 2.5, PowerBranch::x_above_one),
                    Error);
}

TEST_CASE("mean field: exact initial value and coefficient identities") {
    const int n = 30;
    const DerivedParams d = derive(params_for(1.87, 10.0, 9.0, n));
    const MeanFieldCoeffs mf = meanfield_coeffs(n, d);
    const double j = 0.5 * n;
    CHECK(mf.a == doctest::Approx(0.5 * (d.x + 1.0) / (d.x - 1.0)).epsilon(1e-14));
    CHECK(mf.b == doctest::Approx(std::sqrt(j * (j + 1.0) + mf.a * mf.a)).epsilon(1e-14));
    CHECK(mf.c == doctest::Approx(d.gamma_eff * mf.b).epsilon(1e-14));
    CHECK(mf.y0 == doctest::Approx(-j * std::sin(1.87)).epsilon(1e-13));
    // <n>(0) = -(N/2) cos(theta), exactly by construction of phi0
    CHECK(meanfield_population(0.0, mf)
          == doctest::Approx(-j * std::cos(1.87)).epsilon(1e-12));
    // long-time limit a - b on the x > 1 branch
    CHECK(meanfield_population(1e9, mf)
          == doctest::Approx(mf.a - mf.b).epsilon(1e-12));
}

TEST_CASE("mean field: the closed equation is solved identically") {
    const int n = 30;
    const ModelParams p = params_for(1.87, 10.0, 9.0, n);
    const DerivedParams d = derive(p);
    for (double t = 0.0; t <= 2.0; t += 0.02) {
        CHECK(std::abs(meanfield_ode_residual(t, n, p, d)) <= 1e-9);
    }
}

TEST_CASE("mean field: tanh trajectory tracks the integrated populations") {
    // <jz> along the secular evolution versus the closed-form mean-field
    // solution with exact coefficients; the residual mean-field closure
    // error is O(1/N).
    const int n = 48;
    const ModelParams p = params_for(1.87, 10.0, 8.0 * n, n);
    const DerivedParams d = derive(p);
    const SpinOperators ops = build_spin_operators(n);
    const RotationMatrix rot = rotation_matrix(ops, d.theta);
    const SecularGenerator gen(p, d, ops);
    const DensityMatrix rho0 = to_dressed(ground_state_bare(n), rot);
    const MeanFieldCoeffs mf = meanfield_coeffs(n, d);

    IntegratorConfig cfg;
    const double t_end = 10.0 / (n * d.gamma_eff);
    const Trajectory traj = integrate(rho0, std::cref(gen), t_end, cfg,
                                      t_end / 60.0, nullptr, true);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double integrated =
            expectation(traj.states[i], ops.jz).real();
        const double closed = meanfield_population(traj.times[i], mf);
        worst = std::max(worst, std::abs(integrated - closed) / n);
    }
    CHECK(worst < 0.02); // per-atom closure error at N = 48
}

TEST_CASE("coherence amplitude: initial value, decay, and reduction") {
    const ModelParams p = params_for(1.87, 10.0, 50.0, 24);
    const DerivedParams d = derive(p);
    const Complex y0 = coherence_solution(0.0, 24, p, d);
    CHECK(y0.real() == doctest::Approx(-12.0 * std::sin(1.87)).epsilon(1e-12));
    CHECK(std::abs(y0.imag()) < 1e-12);

    CHECK(std::abs(coherence_solution(50.0, 24, p, d)) < 1e-8);

    // The exact solution collapses onto the reduced large-N form.
    double prev = 1e9;
    for (int n : {20, 60, 200}) {
        ModelParams pn = params_for(1.87, 10.0, 50.0, n);
        const DerivedParams dn = derive(pn);
        double worst = 0.0;
        for (double tau = 0.1; tau <= 4.0; tau += 0.1) {
            const double t = 2.0 * tau / (n * dn.gamma_eff);
            const double full = coherence_solution(t, n, pn, dn).real();
            const double reduced = coherence_reduced(t, n, dn);
            worst = std::max(worst, std::abs(full - reduced) / (0.5 * n));
        }
        CHECK(worst < prev);
        prev = worst;
    }

    // branch point rejected
    ModelParams p1 = params_for(M_PI / 2.0, 1.0, 10.0, 8);
    const DerivedParams d1 = derive(p1);
    CHECK_THROWS_AS(coherence_solution(0.1, 8, p1, d1), Error);
}

TEST_CASE("analytic power: finite-difference cross-check") {
    const int n = 40;
    const DerivedParams d = derive(params_for(1.3, 5.0, 11.0 * n, n));
    const double h = 1e-6;
    for (double t : {0.001, 0.01, 0.05}) {
        const double fd = n
            * (energy_analytic(t + h, n, d) - energy_analytic(t - h, n, d))
            / (2.0 * h);
        CHECK(analytic_power(t, n, d) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("analytic power: exact N^2 scaling at fixed tau with scaled drive") {
    for (int k : {50, 100, 200}) {
        const DerivedParams dk = derive(params_for(1.87, 10.0, 15.0 * k, k));
        const DerivedParams d2k =
            derive(params_for(1.87, 10.0, 15.0 * 2 * k, 2 * k));
        for (double tau : {0.5, 1.0, 2.0}) {
            const double tk = 2.0 * tau / (k * dk.gamma_eff);
            const double t2k = 2.0 * tau / (2 * k * d2k.gamma_eff);
            const double ratio = analytic_power(t2k, 2 * k, d2k)
                / analytic_power(tk, k, dk);
            CHECK(ratio == doctest::Approx(4.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("power envelope: zero at start, N^2 scaling, positive on x > 1") {
    const DerivedParams d = derive(params_for(1.2, 6.0, 30.0, 10));
    CHECK(std::abs(power_envelope(0.0, 10, d)) < 1e-13);
    for (double tau : {0.5, 1.0, 2.0, 5.0}) {
        CHECK(power_envelope(tau, 10, d) > 0.0);
        CHECK(power_envelope(tau, 20, d)
              == doctest::Approx(4.0 * power_envelope(tau, 10, d)).epsilon(1e-12));
    }
}

TEST_CASE("steady-state consistency: plateau equals the asymptotic ergotropy") {
    const double theta = 1.87, r = 10.0;
    const DerivedParams d = derive(params_for(theta, r, 80.0, 32));
    const double x = d.x;
    CHECK(energy_analytic(1e6, 32, d)
          == doctest::Approx(ergotropy_asymptotic(x, theta, r)).epsilon(1e-12));
}
