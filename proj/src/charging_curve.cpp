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

#include "dicke/charging_curve.hpp"

#include <cmath>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

// tanh(tau + phi0) with tanh(phi0) = cos(theta), via the addition formula.
// Exact at tau = 0 and immune to overflow.
double tanh_shifted(double tau, double cos_theta) {
    const double th = std::tanh(tau);
    return (cos_theta + th) / (1.0 + cos_theta * th);
}

// 1/cosh(tau + phi0) = sin(theta) / (cosh tau + cos(theta) sinh tau),
// rearranged around exp(-|tau|) so no intermediate overflows.
double sech_shifted(double tau, double cos_theta, double sin_theta) {
    if (tau >= 0.0) {
        const double e = std::exp(-tau);
        return 2.0 * sin_theta * e
            / ((1.0 + cos_theta) + (1.0 - cos_theta) * e * e);
    }
    const double e = std::exp(tau);
    return 2.0 * sin_theta * e
        / ((1.0 - cos_theta) + (1.0 + cos_theta) * e * e);
}

double sech_stable(double z) {
    const double e = std::exp(-std::abs(z));
    return 2.0 * e / (1.0 + e * e);
}

// log cosh(z), stable for any z.
double log_cosh(double z) {
    const double az = std::abs(z);
    return az + std::log1p(std::exp(-2.0 * az)) - M_LN2;
}

void check_theta(double theta) {
    require(theta > 0.0 && theta < M_PI, ErrorCode::degenerate_angle,
            "theta must lie strictly inside (0, pi)");
}

} // namespace

double energy_analytic(double t, int n_atoms, const DerivedParams& d) {
    require(t >= 0.0, ErrorCode::invalid_argument, "t must be >= 0");
    check_theta(d.theta);
    const double c = std::cos(d.theta);
    const double s = std::sin(d.theta);
    const double tau = 0.5 * n_atoms * d.gamma_eff * t;
    return 0.5
        * (1.0 - c * tanh_shifted(tau, c)
           - s * std::cos(d.omega_p * t) * sech_shifted(tau, c, s));
}

double energy_lower_bound(double tau, double theta) {
    require(tau >= 0.0, ErrorCode::invalid_argument, "tau must be >= 0");
    check_theta(theta);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return 0.5 * (1.0 - c * tanh_shifted(tau, c) - s * sech_shifted(tau, c, s));
}

double tau90(double theta) {
    check_theta(theta);
    const double target = 0.9 * 0.5 * (1.0 - std::cos(theta));
    auto f = [&](double tau) { return energy_lower_bound(tau, theta) - target; };

    double lo = 0.0, hi = 100.0;
    double flo = f(lo), fhi = f(hi);
    require(flo <= 0.0 && fhi >= 0.0, ErrorCode::bracket,
            "no sign change for the 90% crossing on [0, 100]");
    for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) <= 0.0) {
            lo = mid;
            flo = f(mid);
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

PowerBoundPoint power_bound_point(double r, double theta, PowerBranch branch) {
    check_theta(theta);
    require(r > 0.0 && std::isfinite(r), ErrorCode::invalid_argument,
            "r must be finite and > 0");
    PowerBoundPoint pt;
    pt.theta = theta;
    const double half = 0.5 * theta;
    double frac, factor;
    if (branch == PowerBranch::x_above_one) {
        frac = std::sin(half) * std::sin(half);
        factor = r * (1.0 - frac) * (1.0 - frac) - frac * frac;
        pt.tau90 = tau90(theta);
    } else {
        frac = std::cos(half) * std::cos(half);
        factor = (1.0 - frac) * (1.0 - frac) - r * frac * frac;
        // Mirrored branch: the charge relaxes toward cos^2(theta/2), which is
        // the theta -> pi - theta image of the x > 1 problem.
        pt.tau90 = tau90(M_PI - theta);
    }
    require(factor >= -1e-12, ErrorCode::invalid_argument,
            "theta is outside the requested gamma_eff >= 0 branch");
    pt.charge_fraction = frac;
    pt.bound = 0.9 * frac * std::max(factor, 0.0) / (2.0 * pt.tau90);
    return pt;
}

std::vector<PowerBoundPoint> power_bound_curve(double r,
                                               const std::vector<double>& thetas,
                                               PowerBranch branch) {
    std::vector<PowerBoundPoint> out;
    out.reserve(thetas.size());
    for (double th : thetas) out.push_back(power_bound_point(r, th, branch));
    return out;
}

// ----------------------- mean-field validation oracle ------------------

MeanFieldCoeffs meanfield_coeffs(int n_atoms, const DerivedParams& d) {
    require(n_atoms >= 1, ErrorCode::invalid_argument, "n_atoms must be >= 1");
    check_theta(d.theta);
    require(d.x != 1.0, ErrorCode::range,
            "x = 1 makes the mean-field coefficients singular");
    MeanFieldCoeffs mf;
    const double j = 0.5 * n_atoms;
    mf.a = 0.5 * (d.x + 1.0) / (d.x - 1.0);
    mf.b = std::sqrt(j * (j + 1.0) + mf.a * mf.a);
    mf.c = d.gamma_eff * mf.b;
    const double arg = (mf.a + j * std::cos(d.theta)) / mf.b;
    require(arg > -1.0 && arg < 1.0, ErrorCode::range,
            "initial mean-field phase is not real");
    mf.phi0 = std::atanh(arg);
    mf.y0 = -j * std::sin(d.theta);
    return mf;
}

double meanfield_population(double t, const MeanFieldCoeffs& mf) {
    return mf.a - mf.b * std::tanh(mf.c * t + mf.phi0);
}

double meanfield_ode_residual(double t, int n_atoms, const ModelParams& p,
                              const DerivedParams& d) {
    const MeanFieldCoeffs mf = meanfield_coeffs(n_atoms, d);
    const double j = 0.5 * n_atoms;
    const double half = 0.5 * d.theta;
    const double s2 = std::sin(half) * std::sin(half);
    const double kappa = p.gamma_minus * s2 * s2;

    const double z = mf.c * t + mf.phi0;
    const double u = mf.a - mf.b * std::tanh(z);
    const double sech = sech_stable(z);
    const double du_dt = -mf.b * mf.c * sech * sech;
    const double rhs =
        kappa * ((1.0 - d.x) * (j * (j + 1.0) - u * u) - (1.0 + d.x) * u);
    return du_dt - rhs;
}

Complex coherence_solution(double t, int n_atoms, const ModelParams& p,
                           const DerivedParams& d) {
    const MeanFieldCoeffs mf = meanfield_coeffs(n_atoms, d);
    const double s = std::sin(d.theta);
    const double decay = -0.125 * s * s * p.gamma0
        + 0.5 * (mf.c / mf.b) * (3.0 - d.x) / (d.x - 1.0);
    // Magnitude assembled in log space: the cosh ratio decays much faster
    // than any finite-N correction can grow.
    const double log_mag = decay * t + log_cosh(mf.phi0)
        - log_cosh(mf.c * t + mf.phi0);
    return mf.y0 * std::exp(Complex{log_mag, d.omega_p * t});
}

double coherence_reduced(double t, int n_atoms, const DerivedParams& d) {
    check_theta(d.theta);
    const double c = std::cos(d.theta);
    const double s = std::sin(d.theta);
    const double tau = 0.5 * n_atoms * d.gamma_eff * t;
    // The sin(theta) amplitude cancels against cosh(phi0) = 1/sin(theta).
    return -0.5 * n_atoms * std::cos(d.omega_p * t) * sech_shifted(tau, c, s);
}

// ------------------------------- power ---------------------------------

double analytic_power(double t, int n_atoms, const DerivedParams& d) {
    check_theta(d.theta);
    const double c = std::cos(d.theta);
    const double s = std::sin(d.theta);
    const double rate = 0.5 * n_atoms * d.gamma_eff; // d tau / dt
    const double tau = rate * t;
    const double T = tanh_shifted(tau, c);
    const double S = sech_shifted(tau, c, s);
    const double per_atom = -0.5 * c * rate * S * S
        + 0.5 * s * d.omega_p * std::sin(d.omega_p * t) * S
        + 0.5 * s * rate * std::cos(d.omega_p * t) * T * S;
    return n_atoms * per_atom;
}

double power_envelope(double tau, int n_atoms, const DerivedParams& d) {
    check_theta(d.theta);
    const double c = std::cos(d.theta);
    const double s = std::sin(d.theta);
    const double T = tanh_shifted(tau, c);
    const double S = sech_shifted(tau, c, s);
    return 0.25 * n_atoms * n_atoms * d.gamma_eff * S * (s * T - c * S);
}

} // namespace dicke
