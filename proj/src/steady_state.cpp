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

#include "dicke/steady_state.hpp"

#include <algorithm>
#include <cmath>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

void check_x(double x) {
    require(std::isfinite(x) && x > 0.0, ErrorCode::range,
            "detailed-balance parameter x must be finite and > 0");
}

// Mean of k over weights x^k, k = 0..N. Exact sums near x = 1, geometric
// closed form elsewhere, organized so x^(N+1) never overflows.
double mean_k(int n_atoms, double x) {
    const int n = n_atoms;
    if (std::abs(x - 1.0) <= 1e-6) {
        // Direct summation: all terms positive, no cancellation.
        double z = 0.0, s = 0.0, w = 1.0;
        for (int k = 0; k <= n; ++k) {
            z += w;
            s += k * w;
            w *= x;
        }
        return s / z;
    }
    // <k> = (N+1) x^(N+1) / (x^(N+1) - 1) - x/(x - 1)
    const double t = (n + 1) * std::log(x);
    double first;
    if (t > 0.0) {
        // x > 1: x^(N+1)/(x^(N+1)-1) = 1/(1 - e^-t)
        first = (n + 1.0) / (-std::expm1(-t));
    } else {
        // x < 1: e^t/(e^t - 1), with e^t possibly underflowing harmlessly
        first = (n + 1.0) * std::exp(t) / std::expm1(t);
    }
    return first - x / (x - 1.0);
}

} // namespace

std::vector<double> steady_populations(int n_atoms, double x) {
    require(n_atoms >= 1, ErrorCode::invalid_argument, "n_atoms must be >= 1");
    check_x(x);
    const int n = n_atoms;
    const double lx = std::log(x);
    // p_i ∝ x^(N - i) for index i (m = i - N/2, exponent N/2 - m = N - i).
    // Normalize in log space against the largest exponent.
    double max_lp = std::max(0.0, n * lx);
    std::vector<double> p(n + 1);
    double z = 0.0;
    for (int i = 0; i <= n; ++i) {
        p[i] = std::exp((n - i) * lx - max_lp);
        z += p[i];
    }
    require(std::isfinite(z) && z > 0.0, ErrorCode::range,
            "steady populations are not representable for this x and N");
    for (double& v : p) v /= z;
    return p;
}

double steady_energy(int n_atoms, double x, double theta) {
    const std::vector<double> p = steady_populations(n_atoms, x);
    const double j = 0.5 * n_atoms;
    double mean_m = 0.0;
    for (int i = 0; i <= n_atoms; ++i) mean_m += (i - j) * p[i];
    return std::cos(theta) * mean_m;
}

double steady_charge(int n_atoms, double x, double theta) {
    return steady_energy(n_atoms, x, theta) + 0.5 * n_atoms;
}

double ergotropy_per_atom_closed_form(int n_atoms, double x, double theta) {
    check_x(x);
    // S1/Z = sum_m m p_m / cos-free part = N/2 - <k>, and
    // R/N = (cos(theta) -/+ 1) (S1/Z) / N with - for x > 1, + for x < 1.
    const double s1_over_z = 0.5 * n_atoms - mean_k(n_atoms, x);
    const double sign = (x < 1.0) ? 1.0 : -1.0;
    return (std::cos(theta) + sign) * s1_over_z / n_atoms;
}

namespace {

ErgotropyReport build_report(int n_atoms, double x, double theta) {
    ErgotropyReport rep;
    rep.populations = steady_populations(n_atoms, x);
    rep.x = x;
    rep.theta = theta;
    const double th = std::tan(0.5 * theta);
    rep.r = x * th * th * th * th;

    const double j = 0.5 * n_atoms;
    double mean_m = 0.0;
    for (int i = 0; i <= n_atoms; ++i) mean_m += (i - j) * rep.populations[i];
    rep.energy_ss = std::cos(theta) * mean_m;

    // Passive state: largest population on the lowest level. Stable sort for
    // determinism when populations tie (x = 1).
    std::vector<double> sorted = rep.populations;
    std::stable_sort(sorted.begin(), sorted.end(), std::greater<double>());
    double passive = 0.0;
    for (int i = 0; i <= n_atoms; ++i) passive += (i - j) * sorted[i];
    rep.passive_energy = passive;

    rep.ergotropy = std::max(0.0, rep.energy_ss - rep.passive_energy);
    rep.ergotropy_per_atom = rep.ergotropy / n_atoms;
    rep.ergotropy_per_atom_closed =
        ergotropy_per_atom_closed_form(n_atoms, x, theta);
    // Away from the removable singularity the two routes must coincide.
    if (std::abs(x - 1.0) > 1e-6) {
        require(std::abs(rep.ergotropy_per_atom - rep.ergotropy_per_atom_closed)
                    <= 1e-10,
                ErrorCode::internal,
                "closed-form ergotropy disagrees with the passive-state sum");
    }
    return rep;
}

} // namespace

ErgotropyReport ergotropy_exact(int n_atoms, double x, double theta) {
    require(n_atoms >= 1, ErrorCode::invalid_argument, "n_atoms must be >= 1");
    require(theta > 0.0 && theta < M_PI, ErrorCode::degenerate_angle,
            "theta must lie strictly inside (0, pi)");
    return build_report(n_atoms, x, theta);
}

double ergotropy_asymptotic(double x, double theta, double r) {
    check_x(x);
    require(theta > 0.0 && theta < M_PI, ErrorCode::degenerate_angle,
            "theta must lie strictly inside (0, pi)");
    require(x != 1.0, ErrorCode::range,
            "x = 1 is the branch point of the large-N ergotropy");
    const double half = 0.5 * theta;
    double trig_form, ratio_form;
    if (x < 1.0) {
        trig_form = std::cos(half) * std::cos(half);
        ratio_form = 1.0 / (1.0 + std::sqrt(r / x));
    } else {
        trig_form = std::sin(half) * std::sin(half);
        ratio_form = 1.0 / (1.0 + std::sqrt(x / r));
    }
    require(std::abs(trig_form - ratio_form) <= 1e-9,
            ErrorCode::invalid_argument,
            "inconsistent inputs: x must equal r cot^4(theta/2)");
    return trig_form;
}

} // namespace dicke
