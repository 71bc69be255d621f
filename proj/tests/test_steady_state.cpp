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

#include <algorithm>
#include <cmath>
#include <random>

#include "dicke/errors.hpp"
#include "dicke/lindblad.hpp"
#include "dicke/steady_state.hpp"
#include "test_support.hpp"

using namespace dicke;

namespace {

// Brute-force ergotropy: populations sorted onto the spectrum by hand.
double brute_force_ergotropy_per_atom(int n, double x, double theta) {
    const std::vector<double> p = steady_populations(n, x);
    const double j = 0.5 * n;
    double e_ss = 0.0;
    for (int i = 0; i <= n; ++i) e_ss += (i - j) * p[i];
    e_ss *= std::cos(theta);
    std::vector<double> q = p;
    std::sort(q.begin(), q.end(), std::greater<double>());
    double e_passive = 0.0;
    for (int i = 0; i <= n; ++i) e_passive += (i - j) * q[i];
    return (e_ss - e_passive) / n;
}

} // namespace

TEST_CASE("populations: x = 1 is uniform") {
    for (int n : {1, 4, 9}) {
        const std::vector<double> p = steady_populations(n, 1.0);
        for (double v : p) CHECK(v == doctest::Approx(1.0 / (n + 1)).epsilon(1e-15));
    }
}

TEST_CASE("populations: single atom at x = 2") {
    const std::vector<double> p = steady_populations(1, 2.0);
    CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("populations: adjacent ratio is 1/x and the sum is 1") {
    for (double x : {0.02, 0.7, 1.0, 3.3, 250.0}) {
        const std::vector<double> p = steady_populations(12, x);
        double sum = 0.0;
        for (double v : p) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
        for (int i = 0; i + 1 <= 12; ++i) {
            if (p[i] > 1e-290) {
                CHECK(p[i + 1] / p[i] == doctest::Approx(1.0 / x).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("populations: detailed balance against the physical rates") {
    const double theta = 1.1, r = 4.0;
    const double half = 0.5 * theta;
    const double x = r * std::pow(std::cos(half) / std::sin(half), 4);
    const double up = std::pow(std::sin(half), 4);   // gamma_minus = 1
    const double down = r * std::pow(std::cos(half), 4);
    const std::vector<double> p = steady_populations(9, x);
    for (int i = 0; i + 1 <= 9; ++i) {
        CHECK(up * p[i] == doctest::Approx(down * p[i + 1]).epsilon(1e-10));
    }
}

TEST_CASE("populations: extreme sizes stay representable in log space") {
    const std::vector<double> p = steady_populations(400, 50.0);
    CHECK(p[0] == doctest::Approx(1.0 - 1.0 / 50.0).epsilon(1e-10));
    CHECK(std::isfinite(p[400]));
    CHECK_THROWS_AS(steady_populations(3, -1.0), Error);
    CHECK_THROWS_AS(steady_populations(3, 0.0), Error);
}

TEST_CASE("steady energy: saturation and symmetric-point zero") {
    // Heavy weight on the dressed ground level, nearly bare ground.
    CHECK(steady_energy(4, 1e6, 1e-3) == doctest::Approx(-2.0).epsilon(1e-4));
    CHECK(steady_energy(6, 1.0, 0.77) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("steady energy: agrees with the operator expectation route") {
    const int n = 4;
    const double theta = 1.87, x = 2.96685660605706;
    const SpinOperators ops = build_spin_operators(n);
    const RotationMatrix rot = rotation_matrix(ops, theta);
    const std::vector<double> p = steady_populations(n, x);
    Matrix diag = Matrix::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) diag(i, i) = p[i];
    const DensityMatrix bare = to_bare(DensityMatrix{Basis::dressed, diag}, rot);
    const double via_ops = expectation(bare.rho, ops.jz).real();
    CHECK(steady_energy(n, x, theta) == doctest::Approx(via_ops).epsilon(1e-12));
}

TEST_CASE("ergotropy: vanishes at x = 1 through the exact-sum path") {
    for (int n : {1, 2, 7, 24}) {
        const ErgotropyReport rep = ergotropy_exact(n, 1.0, 1.3);
        CHECK(std::abs(rep.ergotropy) <= 1e-12);
        CHECK(std::abs(rep.ergotropy_per_atom_closed) <= 1e-12);
    }
}

TEST_CASE("ergotropy: closed form equals the brute-force passive state") {
    // reference point: N=4, theta=2.0, r=0.1
    const double cot = 1.0 / std::tan(1.0);
    const double x = 0.1 * std::pow(cot, 4);
    const ErgotropyReport r2 = ergotropy_exact(4, x, 2.0);
    CHECK(r2.ergotropy_per_atom_closed
          == doctest::Approx(brute_force_ergotropy_per_atom(4, x, 2.0))
                 .epsilon(1e-10));
    CHECK(r2.ergotropy_per_atom
          == doctest::Approx(r2.ergotropy_per_atom_closed).epsilon(1e-10));
}

TEST_CASE("ergotropy: report invariants") {
    const ErgotropyReport rep = ergotropy_exact(6, 3.7, 2.2);
    double sum = 0.0;
    for (double v : rep.populations) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rep.ergotropy >= 0.0);
    CHECK(rep.ergotropy
          == doctest::Approx(rep.energy_ss - rep.passive_energy).epsilon(1e-12));
    CHECK(rep.r == doctest::Approx(3.7 * std::pow(std::tan(1.1), 4)).epsilon(1e-12));
}

TEST_CASE("ergotropy: superextensive ordering away from x = 1") {
    // Same angle grid for N = 2 and N = 4 at r = 0.1; the per-atom value for
    // the larger battery dominates except at the crossing.
    const double r = 0.1;
    for (double theta : {0.6, 1.0, 1.4, 2.2, 2.6}) {
        const double cot = 1.0 / std::tan(0.5 * theta);
        const double x = r * std::pow(cot, 4);
        if (std::abs(x - 1.0) < 0.2) continue;
        const ErgotropyReport r2 = ergotropy_exact(2, x, theta);
        const ErgotropyReport r4 = ergotropy_exact(4, x, theta);
        CHECK(r4.ergotropy_per_atom > r2.ergotropy_per_atom);
    }
}

TEST_CASE("ergotropy: closed form equals brute force on random triples") {
    std::mt19937 rng(2026);
    std::uniform_int_distribution<int> nd(1, 30);
    std::uniform_real_distribution<double> td(0.1, M_PI - 0.1);
    std::uniform_real_distribution<double> rd(-2.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        const int n = nd(rng);
        const double theta = td(rng);
        const double r = std::pow(10.0, rd(rng));
        const double cot = 1.0 / std::tan(0.5 * theta);
        const double x = r * std::pow(cot, 4);
        const ErgotropyReport rep = ergotropy_exact(n, x, theta);
        const double brute = brute_force_ergotropy_per_atom(n, x, theta);
        CHECK(rep.ergotropy_per_atom_closed
              == doctest::Approx(brute).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("ergotropy: ladder-reflection symmetry") {
    for (double theta : {0.5, 1.2, 2.0}) {
        for (double r : {0.3, 2.5}) {
            const double cot = 1.0 / std::tan(0.5 * theta);
            const double x = r * std::pow(cot, 4);
            const ErgotropyReport a = ergotropy_exact(5, x, theta);
            const ErgotropyReport b =
                ergotropy_exact(5, 1.0 / x, M_PI - theta);
            CHECK(a.ergotropy == doctest::Approx(b.ergotropy).epsilon(1e-10));
        }
    }
}

TEST_CASE("asymptotic ergotropy: branch values and consistency checks") {
    // x > 1 branch at the r = 10 reference point
    const double theta = 1.87;
    const double x = 10.0 * std::pow(1.0 / std::tan(0.5 * theta), 4);
    const double v = ergotropy_asymptotic(x, theta, 10.0);
    CHECK(v == doctest::Approx(std::pow(std::sin(0.5 * theta), 2)).epsilon(1e-12));

    // near the branch point from above at r = 1 the value tends to 1/2
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const double th = M_PI / 2.0 - eps;
        const double xx = std::pow(1.0 / std::tan(0.5 * th), 4);
        CHECK(ergotropy_asymptotic(xx, th, 1.0)
              == doctest::Approx(0.5).epsilon(2.0 * eps));
    }

    // nearly full charge for r << x < 1
    {
        const double r = 1e-4, xx = 0.9;
        const double th = 2.0 * std::atan(std::pow(r / xx, 0.25));
        const double val = ergotropy_asymptotic(xx, th, r);
        CHECK(std::abs(val - 1.0) < 0.02);
    }

    CHECK_THROWS_AS(ergotropy_asymptotic(1.0, 1.0, 1.0), Error);
    // inconsistent (x, theta, r) triple is rejected
    CHECK_THROWS_AS(ergotropy_asymptotic(2.0, 1.0, 1.0), Error);
}

TEST_CASE("asymptotic ergotropy: finite-N values converge monotonically") {
    const double theta = 1.87, r = 10.0;
    const double x = r * std::pow(1.0 / std::tan(0.5 * theta), 4);
    const double limit = ergotropy_asymptotic(x, theta, r);
    double prev_gap = 1e9;
    for (int n : {10, 50, 200}) {
        const double gap =
            std::abs(ergotropy_exact(n, x, theta).ergotropy_per_atom - limit);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.01 * limit); // within 1% at N = 200
}

TEST_CASE("extensive regime: everything stored becomes extractable") {
    const double theta = 1.87, r = 10.0;
    const double x = r * std::pow(1.0 / std::tan(0.5 * theta), 4);
    const ErgotropyReport rep = ergotropy_exact(200, x, theta);
    const double charge = rep.energy_ss + 100.0; // + N/2
    CHECK(std::abs(rep.ergotropy - charge) < 0.01 * charge);
}

TEST_CASE("steady state: long-time integration oracle at N = 10") {
    ModelParams p;
    p.n_atoms = 10;
    const double theta = 1.87;
    p.rabi = 5.0 * std::sin(theta);
    p.delta = 5.0 * std::cos(theta);
    p.gamma_plus = 10.0;
    p.gamma_minus = 1.0;
    p.gamma0 = 1.0;
    IntegratorConfig cfg;
    const auto res = testsupport::relax_secular_to_steady(p, 1e-7, 8.0, cfg);
    CHECK(res.tv_distance < 1e-6);
}
