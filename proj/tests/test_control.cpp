/*
 * Copyright (C) 2026 seizopt contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "seiz/control.hpp"
#include "seiz/integrate.hpp"

using namespace seiz;

namespace {

ModelParams fig12_params() {
  ModelParams th;
  th.pi = 50.0;
  th.beta = 0.07;
  th.mu = 0.5;
  th.eps = 0.06;
  th.delta = 0.05;
  th.p = 0.09767;
  th.lam = 0.0084231;
  th.rho = 0.21431;
  th.l = 0.005234;
  th.b = 0.00539;
  return th;
}

ModelParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> rate(0.0, 2.0);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  ModelParams th;
  th.pi = rate(rng) * 5.0;
  th.mu = prob(rng) + 0.05;
  th.beta = rate(rng);
  th.b = rate(rng);
  th.rho = rate(rng);
  th.eps = rate(rng);
  th.p = prob(rng);
  th.l = prob(rng);
  th.delta = rate(rng);
  th.lam = rate(rng);
  return th;
}

Trajectory constant_trajectory(const Grid& grid, const Eigen::Vector4d& x) {
  Trajectory traj;
  traj.grid = grid;
  traj.states.assign(grid.size(), x);
  return traj;
}

}  // namespace

TEST_CASE("objective: trapezoid of running cost") {
  const Grid grid(0, 10, 100);
  const ControlWeights wts;

  SUBCASE("all zero") {
    const Trajectory traj = constant_trajectory(grid, Eigen::Vector4d::Zero());
    const ControlSignal zeros(grid.size(), Eigen::Vector3d::Zero());
    CHECK(objective(traj, zeros, wts) == 0.0);
  }

  SUBCASE("constant spreader level integrates exactly") {
    const Trajectory traj = constant_trajectory(grid, Eigen::Vector4d(0, 0, 1, 0));
    const ControlSignal zeros(grid.size(), Eigen::Vector3d::Zero());
    CHECK(objective(traj, zeros, wts) == doctest::Approx(10.0).epsilon(1e-14));
  }

  SUBCASE("constant control with weight") {
    const Grid g4(0, 4, 64);
    const Trajectory traj = constant_trajectory(g4, Eigen::Vector4d::Zero());
    const ControlSignal ones(g4.size(), Eigen::Vector3d(1, 0, 0));
    ControlWeights w2;
    w2.a = 2.0;
    CHECK(objective(traj, ones, w2) == doctest::Approx(4.0).epsilon(1e-14));
  }

  SUBCASE("grid mismatch is an error") {
    const Trajectory traj = constant_trajectory(grid, Eigen::Vector4d::Zero());
    const ControlSignal wrong(grid.size() + 3, Eigen::Vector3d::Zero());
    CHECK_THROWS_AS(objective(traj, wrong, wts), std::invalid_argument);
  }
}

TEST_CASE("hamiltonian composition") {
  const ModelParams th = fig12_params();
  const ControlWeights wts;
  const ControlSwitches sw{1, 1, 1};

  SUBCASE("zero costate, zero control leaves the running cost") {
    const Eigen::Vector4d x(3, 1, 0.25, 2);
    CHECK(hamiltonian(x, Eigen::Vector4d::Zero(), Eigen::Vector3d::Zero(), th, wts, sw) ==
          0.25);
  }

  SUBCASE("vanishing dynamics at the RFE") {
    const Eigen::Vector4d rfe(th.pi / th.mu, 0, 0, 0);
    CHECK(hamiltonian(rfe, Eigen::Vector4d(1, 0, 0, 0), Eigen::Vector3d::Zero(), th, wts,
                      ControlSwitches{0, 0, 0}) == 0.0);
  }

  SUBCASE("random points: running cost plus p . g") {
    std::mt19937 rng(8080);
    std::uniform_real_distribution<double> comp(0.0, 5.0);
    std::uniform_real_distribution<double> pd(-3.0, 3.0);
    std::uniform_real_distribution<double> cd(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      const ModelParams rth = random_params(rng);
      const Eigen::Vector4d x(comp(rng), comp(rng), comp(rng), comp(rng));
      const Eigen::Vector4d p(pd(rng), pd(rng), pd(rng), pd(rng));
      const Eigen::Vector3d c(cd(rng), cd(rng), cd(rng));
      const double expected =
          x[kI] + 0.5 * (wts.a * c[0] * c[0] + wts.b * c[1] * c[1] + wts.c * c[2] * c[2]) +
          p.dot(rhs_controlled(x, rth, c, sw));
      CHECK(hamiltonian(x, p, c, rth, wts, sw) ==
            doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("adjoint RHS analytic forms") {
  const ControlWeights wts;

  SUBCASE("zero costate keeps only the running-cost gradient") {
    const ModelParams th = fig12_params();
    const Eigen::Vector4d d = adjoint_rhs(Eigen::Vector4d(2, 1, 1, 3),
                                          Eigen::Vector4d::Zero(),
                                          Eigen::Vector3d::Zero(), th, wts,
                                          ControlSwitches{1, 1, 1});
    CHECK(d == Eigen::Vector4d(0, 0, -1, 0));
  }

  SUBCASE("decoupled limit: contact rates and controls zero") {
    ModelParams th = fig12_params();
    th.beta = th.b = th.rho = th.lam = 0.0;
    const Eigen::Vector4d p(0.7, -1.3, 2.1, 0.4);
    const Eigen::Vector4d d = adjoint_rhs(Eigen::Vector4d(5, 4, 3, 2), p,
                                          Eigen::Vector3d::Zero(), th, wts,
                                          ControlSwitches{0, 0, 0});
    CHECK(d[0] == doctest::Approx(th.mu * p[0]).epsilon(1e-14));
    CHECK(d[1] == doctest::Approx((th.eps + th.mu) * p[1] - th.eps * p[2]).epsilon(1e-14));
    CHECK(d[2] == doctest::Approx(-1.0 + (th.delta + th.mu) * p[2] - th.delta * p[3])
                      .epsilon(1e-14));
    CHECK(d[3] == doctest::Approx(th.mu * p[3]).epsilon(1e-14));
  }

  SUBCASE("central differences of the Hamiltonian confirm the gradient") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> comp(0.0, 8.0);
    std::uniform_real_distribution<double> pd(-4.0, 4.0);
    std::uniform_real_distribution<double> cd(0.0, 1.0);
    std::bernoulli_distribution flip(0.5);
    for (int trial = 0; trial < 100; ++trial) {
      const ModelParams th = random_params(rng);
      const ControlSwitches sw{flip(rng), flip(rng), flip(rng)};
      const Eigen::Vector4d x(comp(rng), comp(rng), comp(rng), comp(rng));
      const Eigen::Vector4d p(pd(rng), pd(rng), pd(rng), pd(rng));
      const Eigen::Vector3d c(cd(rng), cd(rng), cd(rng));

      const Eigen::Vector4d analytic = adjoint_rhs(x, p, c, th, wts, sw);
      for (int j = 0; j < 4; ++j) {
        const double step = 1e-6 * std::max(1.0, std::abs(x[j]));
        Eigen::Vector4d hi = x, lo = x;
        hi[j] += step;
        lo[j] -= step;
        const double fd =
            (hamiltonian(hi, p, c, th, wts, sw) - hamiltonian(lo, p, c, th, wts, sw)) /
            (2.0 * step);
        const double scale = std::max(1.0, std::abs(fd));
        CHECK(std::abs(analytic[j] - (-fd)) <= 1e-5 * scale);
      }
    }
  }
}

TEST_CASE("backward sweep drives the adjoint running-cost source exactly") {
  // All rates zero, zero states and controls: dp3/dt = -1 is the only
  // surviving term, so p3(t) = T - t and the other costates stay at zero.
  ModelParams th;
  const ControlWeights wts;
  const ControlSwitches sw{1, 1, 1};
  const Grid grid(0, 2, 20);
  Trajectory states;
  states.grid = grid;
  states.states.assign(grid.size(), Eigen::Vector4d::Zero());
  const ControlSignal zeros(grid.size(), Eigen::Vector3d::Zero());

  auto g = [&](double, const Eigen::Vector4d& xs, const Eigen::Vector3d& cs,
               const Eigen::Vector4d& q) { return adjoint_rhs(xs, q, cs, th, wts, sw); };
  const auto adj = integrate_adjoint_backward(g, grid, states, zeros);

  CHECK(adj.back() == Eigen::Vector4d::Zero());
  for (int k = 0; k < grid.size(); ++k) {
    CHECK(adj[k][2] == doctest::Approx(2.0 - grid.node(k)).epsilon(1e-13));
    CHECK(adj[k][0] == 0.0);
    CHECK(adj[k][1] == 0.0);
    CHECK(adj[k][3] == 0.0);
  }
}

TEST_CASE("control characterization formulas") {
  ControlWeights wts;
  const ControlSwitches all{1, 1, 1};

  SUBCASE("p1 == p4 switches u off") {
    const Eigen::Vector3d c = characterize_controls(Eigen::Vector4d(7, 0, 0, 0),
                                                    Eigen::Vector4d(2, 0, 0, 2), wts, all);
    CHECK(c[kU] == 0.0);
  }

  SUBCASE("upper clamp") {
    ControlWeights w;
    w.b = 1.0;
    // p2 e / B = 5 clamps to 1.
    const Eigen::Vector3d c = characterize_controls(Eigen::Vector4d(0, 2.5, 0, 0),
                                                    Eigen::Vector4d(0, 2, 0, 0), w, all);
    CHECK(c[kV] == 1.0);
  }

  SUBCASE("interior value") {
    const Eigen::Vector3d c = characterize_controls(Eigen::Vector4d(2, 0, 0, 0),
                                                    Eigen::Vector4d(0.3, 0, 0, 0.0), wts, all);
    CHECK(c[kU] == doctest::Approx(0.6).epsilon(1e-15));
  }

  SUBCASE("negative drive clamps at zero") {
    const Eigen::Vector3d c = characterize_controls(Eigen::Vector4d(1, 1, 1, 1),
                                                    Eigen::Vector4d(-1, -1, -1, 0), wts, all);
    CHECK(c[kU] == 0.0);
    CHECK(c[kV] == 0.0);
    CHECK(c[kW] == 0.0);
  }

  SUBCASE("switches zero out their control") {
    const Eigen::Vector3d c = characterize_controls(Eigen::Vector4d(5, 5, 5, 0),
                                                    Eigen::Vector4d(1, 1, 1, 0), wts,
                                                    ControlSwitches{0, 0, 0});
    CHECK(c == Eigen::Vector3d::Zero());
  }
}

TEST_CASE("forward-backward sweep") {
  const ModelParams th = fig12_params();
  const Eigen::Vector4d x0(th.pi / th.mu - 0.01, 0, 0.01, 0);
  const ControlWeights wts;

  SUBCASE("switches off converge immediately to zero controls") {
    FbsConfig cfg;
    const Grid grid(0, 25, 500);
    const FbsResult res =
        forward_backward_sweep(th, x0, grid, wts, ControlSwitches{0, 0, 0}, cfg);
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    for (const auto& c : res.controls) CHECK(c == Eigen::Vector3d::Zero());

    // J equals the uncontrolled integral of i.
    auto f = [&](double, const Eigen::Vector4d& x) { return rhs_uncontrolled(x, th); };
    const Trajectory unc = integrate_forward(f, grid, x0);
    const ControlSignal zeros(grid.size(), Eigen::Vector3d::Zero());
    CHECK(res.objective == doctest::Approx(objective(unc, zeros, wts)).epsilon(1e-14));
  }

  SUBCASE("u-only solve on a coarse grid") {
    FbsConfig cfg;
    cfg.relaxation = 0.5;
    cfg.tol = 1e-6;
    cfg.max_iter = 200;
    const Grid grid(0, 25, 250);
    const FbsResult res =
        forward_backward_sweep(th, x0, grid, wts, ControlSwitches{1, 0, 0}, cfg);
    CHECK(res.converged);
    CHECK(res.iterations <= 200);

    // Terminal adjoint node is exactly the transversality condition.
    CHECK(res.adjoints.back() == Eigen::Vector4d::Zero());

    // Admissibility.
    for (const auto& c : res.controls) {
      for (int j = 0; j < 3; ++j) {
        CHECK(c[j] >= 0.0);
        CHECK(c[j] <= 1.0);
      }
      CHECK(c[kV] == 0.0);
      CHECK(c[kW] == 0.0);
    }

    // Objective beats the uncontrolled baseline.
    auto f = [&](double, const Eigen::Vector4d& x) { return rhs_uncontrolled(x, th); };
    const Trajectory unc = integrate_forward(f, grid, x0);
    const ControlSignal zeros(grid.size(), Eigen::Vector3d::Zero());
    const double j_unc = objective(unc, zeros, wts);
    CHECK(res.objective < j_unc);

    // Spec'd qualitative contrast: informing susceptibles swells the skeptics.
    double peak_z_ctrl = 0, peak_z_unc = 0;
    for (const auto& x : res.states.states) peak_z_ctrl = std::max(peak_z_ctrl, x[kZ]);
    for (const auto& x : unc.states) peak_z_unc = std::max(peak_z_unc, x[kZ]);
    CHECK(peak_z_ctrl > peak_z_unc);

    // Monotone tail: J non-increasing over the last five sweeps.
    const auto& hist = res.objective_history;
    REQUIRE(hist.size() >= 5);
    for (size_t k = hist.size() - 4; k < hist.size(); ++k)
      CHECK(hist[k] <= hist[k - 1] + cfg.tol * std::max(1.0, std::abs(hist[k - 1])));

    // Stationarity at interior nodes.
    double worst = 0;
    for (int k = 0; k < grid.size(); ++k) {
      const double u = res.controls[k][kU];
      if (u > 1e-6 && u < 1.0 - 1e-6) {
        const double drive =
            res.states.states[k][kS] * (res.adjoints[k][0] - res.adjoints[k][3]) / wts.a;
        worst = std::max(worst, std::abs(wts.a * u - wts.a * drive));
      }
    }
    CHECK(worst <= 1e-4);

    // Warm-starting from the converged controls re-converges in one sweep.
    const FbsResult warm = forward_backward_sweep(th, x0, grid, wts,
                                                  ControlSwitches{1, 0, 0}, cfg,
                                                  &res.controls);
    CHECK(warm.converged);
    CHECK(warm.iterations <= 3);
    CHECK(warm.objective == doctest::Approx(res.objective).epsilon(1e-9));
  }

  SUBCASE("non-convergence reports rather than throws") {
    FbsConfig cfg;
    cfg.relaxation = 0.5;  // oscillates on the three-control problem
    cfg.tol = 1e-10;
    cfg.max_iter = 5;
    const Grid grid(0, 25, 250);
    const FbsResult res =
        forward_backward_sweep(th, x0, grid, wts, ControlSwitches{1, 1, 1}, cfg);
    CHECK(!res.converged);
    CHECK(res.iterations == 5);
    for (const auto& c : res.controls)
      for (int j = 0; j < 3; ++j) {
        CHECK(c[j] >= 0.0);
        CHECK(c[j] <= 1.0);
      }
  }
}
