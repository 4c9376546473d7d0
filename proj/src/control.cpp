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
#include "seiz/control.hpp"

#include <algorithm>
#include <cmath>

#include "seiz/integrate.hpp"

namespace seiz {

double objective(const Trajectory& traj, const ControlSignal& ctrl,
                 const ControlWeights& wts) {
  const int n = traj.grid.n_steps;
  if (static_cast<int>(traj.states.size()) != n + 1 ||
      static_cast<int>(ctrl.size()) != n + 1)
    throw std::invalid_argument("objective: trajectory and controls must share the grid");
  const double h = traj.grid.step();
  auto integrand = [&](int k) {
    const Eigen::Vector3d& c = ctrl[k];
    return traj.states[k][kI] + 0.5 * (wts.a * c[kU] * c[kU] +
                                       wts.b * c[kV] * c[kV] +
                                       wts.c * c[kW] * c[kW]);
  };
  double sum = 0.5 * (integrand(0) + integrand(n));
  for (int k = 1; k < n; ++k) sum += integrand(k);
  return h * sum;
}

double hamiltonian(const Eigen::Vector4d& x, const Eigen::Vector4d& p,
                   const Eigen::Vector3d& c, const ModelParams& th,
                   const ControlWeights& wts, const ControlSwitches& sw) {
  const double running = x[kI] + 0.5 * (wts.a * c[kU] * c[kU] +
                                        wts.b * c[kV] * c[kV] +
                                        wts.c * c[kW] * c[kW]);
  return running + p.dot(rhs_controlled<double>(x, th, c, sw));
}

Eigen::Vector4d adjoint_rhs(const Eigen::Vector4d& x, const Eigen::Vector4d& p,
                            const Eigen::Vector3d& c, const ModelParams& th,
                            const ControlWeights& /*wts*/, const ControlSwitches& sw) {
  const double s = x[kS], e = x[kE], i = x[kI], z = x[kZ];
  const double u = sw.u * c[kU], v = sw.v * c[kV], w = sw.w * c[kW];
  const double p1 = p[0], p2 = p[1], p3 = p[2], p4 = p[3];

  const double dH_ds = p1 * (-th.mu - th.beta * i - th.b * z - u) +
                       p2 * ((1.0 - th.p) * th.beta * i + (1.0 - th.l) * th.b * z) +
                       p3 * (th.p * th.beta * i) + p4 * (th.l * th.b * z + u);
  const double dH_de = p2 * (-th.rho * i - th.eps - th.mu - v) +
                       p3 * (th.rho * i + th.eps);
  const double dH_di = 1.0 + p1 * (-th.beta * s) +
                       p2 * ((1.0 - th.p) * th.beta * s - th.rho * e) +
                       p3 * (th.p * th.beta * s + th.rho * e - th.delta -
                             th.lam * z - th.mu - w) +
                       p4 * (th.delta + th.lam * z);
  const double dH_dz = p1 * (-th.b * s) + p2 * ((1.0 - th.l) * th.b * s) +
                       p3 * (-th.lam * i) + p4 * (th.l * th.b * s + th.lam * i - th.mu);

  return {-dH_ds, -dH_de, -dH_di, -dH_dz};
}

Eigen::Vector3d characterize_controls(const Eigen::Vector4d& x,
                                      const Eigen::Vector4d& p,
                                      const ControlWeights& wts,
                                      const ControlSwitches& sw) {
  wts.validate();
  auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
  Eigen::Vector3d c;
  c[kU] = clamp01(sw.u * x[kS] * (p[0] - p[3]) / wts.a);
  c[kV] = clamp01(sw.v * p[1] * x[kE] / wts.b);
  c[kW] = clamp01(sw.w * p[2] * x[kI] / wts.c);
  return c;
}

FbsResult forward_backward_sweep(const ModelParams& th, const Eigen::Vector4d& x0,
                                 const Grid& grid, const ControlWeights& wts,
                                 const ControlSwitches& sw, const FbsConfig& cfg,
                                 const ControlSignal* initial_controls) {
  grid.validate();
  wts.validate();
  sw.validate();
  cfg.validate();
  if (initial_controls != nullptr &&
      static_cast<int>(initial_controls->size()) != grid.size())
    throw std::invalid_argument("forward_backward_sweep: initial controls not aligned to grid");

  const int n = grid.n_steps;
  ControlSignal c = initial_controls != nullptr
                        ? *initial_controls
                        : ControlSignal(n + 1, Eigen::Vector3d::Zero());

  FbsResult res;
  Trajectory states;
  std::vector<Eigen::Vector4d> adjoints;

  auto sweep = [&](const ControlSignal& ctrl) {
    auto f = [&](double t, const Eigen::Vector4d& x) {
      return rhs_controlled<double>(x, th, sample_linear(ctrl, grid, t), sw);
    };
    states = integrate_forward(f, grid, x0);
    auto g = [&](double, const Eigen::Vector4d& xs, const Eigen::Vector3d& cs,
                 const Eigen::Vector4d& q) {
      return adjoint_rhs(xs, q, cs, th, wts, sw);
    };
    adjoints = integrate_adjoint_backward(g, grid, states, ctrl);
  };

  bool converged = false;
  int it = 0;
  double update = 0;
  while (it < cfg.max_iter && !converged) {
    ++it;
    sweep(c);

    ControlSignal next(n + 1);
    double dc = 0.0;
    double cmax = 0.0;
    for (int k = 0; k <= n; ++k) {
      const Eigen::Vector3d cand = characterize_controls(states.states[k], adjoints[k], wts, sw);
      next[k] = cfg.relaxation * cand + (1.0 - cfg.relaxation) * c[k];
      dc = std::max(dc, (next[k] - c[k]).cwiseAbs().maxCoeff());
      cmax = std::max(cmax, next[k].cwiseAbs().maxCoeff());
    }
    c = std::move(next);
    update = dc;
    res.objective_history.push_back(objective(states, c, wts));
    converged = dc <= cfg.tol * std::max(1.0, cmax);
  }

  // Final pass so states and adjoints are consistent with the returned controls.
  sweep(c);

  res.controls = c;
  res.states = std::move(states);
  res.states.controls = res.controls;
  res.states.adjoints = adjoints;
  res.adjoints = std::move(adjoints);
  res.objective = objective(res.states, res.controls, wts);
  res.iterations = it;
  res.converged = converged;
  res.last_update_norm = update;
  return res;
}

}  // namespace seiz
