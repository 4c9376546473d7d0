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
#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "seiz/grid.hpp"
#include "seiz/model.hpp"

namespace seiz {

/// Quadratic cost coefficients for u, v, w.
struct ControlWeights {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;

  void validate() const {
    if (!(a > 0.0)) throw std::domain_error("control.a weight must be > 0");
    if (!(b > 0.0)) throw std::domain_error("control.b weight must be > 0");
    if (!(c > 0.0)) throw std::domain_error("control.c weight must be > 0");
  }
};

/// Grid-aligned control samples, each component in [0, 1].
using ControlSignal = std::vector<Eigen::Vector3d>;

/// J = integral of i + (A u^2 + B v^2 + C w^2)/2 by composite trapezoid.
double objective(const Trajectory& traj, const ControlSignal& ctrl,
                 const ControlWeights& wts);

/// Running cost plus costate-weighted controlled dynamics.
double hamiltonian(const Eigen::Vector4d& x, const Eigen::Vector4d& p,
                   const Eigen::Vector3d& c, const ModelParams& th,
                   const ControlWeights& wts, const ControlSwitches& sw);

/// dp/dt = -dH/dx, from the analytic partials of the Hamiltonian above.
Eigen::Vector4d adjoint_rhs(const Eigen::Vector4d& x, const Eigen::Vector4d& p,
                            const Eigen::Vector3d& c, const ModelParams& th,
                            const ControlWeights& wts, const ControlSwitches& sw);

/// Pointwise Hamiltonian minimizers clamped to [0,1]:
///   u* = clamp(sw_u * s (p1 - p4) / A),
///   v* = clamp(sw_v * p2 e / B),
///   w* = clamp(sw_w * p3 i / C).
Eigen::Vector3d characterize_controls(const Eigen::Vector4d& x,
                                      const Eigen::Vector4d& p,
                                      const ControlWeights& wts,
                                      const ControlSwitches& sw);

struct FbsConfig {
  double relaxation = 0.5;  // blend factor in (0, 1]
  double tol = 1e-3;        // relative sup-norm control-change threshold
  int max_iter = 200;

  void validate() const {
    if (!(relaxation > 0.0 && relaxation <= 1.0))
      throw std::domain_error("fbs.relaxation must be in (0,1]");
    if (!(tol > 0.0)) throw std::domain_error("fbs.tol must be > 0");
    if (max_iter < 1) throw std::domain_error("fbs.max_iter must be >= 1");
  }
};

struct FbsResult {
  ControlSignal controls;
  Trajectory states;                     // states + controls + adjoints attached
  std::vector<Eigen::Vector4d> adjoints;
  double objective = 0;
  int iterations = 0;
  bool converged = false;
  double last_update_norm = 0;
  std::vector<double> objective_history;  // one entry per sweep
};

/// Forward-backward sweep: integrate states forward under the current
/// controls, costates backward from p(T) = 0, re-characterize the controls
/// nodewise, and blend with the relaxation factor until the sup-norm control
/// change falls below tol * max(1, sup|c|). Non-convergence at max_iter
/// returns converged = false with the last iterate.
///
/// initial_controls, when given, seeds the iteration (grid-aligned, in [0,1]);
/// otherwise the sweep starts from zero controls.
FbsResult forward_backward_sweep(const ModelParams& th, const Eigen::Vector4d& x0,
                                 const Grid& grid, const ControlWeights& wts,
                                 const ControlSwitches& sw, const FbsConfig& cfg,
                                 const ControlSignal* initial_controls = nullptr);

}  // namespace seiz
