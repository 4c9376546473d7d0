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
#include <string>
#include <utility>
#include <vector>

#include "seiz/grid.hpp"

namespace seiz {

struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& what, double t_) : std::runtime_error(what), t(t_) {}
  double t;
};

/// A step produced a non-finite state.
struct BlowupError : IntegrationError {
  explicit BlowupError(double t_)
      : IntegrationError("integration blew up at t = " + std::to_string(t_), t_) {}
};

/// A state component went more negative than roundoff allows; the positivity
/// theorem guarantees this only happens when the step is too coarse.
struct PositivityError : IntegrationError {
  PositivityError(double t_, int component_, double value_)
      : IntegrationError("positivity violated at t = " + std::to_string(t_) +
                             ", component " + std::to_string(component_) +
                             " = " + std::to_string(value_),
                         t_),
        component(component_),
        value(value_) {}
  int component;
  double value;
};

// Components in (-kNegativeClamp, 0) are squashed to zero; anything more
// negative raises PositivityError.
inline constexpr double kNegativeClamp = 1e-12;

/// Classical 4-stage Runge-Kutta update. h may be negative (backward sweeps).
template <typename F>
Eigen::Vector4d rk4_step(F&& f, double t, const Eigen::Vector4d& x, double h) {
  if (h == 0.0) throw std::invalid_argument("rk4_step: h must be nonzero");
  const Eigen::Vector4d k1 = f(t, x);
  const Eigen::Vector4d k2 = f(t + 0.5 * h, Eigen::Vector4d(x + 0.5 * h * k1));
  const Eigen::Vector4d k3 = f(t + 0.5 * h, Eigen::Vector4d(x + 0.5 * h * k2));
  const Eigen::Vector4d k4 = f(t + h, Eigen::Vector4d(x + h * k3));
  Eigen::Vector4d out = x + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
  if (!out.allFinite()) throw BlowupError(t);
  return out;
}

/// Fixed-step RK4 over the whole grid. Node k holds the k-step solution.
/// Tiny negative components (roundoff) are clamped to zero at each node.
template <typename F>
Trajectory integrate_forward(F&& f, const Grid& grid, const Eigen::Vector4d& x0) {
  grid.validate();
  if (!x0.allFinite())
    throw std::invalid_argument("integrate_forward: x0 must be finite");
  Trajectory traj;
  traj.grid = grid;
  traj.states.resize(grid.size());
  traj.states[0] = x0;
  const double h = grid.step();
  Eigen::Vector4d x = x0;
  for (int k = 0; k < grid.n_steps; ++k) {
    x = rk4_step(f, grid.node(k), x, h);
    for (int c = 0; c < 4; ++c) {
      if (x[c] < 0.0) {
        if (x[c] > -kNegativeClamp)
          x[c] = 0.0;
        else
          throw PositivityError(grid.node(k + 1), c, x[c]);
      }
    }
    traj.states[k + 1] = x;
  }
  return traj;
}

/// Backward RK4 sweep for the costates, starting from the transversality
/// condition p(T) = 0. g(t, x, c, p) evaluates the adjoint right-hand side;
/// state and control values between nodes come from linear interpolation.
template <typename G>
std::vector<Eigen::Vector4d> integrate_adjoint_backward(
    G&& g, const Grid& grid, const Trajectory& state_traj,
    const std::vector<Eigen::Vector3d>& controls) {
  grid.validate();
  if (static_cast<int>(state_traj.states.size()) != grid.size())
    throw std::invalid_argument("integrate_adjoint_backward: state trajectory not aligned to grid");
  const bool have_controls = !controls.empty();
  if (have_controls && static_cast<int>(controls.size()) != grid.size())
    throw std::invalid_argument("integrate_adjoint_backward: controls not aligned to grid");

  auto sample = [&](double t) {
    Eigen::Vector4d xs = sample_linear(state_traj.states, grid, t);
    Eigen::Vector3d cs = have_controls ? sample_linear(controls, grid, t)
                                       : Eigen::Vector3d::Zero().eval();
    return std::make_pair(xs, cs);
  };

  std::vector<Eigen::Vector4d> adjoints(grid.size());
  adjoints[grid.n_steps] = Eigen::Vector4d::Zero();
  const double h = grid.step();
  Eigen::Vector4d p = Eigen::Vector4d::Zero();
  for (int k = grid.n_steps; k > 0; --k) {
    auto rhs = [&](double t, const Eigen::Vector4d& q) {
      auto [xs, cs] = sample(t);
      return g(t, xs, cs, q);
    };
    p = rk4_step(rhs, grid.node(k), p, -h);
    adjoints[k - 1] = p;
  }
  return adjoints;
}

}  // namespace seiz
