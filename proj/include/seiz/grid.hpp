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

namespace seiz {

/// Uniform time grid with nodes t0 + k*h, k = 0..n_steps.
struct Grid {
  double t0 = 0.0;
  double tf = 1.0;
  int n_steps = 1;

  Grid() = default;
  Grid(double t0_, double tf_, int n_steps_) : t0(t0_), tf(tf_), n_steps(n_steps_) {
    validate();
  }

  void validate() const {
    if (!(tf > t0)) throw std::domain_error("grid: tf must be > t0");
    if (n_steps < 1) throw std::domain_error("grid: n_steps must be >= 1");
  }

  double step() const { return (tf - t0) / n_steps; }
  double node(int k) const { return t0 + k * step(); }
  int size() const { return n_steps + 1; }
};

/// Grid-aligned solution storage. controls/adjoints are optional; when
/// present they have the same length as states.
struct Trajectory {
  Grid grid;
  std::vector<Eigen::Vector4d> states;
  std::vector<Eigen::Vector3d> controls;
  std::vector<Eigen::Vector4d> adjoints;
};

/// Piecewise-linear sampling of grid-aligned records at an arbitrary time.
/// Times outside [t0, tf] clamp to the boundary segments.
template <typename Vec>
Vec sample_linear(const std::vector<Vec>& values, const Grid& grid, double t) {
  const double h = grid.step();
  int k = static_cast<int>((t - grid.t0) / h);
  if (k < 0) k = 0;
  if (k > grid.n_steps - 1) k = grid.n_steps - 1;
  const double frac = (t - grid.node(k)) / h;
  return (1.0 - frac) * values[k] + frac * values[k + 1];
}

}  // namespace seiz
