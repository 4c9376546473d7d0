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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seiz/control.hpp"
#include "seiz/grid.hpp"
#include "seiz/model.hpp"

namespace seiz {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what, int line_ = 0)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what
                                     : what),
        line(line_) {}
  int line;  // 0 when not tied to a file location
};

/// Fully validated scenario: parameters, initial state, grid, and control setup.
struct ScenarioConfig {
  std::string label = "scenario";
  ModelParams params;
  Eigen::Vector4d init = Eigen::Vector4d::Zero();
  Grid grid;
  ControlSwitches switches;
  ControlWeights weights;
  FbsConfig fbs;

  void validate() const;
};

/// Partially specified scenario, as read from a file or built by overrides.
/// finalize() fills documented defaults and validates.
struct RawConfig {
  std::optional<std::string> label;

  std::optional<double> pi, mu, beta, b, rho, eps, p, l, delta, lambda;
  std::optional<double> init_s, init_e, init_i, init_z;
  std::optional<double> horizon, h;
  std::optional<int> steps;
  std::optional<int> sw_u, sw_v, sw_w;
  std::optional<double> wt_a, wt_b, wt_c;
  std::optional<double> relaxation, tol;
  std::optional<int> max_iter;

  ScenarioConfig finalize() const;
};

/// Parses the sectioned key=value format ([params], [init], [grid],
/// [control], top-level label). Unknown or duplicate keys are errors with
/// line information.
RawConfig parse_config_text(const std::string& text);

RawConfig load_raw_config(const std::string& path);

/// Convenience: parse + finalize.
ScenarioConfig load_config(const std::string& path);

/// Builtin presets: fig3, fig12, case-u, case-v, case-uvw.
RawConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Applies a dotted-path override such as "params.beta=0.07",
/// "grid.horizon=25", "control.u=1", "init.i=0.02" or "label=run1".
void apply_override(RawConfig& raw, const std::string& assignment);

/// One-parameter sweep over a base scenario.
struct SweepSpec {
  std::string parameter;       // one of the ten rate names
  std::vector<double> values;  // at least one
  ScenarioConfig base;

  void validate() const;
};

/// Returns a copy of the scenario with the named rate set to value.
ScenarioConfig with_parameter(const ScenarioConfig& base, const std::string& name,
                              double value);

}  // namespace seiz
