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
#include <string>
#include <vector>

#include "seiz/analysis.hpp"
#include "seiz/config.hpp"
#include "seiz/control.hpp"
#include "seiz/grid.hpp"

namespace seiz {

/// Scenario runners. out_dir == "" keeps everything in memory; otherwise the
/// directory is created and the documented files (trajectory.csv,
/// controls.csv, report.txt, report.json, sweep.csv) are written there.

struct SimulateOutput {
  Trajectory traj;
  StabilityReport stability;
  Eigen::Vector4d final_state;
  double peak_i = 0;
  double peak_i_time = 0;
  double peak_z = 0;
};

SimulateOutput run_simulate(const ScenarioConfig& cfg, const std::string& out_dir = "");

struct AnalyzeOutput {
  StabilityReport stability;
  std::optional<EndemicSolution> endemic;
};

AnalyzeOutput run_analyze(const ScenarioConfig& cfg, const std::string& out_dir = "");

struct OptimizeOutput {
  FbsResult fbs;
  Trajectory baseline;  // uncontrolled run on the same grid
  double j_controlled = 0;
  double j_uncontrolled = 0;
  int warm_start_sweeps = 0;  // iterations spent on the coarse warm-start grid
};

OptimizeOutput run_optimize(const ScenarioConfig& cfg, const std::string& out_dir = "");

struct SweepRow {
  double value = 0;
  bool ok = false;
  std::string error;
  double r0 = 0;
  double peak_i = 0;
  double final_i = 0;
  double peak_z = 0;
  double final_z = 0;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const std::string& out_dir = "");

}  // namespace seiz
