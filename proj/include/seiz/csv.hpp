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

#include <string>
#include <vector>

#include "seiz/control.hpp"
#include "seiz/grid.hpp"

namespace seiz {

/// Shortest round-trip formatting: re-reading reproduces the double exactly.
std::string format_double(double v);

/// Columns t,s,e,i,z, one row per grid node.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Columns t,s,e,i,z,u,v,w,p1,p2,p3,p4 for a controlled solution.
void write_controlled_csv(const std::string& path, const Trajectory& traj,
                          const ControlSignal& controls,
                          const std::vector<Eigen::Vector4d>& adjoints);

/// Reads a t,s,e,i,z file back (header required).
Trajectory read_trajectory_csv(const std::string& path);

}  // namespace seiz
