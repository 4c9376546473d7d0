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
#include "seiz/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace seiz {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "t,s,e,i,z\n";
  for (int k = 0; k < traj.grid.size(); ++k) {
    const auto& x = traj.states[k];
    out << format_double(traj.grid.node(k));
    for (int c = 0; c < 4; ++c) out << ',' << format_double(x[c]);
    out << '\n';
  }
}

void write_controlled_csv(const std::string& path, const Trajectory& traj,
                          const ControlSignal& controls,
                          const std::vector<Eigen::Vector4d>& adjoints) {
  if (controls.size() != traj.states.size() || adjoints.size() != traj.states.size())
    throw std::invalid_argument("write_controlled_csv: arrays not aligned");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "t,s,e,i,z,u,v,w,p1,p2,p3,p4\n";
  for (int k = 0; k < traj.grid.size(); ++k) {
    out << format_double(traj.grid.node(k));
    for (int c = 0; c < 4; ++c) out << ',' << format_double(traj.states[k][c]);
    for (int c = 0; c < 3; ++c) out << ',' << format_double(controls[k][c]);
    for (int c = 0; c < 4; ++c) out << ',' << format_double(adjoints[k][c]);
    out << '\n';
  }
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "t,s,e,i,z")
    throw std::runtime_error("'" + path + "': expected header t,s,e,i,z");
  std::vector<double> times;
  std::vector<Eigen::Vector4d> states;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double vals[5];
    char comma;
    row >> vals[0];
    for (int c = 1; c < 5; ++c) row >> comma >> vals[c];
    if (!row) throw std::runtime_error("'" + path + "': malformed row '" + line + "'");
    times.push_back(vals[0]);
    states.push_back(Eigen::Vector4d(vals[1], vals[2], vals[3], vals[4]));
  }
  if (times.size() < 2) throw std::runtime_error("'" + path + "': too few rows");
  Trajectory traj;
  traj.grid = Grid(times.front(), times.back(), static_cast<int>(times.size()) - 1);
  traj.states = std::move(states);
  return traj;
}

}  // namespace seiz
