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
#include "seiz/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "seiz/csv.hpp"
#include "seiz/integrate.hpp"

namespace seiz {

namespace {

using nlohmann::json;

void ensure_dir(const std::string& out_dir) {
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void write_json(const std::string& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

json grid_json(const Grid& g) {
  return {{"t0", g.t0}, {"tf", g.tf}, {"steps", g.n_steps}, {"h", g.step()}};
}

json state_json(const Eigen::Vector4d& x) {
  return {{"s", x[kS]}, {"e", x[kE]}, {"i", x[kI]}, {"z", x[kZ]}};
}

json stability_json(const StabilityReport& rep) {
  json eigs = json::array();
  for (const auto& ev : rep.eigenvalues)
    eigs.push_back({{"re", ev.real()}, {"im", ev.imag()}});
  return {{"r0", rep.r0},
          {"rfe", state_json(rep.rfe)},
          {"eigenvalues", eigs},
          {"max_real_part", rep.max_real_part},
          {"a2", rep.a2},
          {"a1", rep.a1},
          {"a0", rep.a0},
          {"routh_hurwitz_pass", rep.routh_hurwitz_pass},
          {"threshold_consistent", rep.threshold_consistent},
          {"verdict", to_string(rep.verdict)}};
}

struct Peak {
  double value = 0;
  double time = 0;
};

Peak peak_of(const Trajectory& traj, int component) {
  Peak pk{traj.states[0][component], traj.grid.node(0)};
  for (int k = 1; k < traj.grid.size(); ++k) {
    if (traj.states[k][component] > pk.value) {
      pk.value = traj.states[k][component];
      pk.time = traj.grid.node(k);
    }
  }
  return pk;
}

}  // namespace

SimulateOutput run_simulate(const ScenarioConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  SimulateOutput out;
  try {
    auto f = [&](double, const Eigen::Vector4d& x) {
      return rhs_uncontrolled<double>(x, cfg.params);
    };
    out.traj = integrate_forward(f, cfg.grid, cfg.init);
  } catch (const IntegrationError& e) {
    throw IntegrationError("[" + cfg.label + "] " + e.what(), e.t);
  }
  out.stability = stability_report(cfg.params);
  out.final_state = out.traj.states.back();
  const Peak pi_ = peak_of(out.traj, kI);
  out.peak_i = pi_.value;
  out.peak_i_time = pi_.time;
  out.peak_z = peak_of(out.traj, kZ).value;

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_trajectory_csv(join(out_dir, "trajectory.csv"), out.traj);

    json j = {{"command", "simulate"},
              {"label", cfg.label},
              {"grid", grid_json(cfg.grid)},
              {"stability", stability_json(out.stability)},
              {"final_state", state_json(out.final_state)},
              {"final_total", out.final_state.sum()},
              {"peak_i", out.peak_i},
              {"peak_i_time", out.peak_i_time},
              {"peak_z", out.peak_z}};
    write_json(join(out_dir, "report.json"), j);

    std::string txt;
    txt += "scenario: " + cfg.label + "\n";
    txt += "r0: " + format_double(out.stability.r0) + "\n";
    txt += "verdict: " + to_string(out.stability.verdict) + "\n";
    txt += "final state: s=" + format_double(out.final_state[kS]) +
           " e=" + format_double(out.final_state[kE]) +
           " i=" + format_double(out.final_state[kI]) +
           " z=" + format_double(out.final_state[kZ]) + "\n";
    txt += "peak i: " + format_double(out.peak_i) + " at t=" +
           format_double(out.peak_i_time) + "\n";
    write_text(join(out_dir, "report.txt"), txt);
  }
  return out;
}

AnalyzeOutput run_analyze(const ScenarioConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  AnalyzeOutput out;
  out.stability = stability_report(cfg.params);
  if (cfg.params.beta > 0.0 && cfg.params.lam > 0.0)
    out.endemic = endemic_equilibrium(cfg.params);

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    json j = {{"command", "analyze"},
              {"label", cfg.label},
              {"stability", stability_json(out.stability)}};
    if (out.endemic.has_value()) {
      const auto& en = *out.endemic;
      j["endemic"] = {{"s", en.s_star},     {"e", en.e_star},
                      {"i", en.i_star},     {"z", en.z_star},
                      {"residual", en.residual}, {"cubic_roots", en.cubic_roots}};
    } else {
      j["endemic"] = nullptr;
    }
    write_json(join(out_dir, "report.json"), j);

    std::string txt;
    txt += "scenario: " + cfg.label + "\n";
    txt += "r0: " + format_double(out.stability.r0) + "\n";
    txt += "a2,a1,a0: " + format_double(out.stability.a2) + ", " +
           format_double(out.stability.a1) + ", " + format_double(out.stability.a0) + "\n";
    txt += std::string("routh-hurwitz: ") +
           (out.stability.routh_hurwitz_pass ? "pass" : "fail") + "\n";
    txt += "eigenvalues:";
    for (const auto& ev : out.stability.eigenvalues)
      txt += " (" + format_double(ev.real()) + (ev.imag() >= 0 ? "+" : "") +
             format_double(ev.imag()) + "i)";
    txt += "\nverdict: " + to_string(out.stability.verdict) + "\n";
    if (out.endemic.has_value()) {
      const auto& en = *out.endemic;
      txt += "endemic point: s=" + format_double(en.s_star) +
             " e=" + format_double(en.e_star) + " i=" + format_double(en.i_star) +
             " z=" + format_double(en.z_star) +
             " (residual " + format_double(en.residual) + ")\n";
    } else {
      txt += "endemic point: none\n";
    }
    write_text(join(out_dir, "report.txt"), txt);
  }
  return out;
}

OptimizeOutput run_optimize(const ScenarioConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  OptimizeOutput out;

  auto f0 = [&](double, const Eigen::Vector4d& x) {
    return rhs_uncontrolled<double>(x, cfg.params);
  };
  out.baseline = integrate_forward(f0, cfg.grid, cfg.init);
  const ControlSignal zeros(cfg.grid.size(), Eigen::Vector3d::Zero());
  out.j_uncontrolled = objective(out.baseline, zeros, cfg.weights);

  // Warm start: solve the same problem on a coarser grid first and seed the
  // target-grid sweep with the interpolated controls. Keeps the bang-bang
  // scenarios from hunting the switch locations node by node.
  ControlSignal warm;
  const ControlSignal* init = nullptr;
  if (cfg.switches.any()) {
    const double span = cfg.grid.tf - cfg.grid.t0;
    const int coarse_n = static_cast<int>(std::llround(span / 0.1));
    if (coarse_n >= 10 && coarse_n * 2 <= cfg.grid.n_steps) {
      const Grid coarse_grid(cfg.grid.t0, cfg.grid.tf, coarse_n);
      FbsConfig coarse_cfg = cfg.fbs;
      // The coarse stage only seeds the target grid; its own error floor is
      // O(h_coarse^2), so there is nothing to gain below 1e-6.
      coarse_cfg.tol = 1e-6;
      coarse_cfg.max_iter = 1000;
      try {
        const FbsResult coarse = forward_backward_sweep(
            cfg.params, cfg.init, coarse_grid, cfg.weights, cfg.switches, coarse_cfg);
        out.warm_start_sweeps = coarse.iterations;
        warm.resize(cfg.grid.size());
        for (int k = 0; k < cfg.grid.size(); ++k)
          warm[k] = sample_linear(coarse.controls, coarse_grid, cfg.grid.node(k));
        init = &warm;
      } catch (const IntegrationError&) {
        // Coarse grid too unstable for this problem; start cold.
        out.warm_start_sweeps = 0;
      }
    }
  }

  out.fbs = forward_backward_sweep(cfg.params, cfg.init, cfg.grid, cfg.weights,
                                   cfg.switches, cfg.fbs, init);
  out.j_controlled = out.fbs.objective;

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_trajectory_csv(join(out_dir, "trajectory.csv"), out.baseline);
    write_controlled_csv(join(out_dir, "controls.csv"), out.fbs.states,
                         out.fbs.controls, out.fbs.adjoints);

    json j = {{"command", "optimize"},
              {"label", cfg.label},
              {"grid", grid_json(cfg.grid)},
              {"switches", {{"u", cfg.switches.u}, {"v", cfg.switches.v}, {"w", cfg.switches.w}}},
              {"weights", {{"a", cfg.weights.a}, {"b", cfg.weights.b}, {"c", cfg.weights.c}}},
              {"converged", out.fbs.converged},
              {"iterations", out.fbs.iterations},
              {"warm_start_sweeps", out.warm_start_sweeps},
              {"j_controlled", out.j_controlled},
              {"j_uncontrolled", out.j_uncontrolled},
              {"final_state", state_json(out.fbs.states.states.back())}};
    write_json(join(out_dir, "report.json"), j);

    std::string txt;
    txt += "scenario: " + cfg.label + "\n";
    txt += std::string("converged: ") + (out.fbs.converged ? "yes" : "no") +
           " after " + std::to_string(out.fbs.iterations) + " iterations";
    if (out.warm_start_sweeps > 0)
      txt += " (+" + std::to_string(out.warm_start_sweeps) + " warm-start sweeps)";
    txt += "\n";
    txt += "J controlled:   " + format_double(out.j_controlled) + "\n";
    txt += "J uncontrolled: " + format_double(out.j_uncontrolled) + "\n";
    write_text(join(out_dir, "report.txt"), txt);
  }
  return out;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const std::string& out_dir) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  for (double value : spec.values) {
    SweepRow row;
    row.value = value;
    try {
      const ScenarioConfig cfg = with_parameter(spec.base, spec.parameter, value);
      const SimulateOutput sim = run_simulate(cfg);
      row.ok = true;
      row.r0 = sim.stability.r0;
      row.peak_i = sim.peak_i;
      row.final_i = sim.final_state[kI];
      row.peak_z = sim.peak_z;
      row.final_z = sim.final_state[kZ];
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    std::string csv = "value,r0,peak_i,final_i,peak_z,final_z,ok,error\n";
    for (const auto& row : rows) {
      csv += format_double(row.value) + ',' + format_double(row.r0) + ',' +
             format_double(row.peak_i) + ',' + format_double(row.final_i) + ',' +
             format_double(row.peak_z) + ',' + format_double(row.final_z) + ',' +
             (row.ok ? "1" : "0") + ',' + row.error + '\n';
    }
    write_text(join(out_dir, "sweep.csv"), csv);

    json jrows = json::array();
    for (const auto& row : rows) {
      json jr = {{"value", row.value},   {"ok", row.ok},
                 {"r0", row.r0},         {"peak_i", row.peak_i},
                 {"final_i", row.final_i}, {"peak_z", row.peak_z},
                 {"final_z", row.final_z}};
      if (!row.ok) jr["error"] = row.error;
      jrows.push_back(jr);
    }
    write_json(join(out_dir, "report.json"),
               json{{"command", "sweep"},
                    {"label", spec.base.label},
                    {"parameter", spec.parameter},
                    {"rows", jrows}});

    std::string txt = "sweep over " + spec.parameter + " (" + spec.base.label + ")\n";
    for (const auto& row : rows) {
      txt += spec.parameter + "=" + format_double(row.value) + ": ";
      txt += row.ok ? ("r0=" + format_double(row.r0) +
                       " peak_i=" + format_double(row.peak_i) +
                       " peak_z=" + format_double(row.peak_z))
                    : ("error: " + row.error);
      txt += '\n';
    }
    write_text(join(out_dir, "report.txt"), txt);
  }
  return rows;
}

}  // namespace seiz
