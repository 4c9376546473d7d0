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
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seiz/config.hpp"
#include "seiz/csv.hpp"
#include "seiz/integrate.hpp"
#include "seiz/runner.hpp"

namespace {

// Stable exit-code contract.
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;
constexpr int kNotConverged = 4;

struct CommonArgs {
  std::string config_path;
  std::string preset_name;
  std::string out_dir = "out";
  std::vector<std::string> sets;
  int steps = 0;
  double horizon = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Scenario config file");
  cmd->add_option("--preset", args.preset_name,
                  "Builtin preset: fig3, fig12, case-u, case-v, case-uvw");
  cmd->add_option("--out", args.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--set", args.sets,
                  "Dotted-path override, e.g. params.beta=0.07 (repeatable)");
  cmd->add_option("--steps", args.steps, "Override grid step count");
  cmd->add_option("--horizon", args.horizon, "Override time horizon");
}

seiz::ScenarioConfig build_config(const CommonArgs& args) {
  if (args.config_path.empty() == args.preset_name.empty())
    throw seiz::ConfigError("exactly one of --config or --preset is required");
  seiz::RawConfig raw = args.config_path.empty()
                            ? seiz::preset(args.preset_name)
                            : seiz::load_raw_config(args.config_path);
  for (const auto& s : args.sets) seiz::apply_override(raw, s);
  if (args.horizon > 0) seiz::apply_override(raw, "grid.horizon=" + seiz::format_double(args.horizon));
  if (args.steps > 0) seiz::apply_override(raw, "grid.steps=" + std::to_string(args.steps));
  return raw.finalize();
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw seiz::ConfigError("sweep value '" + item + "' is not a number");
    }
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SEIZ rumor-propagation simulator and optimal-control solver"};
  app.require_subcommand(1);

  CommonArgs sim_args, ana_args, opt_args, sweep_args;
  std::string sweep_param, sweep_values;

  CLI::App* sim = app.add_subcommand("simulate", "Integrate the uncontrolled system");
  add_common(sim, sim_args);

  CLI::App* ana = app.add_subcommand("analyze", "R0, eigenvalues, stability, equilibria");
  add_common(ana, ana_args);

  CLI::App* opt = app.add_subcommand("optimize", "Solve the optimal-control problem");
  add_common(opt, opt_args);

  CLI::App* swp = app.add_subcommand("sweep", "Simulate over a range of one parameter");
  add_common(swp, sweep_args);
  swp->add_option("--param", sweep_param, "Parameter to sweep (e.g. beta)")->required();
  swp->add_option("--values", sweep_values, "Comma-separated values")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      const auto cfg = build_config(sim_args);
      const auto out = seiz::run_simulate(cfg, sim_args.out_dir);
      std::cout << "r0 = " << out.stability.r0
                << ", verdict = " << seiz::to_string(out.stability.verdict)
                << ", peak i = " << out.peak_i << " at t = " << out.peak_i_time
                << "\nwrote " << sim_args.out_dir << "/trajectory.csv\n";
    } else if (ana->parsed()) {
      const auto cfg = build_config(ana_args);
      const auto out = seiz::run_analyze(cfg, ana_args.out_dir);
      std::cout << "r0 = " << out.stability.r0
                << ", verdict = " << seiz::to_string(out.stability.verdict)
                << ", endemic point: " << (out.endemic ? "present" : "none")
                << "\nwrote " << ana_args.out_dir << "/report.json\n";
    } else if (opt->parsed()) {
      const auto cfg = build_config(opt_args);
      const auto out = seiz::run_optimize(cfg, opt_args.out_dir);
      std::cout << "converged = " << (out.fbs.converged ? "yes" : "no")
                << " in " << out.fbs.iterations << " iterations"
                << ", J = " << out.j_controlled
                << " (uncontrolled " << out.j_uncontrolled << ")"
                << "\nwrote " << opt_args.out_dir << "/controls.csv\n";
      if (!out.fbs.converged) {
        std::cerr << "warning: sweep did not converge within "
                  << cfg.fbs.max_iter << " iterations\n";
        return kNotConverged;
      }
    } else if (swp->parsed()) {
      seiz::SweepSpec spec;
      spec.base = build_config(sweep_args);
      spec.parameter = sweep_param;
      spec.values = parse_values(sweep_values);
      const auto rows = seiz::run_sweep(spec, sweep_args.out_dir);
      int failures = 0;
      for (const auto& row : rows) {
        if (!row.ok) {
          ++failures;
          std::cerr << sweep_param << "=" << row.value << " failed: " << row.error << "\n";
        }
      }
      std::cout << "swept " << rows.size() << " values (" << failures
                << " failures)\nwrote " << sweep_args.out_dir << "/sweep.csv\n";
      if (failures == static_cast<int>(rows.size())) return kNumericalError;
    }
  } catch (const seiz::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const seiz::IntegrationError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
  return kOk;
}
