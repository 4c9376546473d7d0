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
#include "seiz/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace seiz {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& key, int line) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("value '" + value + "' for " + key + " is not a number", line);
  }
  if (pos != value.size())
    throw ConfigError("value '" + value + "' for " + key + " is not a number", line);
  return v;
}

int parse_int(const std::string& value, const std::string& key, int line) {
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("value '" + value + "' for " + key + " is not an integer", line);
  }
  if (pos != value.size())
    throw ConfigError("value '" + value + "' for " + key + " is not an integer", line);
  return static_cast<int>(v);
}

// Assigns one qualified key ("section.key" with "" section for top level).
void assign(RawConfig& raw, const std::string& section, const std::string& key,
            const std::string& value, int line) {
  const std::string full = section.empty() ? key : section + "." + key;

  auto set_d = [&](std::optional<double>& slot) {
    if (slot.has_value()) throw ConfigError("duplicate key " + full, line);
    slot = parse_double(value, full, line);
  };
  auto set_i = [&](std::optional<int>& slot) {
    if (slot.has_value()) throw ConfigError("duplicate key " + full, line);
    slot = parse_int(value, full, line);
  };

  if (section.empty()) {
    if (key == "label") {
      if (raw.label.has_value()) throw ConfigError("duplicate key label", line);
      if (value.empty()) throw ConfigError("label must be nonempty", line);
      raw.label = value;
      return;
    }
  } else if (section == "params") {
    if (key == "pi") return set_d(raw.pi);
    if (key == "mu") return set_d(raw.mu);
    if (key == "beta") return set_d(raw.beta);
    if (key == "b") return set_d(raw.b);
    if (key == "rho") return set_d(raw.rho);
    if (key == "eps") return set_d(raw.eps);
    if (key == "p") return set_d(raw.p);
    if (key == "l") return set_d(raw.l);
    if (key == "delta") return set_d(raw.delta);
    if (key == "lambda") return set_d(raw.lambda);
  } else if (section == "init") {
    if (key == "s") return set_d(raw.init_s);
    if (key == "e") return set_d(raw.init_e);
    if (key == "i") return set_d(raw.init_i);
    if (key == "z") return set_d(raw.init_z);
  } else if (section == "grid") {
    if (key == "horizon") return set_d(raw.horizon);
    if (key == "h") return set_d(raw.h);
    if (key == "steps") return set_i(raw.steps);
  } else if (section == "control") {
    if (key == "u") return set_i(raw.sw_u);
    if (key == "v") return set_i(raw.sw_v);
    if (key == "w") return set_i(raw.sw_w);
    if (key == "a") return set_d(raw.wt_a);
    if (key == "b") return set_d(raw.wt_b);
    if (key == "c") return set_d(raw.wt_c);
    if (key == "relaxation") return set_d(raw.relaxation);
    if (key == "tol") return set_d(raw.tol);
    if (key == "max_iter") return set_i(raw.max_iter);
  } else {
    throw ConfigError("unknown section [" + section + "]", line);
  }
  throw ConfigError("unknown key " + full, line);
}

}  // namespace

RawConfig parse_config_text(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header '" + line + "'", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (section != "params" && section != "init" && section != "grid" &&
          section != "control")
        throw ConfigError("unknown section [" + section + "]", lineno);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value, got '" + line + "'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", lineno);
    assign(raw, section, key, value, lineno);
  }
  return raw;
}

RawConfig load_raw_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

ScenarioConfig load_config(const std::string& path) {
  return load_raw_config(path).finalize();
}

void ScenarioConfig::validate() const {
  if (label.empty()) throw ConfigError("label must be nonempty");
  try {
    params.validate();
    switches.validate();
    weights.validate();
    fbs.validate();
    grid.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  if (!init.allFinite()) throw ConfigError("init state must be finite");
  for (int c = 0; c < 4; ++c)
    if (init[c] < 0.0) throw ConfigError("init components must be >= 0");
}

ScenarioConfig RawConfig::finalize() const {
  auto require = [](const std::optional<double>& v, const char* key) {
    if (!v.has_value())
      throw ConfigError(std::string("missing required key params.") + key);
    return *v;
  };

  ScenarioConfig cfg;
  cfg.params.pi = require(pi, "pi");
  cfg.params.mu = require(mu, "mu");
  cfg.params.beta = require(beta, "beta");
  cfg.params.b = require(b, "b");
  cfg.params.rho = require(rho, "rho");
  cfg.params.eps = require(eps, "eps");
  cfg.params.p = require(p, "p");
  cfg.params.l = require(l, "l");
  cfg.params.delta = require(delta, "delta");
  cfg.params.lam = require(lambda, "lambda");

  cfg.switches.u = sw_u.value_or(0);
  cfg.switches.v = sw_v.value_or(0);
  cfg.switches.w = sw_w.value_or(0);

  cfg.weights.a = wt_a.value_or(1.0);
  cfg.weights.b = wt_b.value_or(1.0);
  cfg.weights.c = wt_c.value_or(1.0);

  cfg.fbs.relaxation = relaxation.value_or(0.5);
  cfg.fbs.tol = tol.value_or(1e-3);
  cfg.fbs.max_iter = max_iter.value_or(200);

  // Controlled scenarios default to the optimal-control horizon.
  const double tf = horizon.value_or(cfg.switches.any() ? 25.0 : 100.0);
  if (!(tf > 0.0)) throw ConfigError("grid.horizon must be > 0");
  if (h.has_value() && steps.has_value())
    throw ConfigError("grid.h and grid.steps are mutually exclusive");
  int n = 0;
  if (steps.has_value()) {
    n = *steps;
  } else {
    const double hh = h.value_or(0.01);
    if (!(hh > 0.0)) throw ConfigError("grid.h must be > 0");
    n = static_cast<int>(std::llround(tf / hh));
  }
  if (n < 1) throw ConfigError("grid.steps must be >= 1");
  cfg.grid = Grid(0.0, tf, n);

  if (label.has_value()) cfg.label = *label;

  // Default initial state: the rumor-free point nudged by a small spreader seed.
  try {
    cfg.params.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  const double sbar = cfg.params.pi / cfg.params.mu;
  cfg.init[kS] = init_s.value_or(std::max(sbar - 0.01, 0.0));
  cfg.init[kE] = init_e.value_or(0.0);
  cfg.init[kI] = init_i.value_or(0.01);
  cfg.init[kZ] = init_z.value_or(0.0);

  cfg.validate();
  return cfg;
}

RawConfig preset(const std::string& name) {
  RawConfig raw;
  raw.mu = 0.5;
  raw.eps = 0.06;
  raw.delta = 0.05;
  raw.p = 0.09767;
  raw.lambda = 0.0084231;
  raw.rho = 0.21431;
  raw.l = 0.005234;
  raw.b = 0.00539;
  if (name == "fig3") {
    raw.pi = 10.0;
    raw.beta = 0.007;
  } else if (name == "fig12" || name == "case-u" || name == "case-v" ||
             name == "case-uvw") {
    raw.pi = 50.0;
    raw.beta = 0.07;
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  if (name == "case-u") {
    raw.sw_u = 1;
  } else if (name == "case-v") {
    raw.sw_v = 1;
  } else if (name == "case-uvw") {
    raw.sw_u = 1;
    raw.sw_v = 1;
    raw.sw_w = 1;
  }
  // Tight stopping threshold for the control scenarios; the three-control
  // sweep map overshoots at 0.5 and needs the smaller blend factor.
  if (name == "case-u" || name == "case-v" || name == "case-uvw") raw.tol = 1e-6;
  if (name == "case-uvw") raw.relaxation = 0.1;
  raw.label = name;
  return raw;
}

std::vector<std::string> preset_names() {
  return {"fig3", "fig12", "case-u", "case-v", "case-uvw"};
}

void apply_override(RawConfig& raw, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + assignment + "' must look like key=value");
  const std::string path = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const auto dot = path.find('.');
  const std::string section = dot == std::string::npos ? "" : path.substr(0, dot);
  const std::string key = dot == std::string::npos ? path : path.substr(dot + 1);

  // Overrides replace, so clear any existing value first.
  RawConfig fresh;
  assign(fresh, section, key, value, 0);
  auto merge = [](auto& dst, const auto& src) {
    if (src.has_value()) dst = src;
  };
  merge(raw.label, fresh.label);
  merge(raw.pi, fresh.pi);
  merge(raw.mu, fresh.mu);
  merge(raw.beta, fresh.beta);
  merge(raw.b, fresh.b);
  merge(raw.rho, fresh.rho);
  merge(raw.eps, fresh.eps);
  merge(raw.p, fresh.p);
  merge(raw.l, fresh.l);
  merge(raw.delta, fresh.delta);
  merge(raw.lambda, fresh.lambda);
  merge(raw.init_s, fresh.init_s);
  merge(raw.init_e, fresh.init_e);
  merge(raw.init_i, fresh.init_i);
  merge(raw.init_z, fresh.init_z);
  merge(raw.horizon, fresh.horizon);
  merge(raw.h, fresh.h);
  merge(raw.steps, fresh.steps);
  merge(raw.sw_u, fresh.sw_u);
  merge(raw.sw_v, fresh.sw_v);
  merge(raw.sw_w, fresh.sw_w);
  merge(raw.wt_a, fresh.wt_a);
  merge(raw.wt_b, fresh.wt_b);
  merge(raw.wt_c, fresh.wt_c);
  merge(raw.relaxation, fresh.relaxation);
  merge(raw.tol, fresh.tol);
  merge(raw.max_iter, fresh.max_iter);
}

void SweepSpec::validate() const {
  static const std::vector<std::string> names = {"pi", "mu", "beta", "b", "rho",
                                                 "eps", "p", "l", "delta", "lambda"};
  if (std::find(names.begin(), names.end(), parameter) == names.end())
    throw ConfigError("sweep parameter '" + parameter + "' is not a model rate");
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  base.validate();
}

ScenarioConfig with_parameter(const ScenarioConfig& base, const std::string& name,
                              double value) {
  ScenarioConfig cfg = base;
  if (name == "pi") cfg.params.pi = value;
  else if (name == "mu") cfg.params.mu = value;
  else if (name == "beta") cfg.params.beta = value;
  else if (name == "b") cfg.params.b = value;
  else if (name == "rho") cfg.params.rho = value;
  else if (name == "eps") cfg.params.eps = value;
  else if (name == "p") cfg.params.p = value;
  else if (name == "l") cfg.params.l = value;
  else if (name == "delta") cfg.params.delta = value;
  else if (name == "lambda") cfg.params.lam = value;
  else throw ConfigError("sweep parameter '" + name + "' is not a model rate");
  cfg.validate();
  return cfg;
}

}  // namespace seiz
