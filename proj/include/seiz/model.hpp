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

#include <cmath>
#include <stdexcept>
#include <string>

namespace seiz {

// State component order throughout the library.
inline constexpr int kS = 0;  // susceptible
inline constexpr int kE = 1;  // exposed
inline constexpr int kI = 2;  // spreader ("infected")
inline constexpr int kZ = 3;  // skeptic

// Control component order.
inline constexpr int kU = 0;
inline constexpr int kV = 1;
inline constexpr int kW = 2;

template <typename Scalar>
using State = Eigen::Vector4<Scalar>;

template <typename Scalar>
using Control = Eigen::Vector3<Scalar>;

template <typename Scalar>
using Costate = Eigen::Vector4<Scalar>;

/// The ten rate constants of the SEIZ rumor model.
///
/// pi and mu carry per-unit-time units, as do the four contact rates
/// (beta: S-I, b: S-Z, rho: E-I, lam: I-Z) and the progression rates
/// (eps: incubation, delta: spreader-to-skeptic). p and l are unitless
/// transition probabilities.
template <typename Scalar = double>
struct Params {
  Scalar pi = 0;
  Scalar mu = 0;
  Scalar beta = 0;
  Scalar b = 0;
  Scalar rho = 0;
  Scalar eps = 0;
  Scalar p = 0;
  Scalar l = 0;
  Scalar delta = 0;
  Scalar lam = 0;

  /// Throws std::domain_error naming the offending field.
  void validate() const {
    auto nonneg = [](Scalar v, const char* name) {
      if (!(v >= Scalar(0)))
        throw std::domain_error(std::string("params.") + name + " must be >= 0");
    };
    nonneg(pi, "pi");
    nonneg(beta, "beta");
    nonneg(b, "b");
    nonneg(rho, "rho");
    nonneg(eps, "eps");
    nonneg(delta, "delta");
    nonneg(lam, "lambda");
    if (!(mu > Scalar(0))) throw std::domain_error("params.mu must be > 0");
    if (!(p >= Scalar(0) && p <= Scalar(1)))
      throw std::domain_error("params.p must be in [0,1]");
    if (!(l >= Scalar(0) && l <= Scalar(1)))
      throw std::domain_error("params.l must be in [0,1]");
  }
};

using ModelParams = Params<double>;

/// On/off indicators for the three controls (1 = control active).
struct ControlSwitches {
  int u = 0;
  int v = 0;
  int w = 0;

  bool any() const { return u != 0 || v != 0 || w != 0; }

  void validate() const {
    auto binary = [](int v, const char* name) {
      if (v != 0 && v != 1)
        throw std::domain_error(std::string("control.") + name +
                                " switch must be 0 or 1");
    };
    binary(u, "u");
    binary(v, "v");
    binary(w, "w");
  }
};

/// Per-capita scaling of absolute compartment counts.
template <typename Scalar>
State<Scalar> normalize(Scalar S, Scalar E, Scalar I, Scalar Z, Scalar N) {
  if (!(N > Scalar(0))) throw std::domain_error("normalize: N must be > 0");
  if (S < Scalar(0) || E < Scalar(0) || I < Scalar(0) || Z < Scalar(0))
    throw std::domain_error("normalize: compartment counts must be >= 0");
  return State<Scalar>(S / N, E / N, I / N, Z / N);
}

/// Right-hand side of the normalized uncontrolled SEIZ system.
///
/// The four nonlinear coupling terms cancel in the component sum, so
/// ds + de + di + dz == pi - mu * (s + e + i + z).
template <typename Scalar>
State<Scalar> rhs_uncontrolled(const State<Scalar>& x, const Params<Scalar>& th) {
  const Scalar s = x[kS], e = x[kE], i = x[kI], z = x[kZ];
  State<Scalar> d;
  d[kS] = th.pi - th.mu * s - th.beta * s * i - th.b * s * z;
  d[kE] = (Scalar(1) - th.p) * th.beta * s * i + (Scalar(1) - th.l) * th.b * s * z -
          th.rho * e * i - th.eps * e - th.mu * e;
  d[kI] = th.p * th.beta * s * i + th.rho * e * i + th.eps * e - th.delta * i -
          th.lam * i * z - th.mu * i;
  d[kZ] = th.l * th.b * s * z + th.delta * i + th.lam * i * z - th.mu * z;
  return d;
}

/// Controlled right-hand side. u diverts susceptibles to skeptics; v and w
/// remove exposed and spreaders without re-entry, so the component sum is
/// pi - mu*n - sw.v*v*e - sw.w*w*i.
///
/// With all switches (or all controls) zero this reproduces
/// rhs_uncontrolled bit for bit.
template <typename Scalar>
State<Scalar> rhs_controlled(const State<Scalar>& x, const Params<Scalar>& th,
                             const Control<Scalar>& c, const ControlSwitches& sw) {
  State<Scalar> d = rhs_uncontrolled(x, th);
  const Scalar us = Scalar(sw.u) * c[kU] * x[kS];
  const Scalar ve = Scalar(sw.v) * c[kV] * x[kE];
  const Scalar wi = Scalar(sw.w) * c[kW] * x[kI];
  d[kS] -= us;
  d[kE] -= ve;
  d[kI] -= wi;
  d[kZ] += us;
  return d;
}

/// Exact solution of dn/dt = pi - mu*n, which the uncontrolled system
/// satisfies: n(t) = pi/mu + (n0 - pi/mu) * exp(-mu t).
template <typename Scalar>
Scalar total_population_analytic(Scalar n0, Scalar t, const Params<Scalar>& th) {
  if (!(th.mu > Scalar(0)))
    throw std::domain_error("total_population_analytic: params.mu must be > 0");
  const Scalar eq = th.pi / th.mu;
  using std::exp;
  return eq + (n0 - eq) * exp(-th.mu * t);
}

}  // namespace seiz
