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

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "seiz/model.hpp"

namespace seiz {

/// Next-generation decomposition at the rumor-free equilibrium.
/// F holds the new-spreader inflow rates, V the transfers; K = F V^-1.
struct NextGenMatrices {
  Eigen::Matrix2d F;
  Eigen::Matrix2d V;
  Eigen::Matrix2d K;
};

/// (pi/mu, 0, 0, 0). Requires mu > 0.
Eigen::Vector4d rumor_free_equilibrium(const ModelParams& th);

NextGenMatrices next_generation(const ModelParams& th);

/// Closed-form basic reproduction number
/// beta*pi*(eps + p*mu) / (mu*(eps+mu)*(delta+mu)); equals the spectral
/// radius of the next-generation matrix K.
double r0(const ModelParams& th);

/// Jacobian of rhs_uncontrolled at an arbitrary state.
Eigen::Matrix4d jacobian(const ModelParams& th, const Eigen::Vector4d& x);

/// Closed-form Jacobian at the rumor-free equilibrium.
Eigen::Matrix4d jacobian_rfe(const ModelParams& th);

/// Coefficients of the cubic factor of the RFE characteristic polynomial,
/// (-lambda - mu)(lambda^3 + a2 lambda^2 + a1 lambda + a0), computed from
/// matrix invariants of the lower-right 3x3 block.
struct CubicCoefficients {
  double a2 = 0;
  double a1 = 0;
  double a0 = 0;
};

CubicCoefficients cubic_coefficients(const ModelParams& th);

/// Roots of lambda^3 + a2 lambda^2 + a1 lambda + a0 by the
/// trigonometric/Cardano closed form, Newton-polished.
std::array<std::complex<double>, 3> solve_monic_cubic(double a2, double a1, double a0);

/// Strict Routh-Hurwitz test for the cubic: a2 > 0, a0 > 0, a2*a1 > a0.
bool routh_hurwitz(double a2, double a1, double a0);

enum class Verdict { LocallyStable, Unstable, Marginal };

std::string to_string(Verdict v);

// Eigenvalue real parts within this band of zero yield Verdict::Marginal.
inline constexpr double kMarginalTol = 1e-9;

struct StabilityReport {
  double r0 = 0;
  Eigen::Vector4d rfe = Eigen::Vector4d::Zero();
  Eigen::Matrix4d jacobian = Eigen::Matrix4d::Zero();
  // -mu plus the three cubic roots, sorted by descending real part.
  std::array<std::complex<double>, 4> eigenvalues{};
  double a2 = 0, a1 = 0, a0 = 0;
  bool routh_hurwitz_pass = false;
  // (r0 < 1) <=> routh_hurwitz_pass; false only when the S-Z feedback loop
  // that the next-generation reduction ignores destabilizes the RFE.
  bool threshold_consistent = true;
  double max_real_part = 0;
  Verdict verdict = Verdict::Marginal;
};

StabilityReport stability_report(const ModelParams& th);

struct EndemicSolution {
  double s_star = 0;
  double e_star = 0;
  double i_star = 0;
  double z_star = 0;
  double residual = 0;             // max-norm of the RHS at the point
  std::vector<double> cubic_roots; // real roots of the susceptible cubic
};

/// Real roots of the endemic susceptible cubic A s^3 + B s^2 + C s + D = 0.
/// Diagnostic only; the Newton solve below is authoritative.
std::vector<double> endemic_cubic_real_roots(const ModelParams& th);

/// Interior steady state with i* > 0, found by a damped multi-start Newton
/// solve of the full RHS (e unconstrained). Returns nothing when no
/// nonnegative candidate reaches the residual tolerance, which is the
/// expected outcome for r0 <= 1. Requires mu, beta, lambda > 0.
std::optional<EndemicSolution> endemic_equilibrium(const ModelParams& th,
                                                   double residual_tol = 1e-8);

}  // namespace seiz
