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
#include "seiz/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace seiz {

namespace {

void require_positive_mu(const ModelParams& th) {
  if (!(th.mu > 0.0)) throw std::domain_error("params.mu must be > 0");
}

}  // namespace

Eigen::Vector4d rumor_free_equilibrium(const ModelParams& th) {
  require_positive_mu(th);
  return {th.pi / th.mu, 0.0, 0.0, 0.0};
}

NextGenMatrices next_generation(const ModelParams& th) {
  require_positive_mu(th);
  const double s0 = th.pi / th.mu;
  NextGenMatrices ng;
  ng.F << 0.0, (1.0 - th.p) * th.beta * s0,
          0.0, th.p * th.beta * s0;
  ng.V << th.eps + th.mu, 0.0,
          -th.eps, th.delta + th.mu;
  // V is lower triangular with positive diagonal; invert it directly.
  const double v11 = th.eps + th.mu;
  const double v22 = th.delta + th.mu;
  Eigen::Matrix2d vinv;
  vinv << 1.0 / v11, 0.0,
          th.eps / (v11 * v22), 1.0 / v22;
  ng.K = ng.F * vinv;
  return ng;
}

double r0(const ModelParams& th) {
  require_positive_mu(th);
  return th.beta * th.pi * (th.eps + th.p * th.mu) /
         (th.mu * (th.eps + th.mu) * (th.delta + th.mu));
}

Eigen::Matrix4d jacobian(const ModelParams& th, const Eigen::Vector4d& x) {
  const double s = x[kS], e = x[kE], i = x[kI], z = x[kZ];
  Eigen::Matrix4d j;
  j << -th.mu - th.beta * i - th.b * z, 0.0, -th.beta * s, -th.b * s,
       (1.0 - th.p) * th.beta * i + (1.0 - th.l) * th.b * z,
           -th.rho * i - th.eps - th.mu, (1.0 - th.p) * th.beta * s - th.rho * e,
           (1.0 - th.l) * th.b * s,
       th.p * th.beta * i, th.rho * i + th.eps,
           th.p * th.beta * s + th.rho * e - th.delta - th.lam * z - th.mu,
           -th.lam * i,
       th.l * th.b * z, 0.0, th.delta + th.lam * z, th.l * th.b * s + th.lam * i - th.mu;
  return j;
}

Eigen::Matrix4d jacobian_rfe(const ModelParams& th) {
  require_positive_mu(th);
  const double s0 = th.pi / th.mu;
  Eigen::Matrix4d j;
  j << -th.mu, 0.0, -th.beta * s0, -th.b * s0,
       0.0, -th.eps - th.mu, (1.0 - th.p) * th.beta * s0, (1.0 - th.l) * th.b * s0,
       0.0, th.eps, th.p * th.beta * s0 - th.delta - th.mu, 0.0,
       0.0, 0.0, th.delta, th.l * th.b * s0 - th.mu;
  return j;
}

CubicCoefficients cubic_coefficients(const ModelParams& th) {
  const Eigen::Matrix3d m = jacobian_rfe(th).bottomRightCorner<3, 3>();
  CubicCoefficients c;
  c.a2 = -m.trace();
  c.a1 = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) +
         (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
         (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
  c.a0 = -m.determinant();
  return c;
}

std::array<std::complex<double>, 3> solve_monic_cubic(double a2, double a1, double a0) {
  using C = std::complex<double>;
  std::array<C, 3> roots;

  // Depress: lambda = y - a2/3 gives y^3 + p*y + q.
  const double shift = a2 / 3.0;
  const double p = a1 - a2 * a2 / 3.0;
  const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  const double disc = 0.25 * q * q + p * p * p / 27.0;

  if (disc > 0.0) {
    // One real root, one conjugate pair.
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-0.5 * q + sq);
    const double v = std::cbrt(-0.5 * q - sq);
    const double y1 = u + v;
    const double re = -0.5 * y1;
    const double im = 0.5 * std::sqrt(3.0) * (u - v);
    roots = {C(y1, 0.0), C(re, im), C(re, -im)};
  } else if (p == 0.0) {
    // Triple root (p == 0 with disc <= 0 forces q == 0 up to roundoff).
    const double y = std::cbrt(-q);
    roots = {C(y, 0.0), C(y, 0.0), C(y, 0.0)};
  } else {
    // Three real roots: trigonometric form.
    const double r = std::sqrt(-p / 3.0);
    double cosarg = 3.0 * q / (2.0 * p * r);
    cosarg = std::clamp(cosarg, -1.0, 1.0);
    const double phi = std::acos(cosarg);
    for (int k = 0; k < 3; ++k)
      roots[k] = C(2.0 * r * std::cos((phi - 2.0 * M_PI * k) / 3.0), 0.0);
  }

  for (auto& y : roots) {
    C lam = y - shift;
    // Two Newton polish steps tighten nearly-multiple roots.
    for (int it = 0; it < 2; ++it) {
      const C f = ((lam + a2) * lam + a1) * lam + a0;
      const C df = (3.0 * lam + 2.0 * a2) * lam + a1;
      if (std::abs(df) > 0.0) lam -= f / df;
    }
    // A real cubic with a lone real root keeps conjugate symmetry; squash
    // imaginary dust on roots that started real.
    if (y.imag() == 0.0) lam = C(lam.real(), 0.0);
    y = lam;
  }
  return roots;
}

bool routh_hurwitz(double a2, double a1, double a0) {
  return a2 > 0.0 && a0 > 0.0 && a2 * a1 > a0;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::LocallyStable: return "LocallyStable";
    case Verdict::Unstable: return "Unstable";
    case Verdict::Marginal: return "Marginal";
  }
  return "Marginal";
}

StabilityReport stability_report(const ModelParams& th) {
  require_positive_mu(th);
  StabilityReport rep;
  rep.r0 = r0(th);
  rep.rfe = rumor_free_equilibrium(th);
  rep.jacobian = jacobian_rfe(th);

  const CubicCoefficients c = cubic_coefficients(th);
  rep.a2 = c.a2;
  rep.a1 = c.a1;
  rep.a0 = c.a0;

  // The first column of the RFE Jacobian pins -mu as an exact eigenvalue;
  // the rest come from the deflated cubic.
  const auto cubic = solve_monic_cubic(c.a2, c.a1, c.a0);
  rep.eigenvalues = {std::complex<double>(-th.mu, 0.0), cubic[0], cubic[1], cubic[2]};
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](const auto& a, const auto& b) {
              if (a.real() != b.real()) return a.real() > b.real();
              return a.imag() > b.imag();
            });

  rep.max_real_part = rep.eigenvalues[0].real();
  rep.routh_hurwitz_pass = routh_hurwitz(c.a2, c.a1, c.a0);
  rep.threshold_consistent = ((rep.r0 < 1.0) == rep.routh_hurwitz_pass);

  if (!rep.threshold_consistent || std::abs(rep.max_real_part) <= kMarginalTol)
    rep.verdict = Verdict::Marginal;
  else if (rep.max_real_part < 0.0)
    rep.verdict = Verdict::LocallyStable;
  else
    rep.verdict = Verdict::Unstable;
  return rep;
}

std::vector<double> endemic_cubic_real_roots(const ModelParams& th) {
  if (!(th.lam > 0.0)) throw std::domain_error("params.lambda must be > 0");
  if (!(th.beta > 0.0)) throw std::domain_error("params.beta must be > 0");
  require_positive_mu(th);

  // Printed coefficients of the susceptible cubic (the stray state-variable
  // term inside B is dropped; these roots are reported for comparison only).
  const double A = th.p * th.b * th.beta * (th.l - th.p) / th.lam;
  const double B = -(th.l * th.b * th.mu + th.delta * th.p + th.p * th.mu -
                     th.p * th.b * th.mu + th.p * th.beta * th.mu +
                     th.p * th.lam * th.mu) / th.lam;
  const double C = th.p * th.beta * th.pi +
                   th.mu * th.mu * (th.beta + th.lam + 1.0) / (th.lam * th.beta) +
                   th.delta * th.mu / th.lam;
  const double D = -th.mu * th.pi / th.beta;

  std::vector<double> roots;
  const double scale = std::max({std::abs(A), std::abs(B), std::abs(C), std::abs(D)});
  if (scale == 0.0) return roots;
  if (std::abs(A) > 1e-14 * scale) {
    for (const auto& r : solve_monic_cubic(B / A, C / A, D / A))
      if (std::abs(r.imag()) < 1e-9 * std::max(1.0, std::abs(r.real())))
        roots.push_back(r.real());
  } else if (std::abs(B) > 1e-14 * scale) {
    const double disc = C * C - 4.0 * B * D;
    if (disc >= 0.0) {
      roots.push_back((-C + std::sqrt(disc)) / (2.0 * B));
      roots.push_back((-C - std::sqrt(disc)) / (2.0 * B));
    }
  } else if (std::abs(C) > 1e-14 * scale) {
    roots.push_back(-D / C);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

struct Candidate {
  Eigen::Vector4d x;
  double residual;
};

double residual_norm(const ModelParams& th, const Eigen::Vector4d& x) {
  return rhs_uncontrolled<double>(x, th).cwiseAbs().maxCoeff();
}

// Damped Newton on rhs_uncontrolled = 0. Returns the final iterate; caller
// judges the residual.
Eigen::Vector4d newton_steady_state(const ModelParams& th, Eigen::Vector4d x) {
  double fnorm = residual_norm(th, x);
  for (int it = 0; it < 120 && fnorm > 1e-14; ++it) {
    const Eigen::Vector4d f = rhs_uncontrolled<double>(x, th);
    Eigen::FullPivLU<Eigen::Matrix4d> lu(jacobian(th, x));
    if (!lu.isInvertible()) break;
    const Eigen::Vector4d dx = lu.solve(-f);
    double alpha = 1.0;
    Eigen::Vector4d next = x;
    double next_norm = fnorm;
    bool improved = false;
    for (int bt = 0; bt < 40; ++bt) {
      const Eigen::Vector4d trial = x + alpha * dx;
      const double tn = residual_norm(th, trial);
      if (std::isfinite(tn) && tn < fnorm) {
        next = trial;
        next_norm = tn;
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;
    x = next;
    fnorm = next_norm;
  }
  return x;
}

}  // namespace

std::optional<EndemicSolution> endemic_equilibrium(const ModelParams& th,
                                                   double residual_tol) {
  if (!(th.lam > 0.0)) throw std::domain_error("params.lambda must be > 0");
  if (!(th.beta > 0.0)) throw std::domain_error("params.beta must be > 0");
  require_positive_mu(th);

  const double sbar = th.pi / th.mu;
  std::vector<double> cubic_roots = endemic_cubic_real_roots(th);

  std::vector<Candidate> candidates;
  auto consider = [&](const Eigen::Vector4d& x) {
    Eigen::Vector4d y = x;
    for (int c = 0; c < 4; ++c) {
      if (y[c] < 0.0) {
        if (y[c] > -1e-10 * std::max(1.0, sbar)) y[c] = 0.0;
        else return;  // negative component: not admissible
      }
    }
    if (!(y[kI] > 1e-10 * std::max(1.0, sbar))) return;  // rumor-free, not endemic
    candidates.push_back({y, residual_norm(th, y)});
  };

  // Candidates from the paper's e* = 0 ansatz at each admissible cubic root.
  for (double s : cubic_roots) {
    if (!(s > 0.0 && s <= sbar)) continue;
    const double i = th.pi / (th.beta * s) - th.mu / th.beta -
                     th.p * th.b * s / th.lam - th.delta / (th.lam * th.beta) -
                     th.mu / (th.lam * th.beta);
    const double z = th.p * th.beta * s / th.lam - th.delta / th.lam - th.mu / th.lam;
    consider(Eigen::Vector4d(s, 0.0, i, z));
  }

  // Deterministic spread of Newton starts across the invariant region.
  const double f[8][4] = {{0.9, 0.01, 0.05, 0.05}, {0.5, 0.1, 0.2, 0.1},
                          {0.25, 0.05, 0.4, 0.2},  {0.75, 0.02, 0.1, 0.02},
                          {0.1, 0.1, 0.5, 0.3},    {0.6, 0.05, 0.05, 0.3},
                          {0.4, 0.01, 0.3, 0.05},  {0.95, 0.001, 0.01, 0.001}};
  for (const auto& fr : f) {
    const Eigen::Vector4d start(sbar * fr[0], sbar * fr[1], sbar * fr[2], sbar * fr[3]);
    consider(newton_steady_state(th, start));
  }

  const Candidate* best = nullptr;
  for (const auto& cand : candidates) {
    if (cand.residual > residual_tol) continue;
    if (best == nullptr || cand.residual < best->residual) {
      best = &cand;
    } else if (cand.residual == best->residual) {
      // Deterministic lexicographic tie-break.
      for (int c = 0; c < 4; ++c) {
        if (cand.x[c] != best->x[c]) {
          if (cand.x[c] < best->x[c]) best = &cand;
          break;
        }
      }
    }
  }
  if (best == nullptr) return std::nullopt;

  EndemicSolution sol;
  sol.s_star = best->x[kS];
  sol.e_star = best->x[kE];
  sol.i_star = best->x[kI];
  sol.z_star = best->x[kZ];
  sol.residual = best->residual;
  sol.cubic_roots = std::move(cubic_roots);
  return sol;
}

}  // namespace seiz
