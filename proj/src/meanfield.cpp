#include "dicke/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dicke {

double energy_per_atom(const ModelParams& p, double alpha, double beta) {
  if (std::abs(beta) > 1.0) {
    throw std::domain_error("beta must satisfy |beta| <= 1");
  }
  const EffectiveFrame f = effective_frame(p);
  const double b2 = beta * beta;
  const double d = b2 - 0.5;
  return f.omega_k * alpha * alpha + p.delta * d -
         4.0 * f.lambda_k * alpha * beta * std::sqrt(1.0 - b2) -
         2.0 * p.omega_aa * d * d + 0.5 * p.omega_aa;
}

ReducedCoefficients reduced_coefficients(const ModelParams& p) {
  // lambda_k^2 / omega_k == lambda^2 / (omega + 4 kappa)
  const double q = 4.0 * p.lambda * p.lambda / (p.omega + 4.0 * p.kappa);
  ReducedCoefficients c;
  c.e0 = -0.5 * p.delta;
  c.a1 = p.delta + 2.0 * p.omega_aa - q;
  c.a2 = q - 2.0 * p.omega_aa;
  return c;
}

MeanFieldSolution minimize(const ModelParams& p) {
  const EffectiveFrame f = effective_frame(p);
  const ReducedCoefficients c = reduced_coefficients(p);

  double x;
  if (c.a2 > 0.0) {
    x = std::clamp(-c.a1 / (2.0 * c.a2), 0.0, 1.0);
  } else {
    // concave (or linear) in x: the minimum sits at an endpoint
    x = (c.a1 + c.a2 < 0.0) ? 1.0 : 0.0;
  }
  double energy = c.e0 + c.a1 * x + c.a2 * x * x;

  MeanFieldSolution s;
  // Label Superradiant only on a strict energy gain over the undeformed
  // state; at the tangency lambda == lambda_c the vertex collapses to x = 0.
  if (x > 0.0 && energy < c.e0) {
    s.phase = Phase::Superradiant;
    s.x = x;
    s.beta = std::sqrt(x);
    s.alpha = 2.0 * f.lambda_k * s.beta * std::sqrt(1.0 - x) / f.omega_k;
    s.energy_per_atom = energy;
  } else {
    s.phase = Phase::Normal;
    s.x = 0.0;
    s.beta = 0.0;
    s.alpha = 0.0;
    s.energy_per_atom = c.e0;
  }
  return s;
}

double critical_coupling(const ModelParams& p) {
  const double s = p.delta + 2.0 * p.omega_aa;
  if (s <= 0.0) {
    throw std::domain_error(
        "window collapsed: delta + 2*omega_aa must be > 0");
  }
  return 0.5 * std::sqrt(s * (p.omega + 4.0 * p.kappa));
}

double kappa_threshold(const ModelParams& p) {
  if (!(p.omega_aa < 0.0) || !(p.omega_aa > -0.5 * p.delta)) {
    throw std::domain_error(
        "kappa threshold requires -delta/2 < omega_aa < 0");
  }
  return 0.25 * p.omega * (0.5 * p.delta / -p.omega_aa - 1.0);
}

TransitionWindow transition_window(const ModelParams& p) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const double s = p.delta + 2.0 * p.omega_aa;

  TransitionWindow w;
  w.lambda_star = trk_bound(p);
  w.lambda_c = (s > 0.0) ? 0.5 * std::sqrt(s * (p.omega + 4.0 * p.kappa)) : nan;
  w.kappa_c = (p.omega_aa < 0.0 && s > 0.0) ? kappa_threshold(p) : nan;
  // lambda_c < lambda_star, compared on the squares
  w.nonempty = s > 0.0 && s * (p.omega + 4.0 * p.kappa) < 4.0 * p.delta * p.kappa;
  return w;
}

}  // namespace dicke
