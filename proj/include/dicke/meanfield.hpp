#pragma once

#include "dicke/model.hpp"

namespace dicke {

enum class Phase { Normal, Superradiant };

/// Stationary point of the thermodynamic-limit (Holstein-Primakoff) energy
/// surface. `alpha` is the scaled field displacement, `beta` the scaled spin
/// deformation (reported with beta >= 0; the energy is invariant under the
/// joint sign flip), x = beta^2.
struct MeanFieldSolution {
  double alpha;
  double beta;
  double x;
  double energy_per_atom;
  Phase phase;
};

/// Coupling window in which the superradiant transition is compatible with
/// the TRK sum rule: lambda_c < lambda < lambda_star. `nonempty` is true iff
/// lambda_c < lambda_star, which requires an attractive interatomic coupling
/// -delta/2 < omega_aa < 0 together with kappa > kappa_c. lambda_c and
/// kappa_c are NaN where undefined (delta + 2*omega_aa <= 0, resp.
/// omega_aa outside (-delta/2, 0)).
struct TransitionWindow {
  double lambda_c;
  double lambda_star;
  double kappa_c;
  bool nonempty;
};

/// Variational ground-state energy per atom,
///   E0/N = omega_k a^2 + delta (b^2 - 1/2) - 4 lambda_k a b sqrt(1-b^2)
///          - 2 omega_aa (b^2 - 1/2)^2 + omega_aa/2
/// with a = alpha, b = beta. Throws std::domain_error if |beta| > 1.
double energy_per_atom(const ModelParams& p, double alpha, double beta);

/// Coefficients of the reduced energy e(x) = e0 + a1 x + a2 x^2 in x = beta^2
/// obtained by eliminating alpha at its stationary value:
///   e0 = -delta/2
///   a1 = delta + 2 omega_aa - 4 lambda_k^2/omega_k
///   a2 = 4 lambda_k^2/omega_k - 2 omega_aa
struct ReducedCoefficients {
  double e0;
  double a1;
  double a2;
};

ReducedCoefficients reduced_coefficients(const ModelParams& p);

/// Global minimizer of the variational energy over alpha in R, |beta| <= 1,
/// solved in closed form on the reduced quadratic. The gauge beta >= 0 is
/// fixed; phase is Normal iff x = 0 (which includes lambda = lambda_c
/// exactly).
MeanFieldSolution minimize(const ModelParams& p);

/// Critical coupling lambda_c = sqrt((delta + 2 omega_aa)(omega + 4 kappa))/2.
/// Throws std::domain_error ("window collapsed") if delta + 2*omega_aa <= 0,
/// where no normal-phase boundary of this form exists.
double critical_coupling(const ModelParams& p);

/// Threshold oscillator strength kappa_c = (omega/4)(delta/(2|omega_aa|) - 1)
/// above which the window opens. Defined only for -delta/2 < omega_aa < 0;
/// throws std::domain_error otherwise.
double kappa_threshold(const ModelParams& p);

/// Both bounds of the sum-rule-constrained transition window plus the
/// nonempty flag. Never throws; an empty window is a valid result.
TransitionWindow transition_window(const ModelParams& p);

}  // namespace dicke
