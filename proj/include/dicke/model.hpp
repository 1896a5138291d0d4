#pragma once

#include <stdexcept>

namespace dicke {

/// Couplings of the extended Dicke model: a single cavity mode at frequency
/// `omega`, N two-level atoms with transition frequency `delta`, atom-cavity
/// coupling `lambda`, direct interatomic coupling `omega_aa` (negative =
/// attractive), and the A^2 oscillator strength `kappa`.
///
/// All energies share one (arbitrary) unit; construction validates
///   omega > 0, delta > 0, lambda >= 0, kappa >= 0, n_atoms >= 1
/// and rejects non-finite values. Instances are immutable in spirit: nothing
/// in this library mutates a ModelParams after construction, so they can be
/// shared freely across threads.
struct ModelParams {
  double omega;
  double delta;
  double lambda;
  double omega_aa;
  double kappa;
  int n_atoms;

  ModelParams(double omega_, double delta_, double lambda_, double omega_aa_,
              double kappa_, int n_atoms_);

  ModelParams with_lambda(double new_lambda) const {
    return {omega, delta, new_lambda, omega_aa, kappa, n_atoms};
  }
  ModelParams with_kappa(double new_kappa) const {
    return {omega, delta, lambda, omega_aa, new_kappa, n_atoms};
  }
  ModelParams with_n_atoms(int new_n) const {
    return {omega, delta, lambda, omega_aa, kappa, new_n};
  }
};

/// Bogoliubov frame that absorbs the A^2 term into a rescaled cavity mode
/// b = mu*a + nu*a^+:
///   gamma_k  = sqrt(1 + 4*kappa/omega)
///   omega_k  = omega * gamma_k          (effective cavity frequency)
///   lambda_k = lambda / sqrt(gamma_k)   (effective coupling)
///   mu = (gamma_k+1)/(2 sqrt(gamma_k)),  nu = (gamma_k-1)/(2 sqrt(gamma_k))
/// `energy_shift` = (omega_k - omega)/2 - omega_aa is the additive constant
/// separating the reduced-frame Hamiltonian from the original one; spectra in
/// the original frame are reduced-frame spectra plus this constant.
struct EffectiveFrame {
  double gamma_k;
  double omega_k;
  double lambda_k;
  double mu;
  double nu;
  double energy_shift;
};

EffectiveFrame effective_frame(const ModelParams& p);

/// (lambda, kappa) from microscopic atomic data in natural units
/// hbar = e = m = 1:
///   lambda = delta * dipole * sqrt(2*pi/omega) * sqrt(density)
///   kappa  = (1/2) * (2*pi/omega) * density
/// `dipole` is the transition dipole projection, `density` the atom number
/// density. Convenience only; solver inputs are always explicit ModelParams.
struct MicroscopicCouplings {
  double lambda;
  double kappa;
};

MicroscopicCouplings physical_couplings(double delta, double dipole,
                                        double density, double omega);

/// Oscillator-strength (TRK) sum-rule gate: true iff lambda < sqrt(delta*kappa)
/// strictly. Evaluated as lambda^2 < delta*kappa to avoid a sqrt rounding.
bool trk_allowed(const ModelParams& p);

/// The sum-rule coupling bound sqrt(delta*kappa).
double trk_bound(const ModelParams& p);

}  // namespace dicke
