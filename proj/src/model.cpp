#include "dicke/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dicke {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

}  // namespace

ModelParams::ModelParams(double omega_, double delta_, double lambda_,
                         double omega_aa_, double kappa_, int n_atoms_)
    : omega(omega_),
      delta(delta_),
      lambda(lambda_),
      omega_aa(omega_aa_),
      kappa(kappa_),
      n_atoms(n_atoms_) {
  require_finite(omega, "omega");
  require_finite(delta, "delta");
  require_finite(lambda, "lambda");
  require_finite(omega_aa, "omega_aa");
  require_finite(kappa, "kappa");
  if (omega <= 0.0) throw std::invalid_argument("omega must be > 0");
  if (delta <= 0.0) throw std::invalid_argument("delta must be > 0");
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
  if (n_atoms < 1) throw std::invalid_argument("n_atoms must be >= 1");
}

EffectiveFrame effective_frame(const ModelParams& p) {
  EffectiveFrame f;
  f.gamma_k = std::sqrt(1.0 + 4.0 * p.kappa / p.omega);
  f.omega_k = p.omega * f.gamma_k;
  f.lambda_k = p.lambda / std::sqrt(f.gamma_k);
  const double root = std::sqrt(f.gamma_k);
  f.mu = (f.gamma_k + 1.0) / (2.0 * root);
  f.nu = (f.gamma_k - 1.0) / (2.0 * root);
  f.energy_shift = 0.5 * (f.omega_k - p.omega) - p.omega_aa;
  return f;
}

MicroscopicCouplings physical_couplings(double delta, double dipole,
                                        double density, double omega) {
  require_finite(delta, "delta");
  require_finite(dipole, "dipole");
  require_finite(density, "density");
  require_finite(omega, "omega");
  if (delta <= 0.0) throw std::domain_error("delta must be > 0");
  if (omega <= 0.0) throw std::domain_error("omega must be > 0");
  if (density <= 0.0) throw std::domain_error("density must be > 0");
  if (dipole < 0.0) throw std::domain_error("dipole must be >= 0");

  const double two_pi_over_omega = 2.0 * std::numbers::pi / omega;
  MicroscopicCouplings c;
  c.lambda = delta * dipole * std::sqrt(two_pi_over_omega) * std::sqrt(density);
  c.kappa = 0.5 * two_pi_over_omega * density;
  return c;
}

bool trk_allowed(const ModelParams& p) {
  return p.lambda * p.lambda < p.delta * p.kappa;
}

double trk_bound(const ModelParams& p) { return std::sqrt(p.delta * p.kappa); }

}  // namespace dicke
