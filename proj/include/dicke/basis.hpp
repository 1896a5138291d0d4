#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dicke/model.hpp"

namespace dicke {

/// Maximal-spin sector j = N/2 of N two-level atoms; the collective states
/// |j,m> with m = -j..j span it (dimension N+1).
struct SpinSector {
  int n_atoms = 0;

  double j() const { return 0.5 * n_atoms; }
  int dim() const { return n_atoms + 1; }
  double m_value(int i) const { return -j() + i; }
};

/// Matrix element <j, m+dir| J_x |j, m> = (1/2) sqrt(j(j+1) - m(m+dir)) for
/// dir = +1/-1; zero past the sector edge. Throws if |m| > j or dir invalid.
double spin_ladder(double j, double m, int direction);

enum class BasisKind { PlainFock, DisplacedFock };

/// Field displacement attached to the spin projection m,
///   g_m = 2 lambda_k m / (omega_k sqrt(N)),
/// odd in m. Precondition: |m| <= N/2.
double displacement(const ModelParams& p, double m);

/// Product basis of a photon register (n = 0..n_max) with the spin sector,
/// ordered m-major: index = m_idx*(n_max+1) + n. For DisplacedFock the
/// photon register of row m holds number states of the shifted mode
/// b + g_m, with g_m recorded in `displacements`.
struct BasisSpec {
  BasisKind kind = BasisKind::PlainFock;
  int n_max = 0;
  SpinSector spin;
  std::vector<double> displacements;  // one per m index; empty for PlainFock

  std::int64_t dim() const {
    return static_cast<std::int64_t>(n_max + 1) * spin.dim();
  }
  std::int64_t index(int m_idx, int n) const {
    return static_cast<std::int64_t>(m_idx) * (n_max + 1) + n;
  }
};

BasisSpec make_basis(const ModelParams& p, BasisKind kind, int n_max);

}  // namespace dicke
