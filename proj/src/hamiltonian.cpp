#include "dicke/hamiltonian.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "dicke/displaced_overlap.hpp"

namespace dicke {

double spin_ladder(double j, double m, int direction) {
  if (direction != 1 && direction != -1) {
    throw std::invalid_argument("direction must be +1 or -1");
  }
  if (std::abs(m) > j + 1e-9) {
    throw std::domain_error("|m| must not exceed j");
  }
  const double arg = j * (j + 1.0) - m * (m + direction);
  if (arg <= 0.0) return 0.0;  // at or past the sector edge
  return 0.5 * std::sqrt(arg);
}

double displacement(const ModelParams& p, double m) {
  const EffectiveFrame f = effective_frame(p);
  return 2.0 * f.lambda_k * m / (f.omega_k * std::sqrt(double(p.n_atoms)));
}

BasisSpec make_basis(const ModelParams& p, BasisKind kind, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  BasisSpec b;
  b.kind = kind;
  b.n_max = n_max;
  b.spin = SpinSector{p.n_atoms};
  if (kind == BasisKind::DisplacedFock) {
    b.displacements.resize(b.spin.dim());
    for (int mi = 0; mi < b.spin.dim(); ++mi) {
      b.displacements[mi] = displacement(p, b.spin.m_value(mi));
    }
  }
  return b;
}

namespace {

void check_dim(const BasisSpec& basis, std::int64_t cap) {
  if (basis.dim() > cap) {
    throw std::length_error("basis dimension " + std::to_string(basis.dim()) +
                            " exceeds cap " + std::to_string(cap));
  }
}

}  // namespace

SparseSymOperator build_plain_fock(const ModelParams& p, int n_max,
                                   std::int64_t dim_cap) {
  const BasisSpec basis = make_basis(p, BasisKind::PlainFock, n_max);
  check_dim(basis, dim_cap);

  const EffectiveFrame f = effective_frame(p);
  const SpinSector& spin = basis.spin;
  const double j = spin.j();
  const double jj = j * (j + 1.0);
  const double coupling = 2.0 * f.lambda_k / std::sqrt(double(p.n_atoms));
  const double spin_pref = 2.0 * p.omega_aa / p.n_atoms;

  CooSymMatrix<double> h(basis.dim());
  h.reserve(static_cast<std::size_t>(basis.dim()) * 4);

  for (int mi = 0; mi < spin.dim(); ++mi) {
    const double m = spin.m_value(mi);
    const double jp = spin_ladder(j, m, +1);
    const double jm = spin_ladder(j, m, -1);
    const double diag_spin = spin_pref * (jj - jp * jp - jm * jm);

    for (int n = 0; n <= n_max; ++n) {
      const std::int64_t row = basis.index(mi, n);
      h.add(row, row, f.omega_k * n + diag_spin);
      if (n < n_max) {
        // (2 lambda_k/sqrt(N)) (b^+ + b) J_z
        h.add(basis.index(mi, n + 1), row, coupling * m * std::sqrt(n + 1.0));
      }
    }
    if (mi + 1 < spin.dim()) {
      const double v = -p.delta * jp;  // -delta J_x
      for (int n = 0; n <= n_max; ++n) {
        h.add(basis.index(mi + 1, n), basis.index(mi, n), v);
      }
    }
    if (mi + 2 < spin.dim()) {
      // -(2 omega_aa/N) J_x^2, two steps up the ladder
      const double v = -spin_pref * jp * spin_ladder(j, m + 1.0, +1);
      for (int n = 0; n <= n_max; ++n) {
        h.add(basis.index(mi + 2, n), basis.index(mi, n), v);
      }
    }
  }
  return {std::move(h), basis};
}

SparseSymOperator build_displaced(const ModelParams& p, int n_max,
                                  std::int64_t dim_cap) {
  const BasisSpec basis = make_basis(p, BasisKind::DisplacedFock, n_max);
  check_dim(basis, dim_cap);

  const EffectiveFrame f = effective_frame(p);
  const SpinSector& spin = basis.spin;
  const double j = spin.j();
  const double jj = j * (j + 1.0);
  const double spin_pref = 2.0 * p.omega_aa / p.n_atoms;

  // g_m is linear in m, so only two displacement differences occur:
  // g_{m+1} - g_m = step and g_{m+2} - g_m = 2*step.
  const double step = 2.0 * f.lambda_k / (f.omega_k * std::sqrt(double(p.n_atoms)));
  const Eigen::MatrixXd o1 = displacement_overlaps(step, n_max, n_max);
  const Eigen::MatrixXd o2 = displacement_overlaps(2.0 * step, n_max, n_max);

  CooSymMatrix<double> h(basis.dim());
  const std::size_t block = static_cast<std::size_t>(n_max + 1) * (n_max + 1);
  h.reserve(basis.dim() + 2 * block * spin.dim());

  for (int mi = 0; mi < spin.dim(); ++mi) {
    const double m = spin.m_value(mi);
    const double g = basis.displacements[mi];
    const double jp = spin_ladder(j, m, +1);
    const double jm = spin_ladder(j, m, -1);
    const double diag_spin = spin_pref * (jj - jp * jp - jm * jm);

    // omega_k (A_m^+ A_m - g_m^2): diagonal in the shifted register
    for (int n = 0; n <= n_max; ++n) {
      const std::int64_t row = basis.index(mi, n);
      h.add(row, row, f.omega_k * (n - g * g) + diag_spin);
    }
    if (mi + 1 < spin.dim()) {
      const double coef = -p.delta * jp;
      if (coef != 0.0) {
        for (int l = 0; l <= n_max; ++l) {
          for (int k = 0; k <= n_max; ++k) {
            h.add(basis.index(mi + 1, l), basis.index(mi, k), coef * o1(l, k));
          }
        }
      }
    }
    if (mi + 2 < spin.dim()) {
      const double coef = -spin_pref * jp * spin_ladder(j, m + 1.0, +1);
      if (coef != 0.0) {
        for (int l = 0; l <= n_max; ++l) {
          for (int k = 0; k <= n_max; ++k) {
            h.add(basis.index(mi + 2, l), basis.index(mi, k), coef * o2(l, k));
          }
        }
      }
    }
  }
  return {std::move(h), basis};
}

SparseSymOperator parity_operator(const BasisSpec& basis) {
  if (basis.kind != BasisKind::PlainFock) {
    throw std::invalid_argument(
        "parity_operator supports the PlainFock basis only");
  }
  CooSymMatrix<double> pi(basis.dim());
  const int n_atoms = basis.spin.n_atoms;
  for (int mi = 0; mi <= n_atoms; ++mi) {
    const int mo = n_atoms - mi;  // index of -m
    if (mo < mi) continue;        // the pair was stored from the other side
    for (int n = 0; n <= basis.n_max; ++n) {
      pi.add(basis.index(mo, n), basis.index(mi, n), n % 2 == 0 ? 1.0 : -1.0);
    }
  }
  return {std::move(pi), basis};
}

void dump_matrix(const SparseSymOperator& op, std::ostream& os) {
  os << op.matrix.dim << ' ' << op.matrix.nnz() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < op.matrix.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%d %d %.17g", op.matrix.rows[i],
                  op.matrix.cols[i], op.matrix.values[i]);
    os << buf << '\n';
  }
}

}  // namespace dicke
