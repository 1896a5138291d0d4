#pragma once

#include <iosfwd>

#include "dicke/basis.hpp"
#include "dicke/coo_matrix.hpp"

namespace dicke {

/// Real symmetric Hamiltonian (or symmetry operator) together with the basis
/// it is expressed in. Immutable once built; safe to share across threads.
struct SparseSymOperator {
  CooSymMatrix<double> matrix;
  BasisSpec basis;

  std::int64_t dim() const { return matrix.dim; }
};

inline constexpr std::int64_t kDefaultDimCap = 2'000'000;

/// Reduced-frame Hamiltonian
///   H = omega_k b^+ b - delta J_x + (2 lambda_k/sqrt(N)) (b^+ + b) J_z
///       + (2 omega_aa/N) (J^2 - J_x^2)
/// in the plain product basis |n> (x) |j,m>. Serves as the oracle basis.
SparseSymOperator build_plain_fock(const ModelParams& p, int n_max,
                                   std::int64_t dim_cap = kDefaultDimCap);

/// The same Hamiltonian in the displaced-Fock basis |n>_{A_m} (x) |j,m>,
/// where A_m = b + g_m absorbs the spin-conditioned field shift. Diagonal
/// blocks are omega_k (n - g_m^2) plus the diagonal spin terms; the m +/- 1
/// and m +/- 2 spin couplings acquire displacement-overlap factors between
/// the shifted photon registers. The stored lower triangle mirrors exactly,
/// so the operator is symmetric by construction at any truncation.
SparseSymOperator build_displaced(const ModelParams& p, int n_max,
                                  std::int64_t dim_cap = kDefaultDimCap);

/// Conserved parity Pi = exp{i pi b^+ b} exp{i pi (J_x - j)}: photon-number
/// parity combined with the spin flip m -> -m. Involutory and real; commutes
/// with the Hamiltonian. Supported in the PlainFock basis only.
SparseSymOperator parity_operator(const BasisSpec& basis);

/// Coordinate text dump: header "dim nnz", then one "row col value" line per
/// stored lower-triangle entry at 17 significant digits.
void dump_matrix(const SparseSymOperator& op, std::ostream& os);

}  // namespace dicke
