#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace dicke {

/// Matrix elements O_{l,k}(g) = <l| exp{g (b^+ - b)} |k> between Fock states
/// displaced by a real g, for l = 0..lmax, k = 0..kmax.
///
/// Each diagonal a = l - k >= 0 is marched by the two-index recursion
///   O_{a,0}  = exp(-g^2/2 + a ln|g| - lgamma(a+1)/2) * sgn(g)^a
///   O_{l,k}  = sqrt(k/l)/k * [ (2k-1+a-x) O_{l-1,k-1}
///                              - (k-1+a) sqrt((k-1)/(l-1)) O_{l-2,k-2} ]
/// with x = g^2, the associated-Laguerre three-term recurrence expressed
/// directly in the (unitary-bounded) matrix elements; the lower diagonals
/// follow from O_{l,k}(g) = (-1)^{l-k} O_{k,l}(g). Every intermediate is an
/// element of a unitary matrix, so nothing overflows and errors cannot
/// compound across diagonals; log-space starting values avoid factorial
/// ratios.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>
displacement_overlap_matrix(Scalar g, int lmax, int kmax) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix o = Matrix::Zero(lmax + 1, kmax + 1);

  if (g == Scalar(0)) {
    for (int i = 0; i <= std::min(lmax, kmax); ++i) o(i, i) = Scalar(1);
    return o;
  }

  const Scalar x = g * g;
  const Scalar log_abs_g = std::log(std::abs(g));
  const int nmax = std::max(lmax, kmax);

  for (int a = 0; a <= nmax; ++a) {
    // head of the diagonal: <a| D(g) |0>
    const Scalar log_head =
        Scalar(-0.5) * x + Scalar(a) * log_abs_g - Scalar(0.5) * std::lgamma(Scalar(a + 1));
    const Scalar sign = (g < Scalar(0) && a % 2 == 1) ? Scalar(-1) : Scalar(1);
    Scalar prev2 = Scalar(0);
    Scalar prev = sign * std::exp(log_head);

    for (int k = 0; k + a <= nmax; ++k) {
      const int l = k + a;
      Scalar cur;
      if (k == 0) {
        cur = prev;
      } else {
        cur = (Scalar(2 * k - 1 + a) - x) * prev;
        if (k >= 2) {
          cur -= Scalar(k - 1 + a) *
                 std::sqrt(Scalar(k - 1) / Scalar(l - 1)) * prev2;
        }
        cur *= std::sqrt(Scalar(k) / Scalar(l)) / Scalar(k);
        prev2 = prev;
        prev = cur;
      }
      const Scalar mirror_sign = (a % 2 == 0) ? Scalar(1) : Scalar(-1);
      if (l <= lmax && k <= kmax) o(l, k) = cur;
      if (k <= lmax && l <= kmax) o(k, l) = mirror_sign * cur;
    }
  }
  return o;
}

/// Double-precision overlap table (the production entry point).
inline Eigen::MatrixXd displacement_overlaps(double g, int lmax, int kmax) {
  return displacement_overlap_matrix<double>(g, lmax, kmax);
}

/// Single element <l| exp{g (b^+ - b)} |k>; reduces to delta_{l,k} at g = 0.
inline double displaced_overlap(double g, int l, int k) {
  if (l < 0 || k < 0) {
    throw std::invalid_argument("Fock indices must be non-negative");
  }
  if (g == 0.0) return l == k ? 1.0 : 0.0;
  return displacement_overlaps(g, l, k)(l, k);
}

}  // namespace dicke
