#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dicke {

/// Real symmetric sparse matrix holding the explicit lower triangle
/// (row >= col) in coordinate form. apply() accumulates in storage order, so
/// products are bitwise reproducible run to run.
template <typename Scalar = double>
struct CooSymMatrix {
  using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  std::int64_t dim = 0;
  std::vector<std::int32_t> rows;
  std::vector<std::int32_t> cols;
  std::vector<Scalar> values;

  CooSymMatrix() = default;
  explicit CooSymMatrix(std::int64_t n) : dim(n) {}

  std::int64_t nnz() const { return static_cast<std::int64_t>(values.size()); }

  void reserve(std::size_t n) {
    rows.reserve(n);
    cols.reserve(n);
    values.reserve(n);
  }

  /// Records one entry of the symmetric matrix; (r, c) and (c, r) are the
  /// same slot. Exact zeros are skipped, non-finite values rejected.
  void add(std::int64_t r, std::int64_t c, Scalar v) {
    if (v == Scalar(0)) return;
    if (!std::isfinite(v)) {
      throw std::invalid_argument("matrix entry must be finite");
    }
    if (r < c) std::swap(r, c);
    rows.push_back(static_cast<std::int32_t>(r));
    cols.push_back(static_cast<std::int32_t>(c));
    values.push_back(v);
  }

  /// y = A x using the symmetric completion of the stored triangle.
  void apply(const Scalar* x, Scalar* y) const {
    for (std::int64_t i = 0; i < dim; ++i) y[i] = Scalar(0);
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::int32_t r = rows[i];
      const std::int32_t c = cols[i];
      const Scalar v = values[i];
      y[r] += v * x[c];
      if (r != c) y[c] += v * x[r];
    }
  }

  DenseVector apply(const Eigen::Ref<const DenseVector>& x) const {
    DenseVector y(dim);
    apply(x.data(), y.data());
    return y;
  }

  DenseMatrix to_dense() const {
    DenseMatrix m = DenseMatrix::Zero(dim, dim);
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) {
      m(rows[i], cols[i]) += values[i];
      if (rows[i] != cols[i]) m(cols[i], rows[i]) += values[i];
    }
    return m;
  }
};

template <typename Scalar>
typename CooSymMatrix<Scalar>::DenseVector operator*(
    const CooSymMatrix<Scalar>& a,
    const typename CooSymMatrix<Scalar>::DenseVector& x) {
  return a.apply(x);
}

}  // namespace dicke
