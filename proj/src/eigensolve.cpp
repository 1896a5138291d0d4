#include "dicke/eigensolve.hpp"

#include <algorithm>
#include <cmath>

namespace dicke {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double true_residual(const CooSymMatrix<double>& a, const VectorXd& x,
                     double theta) {
  VectorXd ax = a.apply(x);
  ax.noalias() -= theta * x;
  return ax.norm();
}

// Removes the components of w along each column of basis.leftCols(k) and
// along the deflation set. One pass of classical Gram-Schmidt.
void project_out(VectorXd& w, const MatrixXd& v, int k,
                 const std::vector<VectorXd>& deflate) {
  if (k > 0) {
    const auto vk = v.leftCols(k);
    w.noalias() -= vk * (vk.transpose() * w);
  }
  for (const VectorXd& d : deflate) {
    w.noalias() -= (d.dot(w)) * d;
  }
}

struct LanczosOutcome {
  double value = 0.0;
  VectorXd vector;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Lowest eigenpair of the operator restricted to the orthogonal complement
// of `deflate`, by Lanczos with full reorthogonalization. Deterministic:
// fixed starting vector, fixed summation order, convergence decisions based
// only on computed quantities.
LanczosOutcome lanczos_lowest(const CooSymMatrix<double>& a,
                              const std::vector<VectorXd>& deflate,
                              const VectorXd* guess, double tol,
                              int max_iter) {
  const std::int64_t dim = a.dim;
  const int space_left = static_cast<int>(dim) - static_cast<int>(deflate.size());
  const int iter_cap = std::max(1, std::min<int>(max_iter, space_left));

  MatrixXd v(dim, iter_cap);
  std::vector<double> alpha, beta;
  alpha.reserve(iter_cap);
  beta.reserve(iter_cap);

  // starting vector
  VectorXd w;
  if (guess != nullptr && guess->size() == dim && guess->norm() > 0.0) {
    w = *guess;
  } else {
    w = VectorXd::Ones(dim);
  }
  project_out(w, v, 0, deflate);
  int fallback = 0;
  while (w.norm() < 1e-8 && fallback < dim) {
    w = VectorXd::Unit(dim, fallback++);
    project_out(w, v, 0, deflate);
  }
  v.col(0) = w / w.norm();

  LanczosOutcome best;
  // Ritz test on the leading k x k tridiagonal section; b_next is the
  // not-yet-appended coupling to step k, giving the cheap residual estimate
  // |b_next * s_k| that gates the exact check.
  const auto ritz_check = [&](int k, double b_next) -> bool {
    VectorXd ad(k), bd(std::max(0, k - 1));
    for (int i = 0; i < k; ++i) ad[i] = alpha[i];
    for (int i = 0; i + 1 < k; ++i) bd[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<MatrixXd> es;
    es.computeFromTridiagonal(ad, bd, Eigen::ComputeEigenvectors);
    const double theta = es.eigenvalues()(0);
    const VectorXd s = es.eigenvectors().col(0);
    const double thresh = tol * std::max(1.0, std::abs(theta));
    if (std::abs(b_next * s(k - 1)) > 0.25 * thresh) return false;
    VectorXd x = v.leftCols(k) * s;
    x /= x.norm();
    const double res = true_residual(a, x, theta);
    if (res < best.residual) {
      best.value = theta;
      best.vector = x;
      best.residual = res;
    }
    if (res <= thresh) {
      best.converged = true;
      return true;
    }
    return false;
  };

  for (int it = 0; it < iter_cap; ++it) {
    w = a.apply(v.col(it));
    const double a_it = v.col(it).dot(w);
    alpha.push_back(a_it);

    // one full pass; a second when the norm dropped enough to hint at
    // cancellation (twice-is-enough criterion)
    const double pre = w.norm();
    project_out(w, v, it + 1, deflate);
    if (w.norm() < 0.5 * pre) project_out(w, v, it + 1, deflate);

    const double b_it = w.norm();
    const double scale = std::max({std::abs(a_it), b_it, 1e-300});
    const bool breakdown = b_it <= 1e-13 * std::max(1.0, scale);
    const bool last = it + 1 == iter_cap;

    if (breakdown || last || (it + 1) % 5 == 0) {
      if (ritz_check(it + 1, breakdown ? 0.0 : b_it)) return best;
    }
    if (last) break;

    if (breakdown) {
      // invariant subspace: continue from a fresh deterministic direction
      int f = 0;
      VectorXd r;
      do {
        r = VectorXd::Unit(dim, f++);
        project_out(r, v, it + 1, deflate);
      } while (r.norm() < 1e-8 && f < dim);
      if (r.norm() < 1e-8) break;
      beta.push_back(0.0);
      v.col(it + 1) = r / r.norm();
    } else {
      beta.push_back(b_it);
      v.col(it + 1) = w / b_it;
    }
  }
  return best;
}

int default_n_start(const ModelParams& p, BasisKind kind) {
  if (kind == BasisKind::DisplacedFock) return 8;
  // a displaced vacuum of shift g needs ~g^2 photons; cover the largest one
  const double gj = std::abs(displacement(p, 0.5 * p.n_atoms));
  return 8 + static_cast<int>(std::ceil(4.0 * gj * gj));
}

SparseSymOperator build(const ModelParams& p, BasisKind kind, int n_max) {
  return kind == BasisKind::PlainFock ? build_plain_fock(p, n_max)
                                      : build_displaced(p, n_max);
}

}  // namespace

std::vector<Eigenpair> lowest_eigenpairs(const SparseSymOperator& op,
                                         const EigsOptions& opts) {
  if (opts.count < 1) throw std::invalid_argument("count must be >= 1");
  if (opts.count > op.dim()) {
    throw std::invalid_argument("count exceeds operator dimension");
  }
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be > 0");

  std::vector<Eigenpair> out;
  out.reserve(opts.count);

  if (op.dim() <= opts.dense_cutoff) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.matrix.to_dense());
    if (es.info() != Eigen::Success) {
      throw SolverError("dense eigensolver failed",
                        std::numeric_limits<double>::infinity());
    }
    for (int i = 0; i < opts.count; ++i) {
      Eigenpair pair;
      pair.value = es.eigenvalues()(i);
      pair.vector = es.eigenvectors().col(i);
      pair.residual = true_residual(op.matrix, pair.vector, pair.value);
      out.push_back(std::move(pair));
    }
    return out;
  }

  std::vector<Eigen::VectorXd> deflate;
  for (int i = 0; i < opts.count; ++i) {
    const Eigen::VectorXd* guess = (i == 0) ? opts.guess : nullptr;
    LanczosOutcome r =
        lanczos_lowest(op.matrix, deflate, guess, opts.tol, opts.max_iter);
    if (!r.converged) {
      throw SolverError("Lanczos failed to converge eigenpair " +
                            std::to_string(i) + " within " +
                            std::to_string(opts.max_iter) +
                            " iterations (best residual " +
                            std::to_string(r.residual) + ")",
                        r.residual);
    }
    deflate.push_back(r.vector);
    out.push_back({r.value, std::move(r.vector), r.residual});
  }
  std::sort(out.begin(), out.end(),
            [](const Eigenpair& a, const Eigenpair& b) {
              return a.value < b.value;
            });
  return out;
}

Eigen::VectorXd pad_truncation(const Eigen::VectorXd& v, const BasisSpec& from,
                               const BasisSpec& to) {
  if (from.spin.n_atoms != to.spin.n_atoms || from.kind != to.kind) {
    throw std::invalid_argument("incompatible bases");
  }
  if (to.n_max < from.n_max) {
    throw std::invalid_argument("target truncation is smaller");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(to.dim());
  for (int mi = 0; mi < from.spin.dim(); ++mi) {
    out.segment(to.index(mi, 0), from.n_max + 1) =
        v.segment(from.index(mi, 0), from.n_max + 1);
  }
  return out;
}

ConvergedResult converge_truncation(const ModelParams& p, BasisKind kind,
                                    const ConvergeOptions& opts) {
  if (!(opts.e_tol > 0.0)) throw std::invalid_argument("e_tol must be > 0");
  if (opts.n_step < 1) throw std::invalid_argument("n_step must be >= 1");

  const int n_start =
      std::min(opts.n_start >= 0 ? opts.n_start : default_n_start(p, kind),
               opts.n_cap);

  std::vector<TruncationPoint> history;
  Eigen::VectorXd prev_vector;
  BasisSpec prev_basis;
  SparseSymOperator op;
  int small_steps = 0;

  for (int n_max = n_start;; n_max += opts.n_step) {
    if (n_max > opts.n_cap) {
      throw SolverError("truncation ladder exceeded n_max cap " +
                            std::to_string(opts.n_cap) +
                            " before reaching e_tol",
                        std::numeric_limits<double>::infinity(), history);
    }
    op = build(p, kind, n_max);

    EigsOptions eo;
    eo.count = 1;
    eo.tol = opts.tol;
    eo.dense_cutoff = opts.dense_cutoff;
    Eigen::VectorXd guess;
    if (prev_vector.size() > 0) {
      guess = pad_truncation(prev_vector, prev_basis, op.basis);
      eo.guess = &guess;
    } else if (opts.guess != nullptr && opts.guess_basis != nullptr &&
               opts.guess_basis->n_max <= n_max &&
               opts.guess_basis->kind == kind) {
      guess = pad_truncation(*opts.guess, *opts.guess_basis, op.basis);
      eo.guess = &guess;
    }

    std::vector<Eigenpair> pairs;
    try {
      pairs = lowest_eigenpairs(op, eo);
    } catch (SolverError& e) {
      throw SolverError(e.what(), e.best_residual(), history);
    }

    const double e0 = pairs[0].value;
    if (!history.empty() &&
        std::abs(e0 - history.back().e0) < opts.e_tol) {
      ++small_steps;
    } else if (!history.empty()) {
      small_steps = 0;
    }
    history.push_back({n_max, e0});
    prev_vector = std::move(pairs[0].vector);
    prev_basis = op.basis;

    if (small_steps >= 2) break;
  }

  ConvergedResult result;
  result.history = history;
  result.basis = prev_basis;

  if (opts.count <= 1) {
    result.e0 = history.back().e0;
    result.ground_vector = std::move(prev_vector);
    result.residual = true_residual(op.matrix, result.ground_vector, result.e0);
  } else {
    EigsOptions eo;
    eo.count = opts.count;
    eo.tol = opts.tol;
    eo.dense_cutoff = opts.dense_cutoff;
    eo.guess = &prev_vector;
    std::vector<Eigenpair> pairs;
    try {
      pairs = lowest_eigenpairs(op, eo);
    } catch (SolverError& e) {
      throw SolverError(e.what(), e.best_residual(), history);
    }
    result.e0 = pairs[0].value;
    result.e1 = pairs[1].value;
    result.residual = pairs[0].residual;
    result.ground_vector = std::move(pairs[0].vector);
    history.back().e0 = result.e0;
    result.history = history;
  }

  result.n_max_used = result.history.back().n_max;
  for (const TruncationPoint& t : result.history) {
    if (std::abs(t.e0 - result.e0) <= opts.e_tol) {
      result.n_max_used = t.n_max;
      break;
    }
  }
  return result;
}

}  // namespace dicke
