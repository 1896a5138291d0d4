#pragma once

#include <Eigen/Dense>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicke/hamiltonian.hpp"

namespace dicke {

/// One (n_max, ground energy) step of a truncation ladder.
struct TruncationPoint {
  int n_max;
  double e0;
};

/// Raised when an iterative solve or a truncation ladder fails to converge;
/// carries the best residual seen and, for ladders, the energy history.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_residual,
              std::vector<TruncationPoint> history = {})
      : std::runtime_error(what),
        best_residual_(best_residual),
        history_(std::move(history)) {}

  double best_residual() const { return best_residual_; }
  const std::vector<TruncationPoint>& history() const { return history_; }

 private:
  double best_residual_;
  std::vector<TruncationPoint> history_;
};

struct Eigenpair {
  double value;
  Eigen::VectorXd vector;
  double residual;  // ||H v - value v||
};

struct EigsOptions {
  int count = 1;
  double tol = 1e-10;  // accept when ||Hv - ev|| <= tol * max(1, |e|)
  int max_iter = 600;  // Lanczos iterations per eigenpair
  std::int64_t dense_cutoff = 2000;
  const Eigen::VectorXd* guess = nullptr;  // starting vector (Krylov path)
};

/// The `count` smallest eigenpairs in ascending order. Dense solve up to
/// dense_cutoff; otherwise Lanczos with full reorthogonalization, converged
/// pairs deflated one at a time. Throws SolverError on non-convergence.
std::vector<Eigenpair> lowest_eigenpairs(const SparseSymOperator& op,
                                         const EigsOptions& opts);

inline std::vector<Eigenpair> lowest_eigenpairs(const SparseSymOperator& op,
                                                int count, double tol) {
  EigsOptions o;
  o.count = count;
  o.tol = tol;
  return lowest_eigenpairs(op, o);
}

/// Outcome of a photon-truncation convergence run. `n_max_used` is the
/// smallest truncation whose energy already sits within e_tol of the final
/// one (the ladder itself continues to history.back().n_max, where the
/// reported eigenpairs live).
struct ConvergedResult {
  double e0 = 0.0;
  double e1 = std::numeric_limits<double>::quiet_NaN();
  int n_max_used = 0;
  double residual = 0.0;
  std::vector<TruncationPoint> history;
  Eigen::VectorXd ground_vector;
  BasisSpec basis;  // basis of ground_vector (n_max = history.back().n_max)
};

struct ConvergeOptions {
  double e_tol = 1e-8;
  int n_start = -1;  // automatic: 8 (displaced), 8 + ceil(4 g_j^2) (plain)
  int n_step = 4;
  int n_cap = 4096;
  int count = 2;      // eigenpairs computed at the final truncation
  double tol = 1e-10;
  std::int64_t dense_cutoff = 600;  // ladder solves go Krylov above this
  const Eigen::VectorXd* guess = nullptr;   // seed for the first ladder rung
  const BasisSpec* guess_basis = nullptr;   // basis the seed lives in
};

/// Grows n_max by n_step until the ground energy moved by less than e_tol
/// twice in a row; throws SolverError (with history) past n_cap.
ConvergedResult converge_truncation(const ModelParams& p, BasisKind kind,
                                    const ConvergeOptions& opts = {});

inline ConvergedResult converge_truncation(const ModelParams& p,
                                           BasisKind kind, double e_tol,
                                           int n_start, int n_step) {
  ConvergeOptions o;
  o.e_tol = e_tol;
  o.n_start = n_start;
  o.n_step = n_step;
  return converge_truncation(p, kind, o);
}

/// Re-expresses a vector over basis `from` in the larger-truncation basis
/// `to` (same kind and spin sector), zero-padding each m block.
Eigen::VectorXd pad_truncation(const Eigen::VectorXd& v, const BasisSpec& from,
                               const BasisSpec& to);

}  // namespace dicke
