#pragma once

#include <span>

#include "dicke/eigensolve.hpp"

namespace dicke {

/// Derived quantities on a converged ground state. Energies come in both
/// frames: e0_per_atom is the reduced-frame value, e0_shifted_per_atom adds
/// energy_shift/N to recover the original-frame normalization. parity is NaN
/// for displaced-basis states (the parity operator lives in the plain basis),
/// gap is NaN when no first excited energy was computed.
struct GroundStateReport {
  double e0_per_atom;
  double e0_shifted_per_atom;
  double photon_density;  // <b^+ b>/N
  double jz_order;        // <J_z>/j, reduced (rotated) frame
  double gap;             // e1 - e0
  double parity;          // <Pi>
};

GroundStateReport report(const ModelParams& p, const ConvergedResult& r,
                         const Eigen::VectorXd& v);

inline GroundStateReport report(const ModelParams& p,
                                const ConvergedResult& r) {
  return report(p, r, r.ground_vector);
}

/// Solver settings for derivative stencils. Truncation follows the tighter
/// of e_tol and the generic 1e-8 default because the second difference
/// amplifies energy noise by h^-2.
struct DerivativeOptions {
  double e_tol = 1e-10;
  double tol = 1e-10;
  int n_step = 4;
  int n_cap = 4096;
  std::int64_t dense_cutoff = 600;
  const Eigen::VectorXd* seed = nullptr;  // warm start for the first solve
  const BasisSpec* seed_basis = nullptr;
};

/// The raw three-point stencil [e(l+h) - 2 e(l) + e(l-h)] / (N h^2).
double central_second_difference(double e_minus, double e_center,
                                 double e_plus, double h, int n_atoms);

/// N^-1 d^2 E0/d lambda^2 by central differences. The three points are
/// converged independently, then re-solved at the largest of the three final
/// truncations so the stencil sees one variational manifold. Requires h > 0
/// and lambda - h >= 0.
double second_derivative_e0(const ModelParams& p, double h,
                            BasisKind kind = BasisKind::DisplacedFock,
                            const DerivativeOptions& opts = {});

struct CurvePoint {
  double lambda;
  double d2e;
};

/// Raised when the second-derivative minimum sits on the grid boundary; the
/// partial curve rides along for diagnosis.
class BracketError : public std::runtime_error {
 public:
  BracketError(const std::string& what, std::vector<CurvePoint> curve)
      : std::runtime_error(what), curve_(std::move(curve)) {}
  const std::vector<CurvePoint>& curve() const { return curve_; }

 private:
  std::vector<CurvePoint> curve_;
};

struct FiniteSizeCritical {
  double lambda_c_n;
  std::vector<CurvePoint> curve;
};

/// Finite-size critical coupling: the grid minimum of the second derivative,
/// refined by a parabola through the minimum and its two neighbours.
FiniteSizeCritical finite_size_critical(const ModelParams& p,
                                        std::span<const double> lambda_grid,
                                        double h,
                                        BasisKind kind = BasisKind::DisplacedFock,
                                        const DerivativeOptions& opts = {});

/// Vertex abscissa of the parabola through three points.
double parabolic_vertex(double x0, double y0, double x1, double y1, double x2,
                        double y2);

}  // namespace dicke
