#include "dicke/observables.hpp"

#include <algorithm>
#include <cmath>

namespace dicke {

namespace {

struct FieldMoments {
  double photons = 0.0;  // <b^+ b>
  double jz = 0.0;       // <J_z>
};

FieldMoments field_moments(const BasisSpec& basis, const Eigen::VectorXd& v) {
  FieldMoments out;
  const int nf = basis.n_max + 1;
  for (int mi = 0; mi < basis.spin.dim(); ++mi) {
    const auto block = v.segment(basis.index(mi, 0), nf);
    const double wt = block.squaredNorm();
    out.jz += basis.spin.m_value(mi) * wt;

    double occ = 0.0;
    for (int n = 1; n < nf; ++n) occ += n * block[n] * block[n];
    if (basis.kind == BasisKind::DisplacedFock) {
      // b^+ b = A^+ A - g (A^+ + A) + g^2 within the shifted register
      const double g = basis.displacements[mi];
      double x = 0.0;
      for (int n = 0; n + 1 < nf; ++n) {
        x += 2.0 * std::sqrt(n + 1.0) * block[n + 1] * block[n];
      }
      occ += -g * x + g * g * wt;
    }
    out.photons += occ;
  }
  return out;
}

}  // namespace

GroundStateReport report(const ModelParams& p, const ConvergedResult& r,
                         const Eigen::VectorXd& v) {
  if (v.size() != r.basis.dim()) {
    throw std::invalid_argument("vector does not match the result basis");
  }
  if (std::abs(v.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("eigenvector is not normalized");
  }

  const EffectiveFrame f = effective_frame(p);
  const FieldMoments m = field_moments(r.basis, v);

  GroundStateReport rep;
  rep.e0_per_atom = r.e0 / p.n_atoms;
  rep.e0_shifted_per_atom = (r.e0 + f.energy_shift) / p.n_atoms;
  rep.photon_density = m.photons / p.n_atoms;
  rep.jz_order = m.jz / r.basis.spin.j();
  rep.gap = r.e1 - r.e0;
  if (r.basis.kind == BasisKind::PlainFock) {
    const SparseSymOperator pi = parity_operator(r.basis);
    rep.parity = v.dot(pi.matrix.apply(v));
  } else {
    rep.parity = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

double central_second_difference(double e_minus, double e_center,
                                 double e_plus, double h, int n_atoms) {
  return (e_plus - 2.0 * e_center + e_minus) / (n_atoms * h * h);
}

namespace {

// Converged solve reusing (and updating) a running warm-start seed; the
// ladder may enter at the seed's own truncation instead of the default rung.
ConvergedResult converge_seeded(const ModelParams& p, BasisKind kind,
                                const DerivativeOptions& o,
                                Eigen::VectorXd* seed, BasisSpec* seed_basis,
                                int n_start = -1) {
  ConvergeOptions co;
  co.e_tol = std::min(o.e_tol, 1e-8);
  co.tol = o.tol;
  co.n_step = o.n_step;
  co.n_cap = o.n_cap;
  co.count = 1;
  co.dense_cutoff = o.dense_cutoff;
  co.n_start = n_start;
  if (seed != nullptr && seed->size() > 0) {
    co.guess = seed;
    co.guess_basis = seed_basis;
    if (n_start < 0) co.n_start = seed_basis->n_max;
  }
  ConvergedResult r = converge_truncation(p, kind, co);
  if (seed != nullptr) {
    *seed = r.ground_vector;
    *seed_basis = r.basis;
  }
  return r;
}

double resolve_at(const ModelParams& p, BasisKind kind, int n_max,
                  const ConvergedResult& from, const DerivativeOptions& o) {
  if (from.basis.n_max == n_max) return from.e0;
  const SparseSymOperator op = kind == BasisKind::PlainFock
                                   ? build_plain_fock(p, n_max)
                                   : build_displaced(p, n_max);
  EigsOptions eo;
  eo.count = 1;
  eo.tol = o.tol;
  eo.dense_cutoff = o.dense_cutoff;
  const Eigen::VectorXd guess =
      pad_truncation(from.ground_vector, from.basis, op.basis);
  eo.guess = &guess;
  return lowest_eigenpairs(op, eo)[0].value;
}

double stencil_d2(const ModelParams& p, double h, BasisKind kind,
                  const DerivativeOptions& o, Eigen::VectorXd* seed,
                  BasisSpec* seed_basis) {
  if (!(h > 0.0)) throw std::domain_error("h must be > 0");
  if (p.lambda - h < 0.0) {
    throw std::domain_error("stencil requires lambda - h >= 0");
  }

  const ConvergedResult center = converge_seeded(p, kind, o, seed, seed_basis);
  Eigen::VectorXd side_seed = center.ground_vector;
  BasisSpec side_basis = center.basis;
  const ConvergedResult minus = converge_seeded(
      p.with_lambda(p.lambda - h), kind, o, &side_seed, &side_basis);
  side_seed = center.ground_vector;
  side_basis = center.basis;
  const ConvergedResult plus = converge_seeded(
      p.with_lambda(p.lambda + h), kind, o, &side_seed, &side_basis);

  // one variational manifold for all three points
  const int n_shared =
      std::max({center.basis.n_max, minus.basis.n_max, plus.basis.n_max});
  const double ec = resolve_at(p, kind, n_shared, center, o);
  const double em =
      resolve_at(p.with_lambda(p.lambda - h), kind, n_shared, minus, o);
  const double ep =
      resolve_at(p.with_lambda(p.lambda + h), kind, n_shared, plus, o);

  return central_second_difference(em, ec, ep, h, p.n_atoms);
}

}  // namespace

double second_derivative_e0(const ModelParams& p, double h, BasisKind kind,
                            const DerivativeOptions& opts) {
  Eigen::VectorXd seed;
  BasisSpec seed_basis;
  if (opts.seed != nullptr && opts.seed_basis != nullptr) {
    seed = *opts.seed;
    seed_basis = *opts.seed_basis;
  }
  return stencil_d2(p, h, kind, opts, &seed, &seed_basis);
}

double parabolic_vertex(double x0, double y0, double x1, double y1, double x2,
                        double y2) {
  const double d01 = x1 - x0;
  const double d12 = x1 - x2;
  const double num = d01 * d01 * (y1 - y2) - d12 * d12 * (y1 - y0);
  const double den = d01 * (y1 - y2) - d12 * (y1 - y0);
  if (den == 0.0) return x1;
  return x1 - 0.5 * num / den;
}

FiniteSizeCritical finite_size_critical(const ModelParams& p,
                                        std::span<const double> lambda_grid,
                                        double h, BasisKind kind,
                                        const DerivativeOptions& opts) {
  if (lambda_grid.size() < 3) {
    throw std::invalid_argument("lambda grid needs at least 3 points");
  }
  for (std::size_t i = 1; i < lambda_grid.size(); ++i) {
    if (!(lambda_grid[i] > lambda_grid[i - 1])) {
      throw std::invalid_argument("lambda grid must ascend strictly");
    }
  }

  std::vector<CurvePoint> curve;
  curve.reserve(lambda_grid.size());
  Eigen::VectorXd seed;
  BasisSpec seed_basis;
  if (opts.seed != nullptr && opts.seed_basis != nullptr) {
    seed = *opts.seed;
    seed_basis = *opts.seed_basis;
  }
  for (double lam : lambda_grid) {
    const double d2 =
        stencil_d2(p.with_lambda(lam), h, kind, opts, &seed, &seed_basis);
    curve.push_back({lam, d2});
  }

  std::size_t imin = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].d2e < curve[imin].d2e) imin = i;
  }
  if (imin == 0 || imin + 1 == curve.size()) {
    const std::string what =
        "second-derivative minimum sits on the grid boundary (lambda = " +
        std::to_string(curve[imin].lambda) + ")";
    throw BracketError(what, std::move(curve));
  }

  const CurvePoint& a = curve[imin - 1];
  const CurvePoint& b = curve[imin];
  const CurvePoint& c = curve[imin + 1];
  const double refined =
      parabolic_vertex(a.lambda, a.d2e, b.lambda, b.d2e, c.lambda, c.d2e);
  return {refined, std::move(curve)};
}

}  // namespace dicke
