#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "dicke/meanfield.hpp"
#include "dicke/observables.hpp"
#include "oracles.hpp"

using dicke::BasisKind;
using dicke::ConvergeOptions;
using dicke::ModelParams;
using dicke::central_second_difference;
using dicke::converge_truncation;
using dicke::critical_coupling;
using dicke::finite_size_critical;
using dicke::parabolic_vertex;
using dicke::report;
using dicke::second_derivative_e0;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("report on the decoupled ground state") {
  const ModelParams p(1.0, 1.0, 0.0, -0.2, 0.3, 4);
  for (auto kind : {BasisKind::PlainFock, BasisKind::DisplacedFock}) {
    const auto r = converge_truncation(p, kind);
    const auto rep = report(p, r);
    CHECK(std::abs(rep.photon_density) < 1e-12);
    CHECK(std::abs(rep.jz_order) < 1e-10);
    CHECK(rep.e0_per_atom == doctest::Approx(r.e0 / 4.0).epsilon(1e-15));
    const double shift = dicke::effective_frame(p).energy_shift;
    CHECK(rep.e0_shifted_per_atom ==
          doctest::Approx((r.e0 + shift) / 4.0).epsilon(1e-14));
    CHECK(rep.gap > 0.0);
    if (kind == BasisKind::PlainFock) {
      CHECK(std::abs(std::abs(rep.parity) - 1.0) < 1e-10);
    } else {
      CHECK(std::isnan(rep.parity));
    }
  }
}

TEST_CASE("parity expectation is a clean sign in the normal phase") {
  ModelParams p(1.0, 1.0, 0.0, -0.2, 0.5, 4);
  p = p.with_lambda(0.5 * critical_coupling(p));
  const auto r = converge_truncation(p, BasisKind::PlainFock);
  const auto rep = report(p, r);
  CHECK(std::abs(std::abs(rep.parity) - 1.0) < 1e-10);
  CHECK(rep.gap > 0.0);
}

TEST_CASE("photon density tracks the mean-field displacement") {
  // the finite-N deviation from alpha^2 is ~1/N here: measured -16.6% at
  // N=8, -4.8% at N=16, -2.1% at N=32
  double prev_dev = std::numeric_limits<double>::infinity();
  for (int n : {8, 16, 32}) {
    ModelParams p(1.0, 1.0, 0.0, -0.2, 0.5, n);
    p = p.with_lambda(1.5 * critical_coupling(p));
    const auto r = converge_truncation(p, BasisKind::DisplacedFock);
    const auto rep = report(p, r);
    const auto mf = dicke::minimize(p);
    const double alpha2 = mf.alpha * mf.alpha;
    const double dev = std::abs(rep.photon_density - alpha2) / alpha2;
    CHECK(dev < (n == 8 ? 0.20 : 0.10));
    CHECK(dev < prev_dev);
    prev_dev = dev;
  }
}

TEST_CASE("displaced and plain photon densities agree") {
  ModelParams p(1.0, 1.0, 0.8, -0.2, 0.4, 6);
  const auto rd = converge_truncation(p, BasisKind::DisplacedFock);
  const auto rp = converge_truncation(p, BasisKind::PlainFock);
  const auto d = report(p, rd);
  const auto pl = report(p, rp);
  CHECK(std::abs(d.photon_density - pl.photon_density) < 1e-5);
  CHECK(std::abs(d.jz_order - pl.jz_order) < 1e-5);
}

TEST_CASE("report rejects bad vectors") {
  const ModelParams p(1.0, 1.0, 0.3, 0.0, 0.0, 2);
  const auto r = converge_truncation(p, BasisKind::PlainFock);
  VectorXd bad = r.ground_vector * 1.001;
  CHECK_THROWS_AS(report(p, r, bad), std::invalid_argument);
}

TEST_CASE("Hellmann-Feynman consistency") {
  // dE0/dlambda == (2/sqrt(N gamma_k)) <(b^+ + b) J_z> away from lambda_c
  const ModelParams p(1.0, 1.0, 0.4, -0.15, 0.3, 4);
  ConvergeOptions co;
  co.e_tol = 1e-10;
  const auto r = converge_truncation(p, BasisKind::PlainFock, co);

  const auto& basis = r.basis;
  dicke::CooSymMatrix<double> coupling(basis.dim());
  for (int mi = 0; mi < basis.spin.dim(); ++mi) {
    const double m = basis.spin.m_value(mi);
    for (int n = 0; n < basis.n_max; ++n) {
      coupling.add(basis.index(mi, n + 1), basis.index(mi, n),
                   m * std::sqrt(n + 1.0));
    }
  }
  const double gamma_k = dicke::effective_frame(p).gamma_k;
  const double hf = 2.0 / std::sqrt(p.n_atoms * gamma_k) *
                    r.ground_vector.dot(coupling.apply(r.ground_vector));

  const double h = 1e-4;
  const auto em = converge_truncation(p.with_lambda(p.lambda - h),
                                      BasisKind::PlainFock, co);
  const auto ep = converge_truncation(p.with_lambda(p.lambda + h),
                                      BasisKind::PlainFock, co);
  const double fd = (ep.e0 - em.e0) / (2.0 * h);
  CHECK(std::abs(fd - hf) / std::max(1.0, std::abs(hf)) < 1e-4);
}

TEST_CASE("second derivative: synthetic quadratic shift") {
  // energies c0 + c*lambda^2 feed the stencil; the central difference is
  // exact for a quadratic up to rounding amplified by h^-2
  const double c = 0.7321;
  const auto e = [&](double lam) { return -1.25 + c * lam * lam; };
  const double h = 1e-3;
  for (double lam : {0.2, 0.9, 1.7}) {
    const double d2 =
        central_second_difference(e(lam - h), e(lam), e(lam + h), h, 4);
    CHECK(std::abs(d2 - 2.0 * c / 4.0) < 1e-8);
  }
}

TEST_CASE("second derivative at the lambda = h edge matches the oracle") {
  const double h = 1e-2;
  const ModelParams p(1.0, 1.0, h, -0.2, 0.3, 4);
  const double got = second_derivative_e0(p, h, BasisKind::PlainFock);

  // oracle: dense ground energies at 0, h, 2h on one shared truncation
  const int n_shared = 40;
  const auto ground = [&](double lam) {
    const auto op = dicke::build_plain_fock(p.with_lambda(lam), n_shared);
    return Eigen::SelfAdjointEigenSolver<MatrixXd>(op.matrix.to_dense(),
                                                   Eigen::EigenvaluesOnly)
        .eigenvalues()(0);
  };
  const double want =
      central_second_difference(ground(0.0), ground(h), ground(2.0 * h), h, 4);
  CHECK(std::abs(got - want) < 1e-7);
}

TEST_CASE("step halving stays within the O(h^2) consistency bound") {
  ModelParams p(1.0, 1.0, 0.0, -0.2, 0.5, 4);
  p = p.with_lambda(0.7 * critical_coupling(p));  // away from criticality
  const double h = 2e-3 * critical_coupling(p);
  const double d_h = second_derivative_e0(p, h);
  const double d_h2 = second_derivative_e0(p, 0.5 * h);
  CHECK(std::abs(d_h - d_h2) < 0.05 * std::max(1.0, std::abs(d_h2)));
}

TEST_CASE("second derivative validates its stencil") {
  const ModelParams p(1.0, 1.0, 0.05, -0.2, 0.5, 2);
  CHECK_THROWS_AS(second_derivative_e0(p, 0.0), std::domain_error);
  CHECK_THROWS_AS(second_derivative_e0(p, 0.1), std::domain_error);
}

TEST_CASE("parabolic refinement returns the exact vertex of a parabola") {
  const auto f = [](double x) { return 3.0 * (x - 1.234) * (x - 1.234) - 2.0; };
  CHECK(parabolic_vertex(1.0, f(1.0), 1.2, f(1.2), 1.4, f(1.4)) ==
        doctest::Approx(1.234).epsilon(1e-12));
  // symmetric fixture: vertex at the middle point
  CHECK(parabolic_vertex(-1.0, 5.0, 0.0, 1.0, 1.0, 5.0) == 0.0);
}

TEST_CASE("finite-size critical point: grid handling") {
  const ModelParams p(1.0, 1.0, 0.3, -0.2, 0.5, 2);
  const std::vector<double> bad = {0.5, 0.4, 0.6};
  CHECK_THROWS_AS(finite_size_critical(p, bad, 1e-3), std::invalid_argument);

  // monotone curve on a tiny grid -> boundary minimum -> bracket failure
  const std::vector<double> low = {0.05, 0.10, 0.15};
  try {
    finite_size_critical(p, low, 1e-3);
    FAIL("expected BracketError");
  } catch (const dicke::BracketError& e) {
    CHECK(e.curve().size() == 3);
  }
}

TEST_CASE("finite-size critical point approaches the mean-field value") {
  ModelParams p(1.0, 1.0, 0.0, -0.2, 0.5, 16);
  const double lc = critical_coupling(p);
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(lc * (0.85 + 0.05 * i));
  const auto fs = finite_size_critical(p, grid, 1e-3 * lc);
  CHECK(std::abs(fs.lambda_c_n - lc) / lc < 0.15);
  CHECK(fs.curve.size() == grid.size());
}
