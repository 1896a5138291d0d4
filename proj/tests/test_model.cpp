#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dicke/model.hpp"
#include "oracles.hpp"

using dicke::EffectiveFrame;
using dicke::ModelParams;
using dicke::effective_frame;
using dicke::physical_couplings;
using dicke::trk_allowed;

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(ModelParams(1.0, 1.0, 0.0, 0.0, 0.0, 1));
  CHECK_THROWS_AS(ModelParams(0.0, 1.0, 0.0, 0.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, -1.0, 0.0, 0.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, -0.1, 0.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, 0.0, 0.0, -0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, 0.0, 0.0, 0.0, 0), std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, nan, 0.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, inf, 0.0, 0.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, 0.0, nan, 0.0, 1), std::invalid_argument);
}

TEST_CASE("effective frame: kappa = 0 is the identity transform") {
  const ModelParams p(1.0, 1.3, 0.7, -0.1, 0.0, 4);
  const EffectiveFrame f = effective_frame(p);
  CHECK(f.gamma_k == 1.0);
  CHECK(f.omega_k == 1.0);
  CHECK(f.lambda_k == 0.7);
  CHECK(f.mu == 1.0);
  CHECK(f.nu == 0.0);
  CHECK(f.energy_shift == 0.1);  // -omega_aa
}

TEST_CASE("effective frame: direct evaluation") {
  // gamma_k = sqrt(1 + 4*0.375/1) = sqrt(2.5)
  const ModelParams p(1.0, 1.0, 0.9, 0.0, 0.375, 4);
  const EffectiveFrame f = effective_frame(p);
  CHECK(f.gamma_k == doctest::Approx(1.5811388300841898).epsilon(1e-14));
  CHECK(f.omega_k == doctest::Approx(1.5811388300841898).epsilon(1e-14));
  CHECK(f.lambda_k == doctest::Approx(0.9 / 1.2574334296829355).epsilon(1e-14));
  CHECK(f.mu * f.mu - f.nu * f.nu == doctest::Approx(1.0).epsilon(1e-14));

  // omega_k = sqrt(omega*(omega + 4*kappa)) = sqrt(8)
  const ModelParams q(2.0, 1.0, 0.0, 0.0, 0.5, 4);
  CHECK(effective_frame(q).omega_k ==
        doctest::Approx(2.8284271247461903).epsilon(1e-14));
}

TEST_CASE("effective frame invariants on random draws") {
  std::mt19937_64 rng(20260809);
  for (int i = 0; i < 10000; ++i) {
    const ModelParams p = oracles::random_params(rng);
    const EffectiveFrame f = effective_frame(p);
    CHECK(std::abs(f.mu * f.mu - f.nu * f.nu - 1.0) < 1e-12);
    const double w2 = p.omega * (p.omega + 4.0 * p.kappa);
    CHECK(std::abs(f.omega_k * f.omega_k - w2) / w2 < 1e-12);
  }
}

TEST_CASE("effective frame is monotone in kappa") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    oracles::ParamRanges r;
    r.lambda_lo = 0.1;  // lambda > 0 so lambda_k strictly decreases
    const ModelParams p = oracles::random_params(rng, r);
    const EffectiveFrame f0 = effective_frame(p);
    const EffectiveFrame f1 = effective_frame(p.with_kappa(p.kappa + 0.05));
    CHECK(f1.omega_k > f0.omega_k);
    CHECK(f1.lambda_k < f0.lambda_k);
  }
}

TEST_CASE("physical couplings in natural units") {
  // zero dipole decouples the atoms; kappa is independent of the dipole
  const auto a = physical_couplings(1.0, 0.0, 1.0, 1.0);
  CHECK(a.lambda == 0.0);
  CHECK(a.kappa == doctest::Approx(std::numbers::pi).epsilon(1e-15));

  const auto b = physical_couplings(1.0, 1.0, 1.0, 2.0 * std::numbers::pi);
  CHECK(b.lambda == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.kappa == doctest::Approx(0.5).epsilon(1e-15));

  // doubling the density multiplies lambda by sqrt(2) and kappa by 2
  const auto c1 = physical_couplings(1.3, 0.4, 0.7, 1.9);
  const auto c2 = physical_couplings(1.3, 0.4, 1.4, 1.9);
  CHECK(c2.lambda == doctest::Approx(std::sqrt(2.0) * c1.lambda).epsilon(1e-14));
  CHECK(c2.kappa == doctest::Approx(2.0 * c1.kappa).epsilon(1e-14));

  CHECK_THROWS_AS(physical_couplings(0.0, 1.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(physical_couplings(1.0, 1.0, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(physical_couplings(1.0, 1.0, 1.0, -1.0), std::domain_error);
}

TEST_CASE("TRK sum-rule gate") {
  CHECK(trk_allowed({1.0, 1.0, 0.6, 0.0, 0.375, 2}));   // 0.6 < 0.612372
  CHECK(!trk_allowed({1.0, 1.0, 0.7, 0.0, 0.375, 2}));  // 0.7 > 0.612372
  CHECK(!trk_allowed({1.0, 1.0, 0.0, 0.0, 0.0, 2}));    // 0 < 0 is false

  // literal form: allowed <=> lambda^2 < delta*kappa
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10000; ++i) {
    const ModelParams p = oracles::random_params(rng);
    CHECK(trk_allowed(p) == (p.lambda * p.lambda < p.delta * p.kappa));
  }
}
