// scratch diagnostic, not registered in ctest
#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cstdio>

#include "dicke/displaced_overlap.hpp"
#include "dicke/hamiltonian.hpp"

using Eigen::MatrixXd;

static double ground(const MatrixXd& h) {
  return Eigen::SelfAdjointEigenSolver<MatrixXd>(h, Eigen::EigenvaluesOnly)
      .eigenvalues()(0);
}

int main() {
  // overlap error vs expm at several g, table size 120
  for (double g : {2.574, 5.148}) {
    const int big = 240;
    MatrixXd gen = MatrixXd::Zero(big + 1, big + 1);
    for (int n = 0; n < big; ++n) {
      gen(n + 1, n) = g * std::sqrt(n + 1.0);
      gen(n, n + 1) = -g * std::sqrt(n + 1.0);
    }
    const MatrixXd dexp = gen.exp();
    const auto o = dicke::displacement_overlaps(g, 120, 120);
    double worst = 0.0;
    for (int l = 0; l <= 120; ++l)
      for (int k = 0; k <= 120; ++k)
        worst = std::max(worst, std::abs(o(l, k) - dexp(l, k)));
    std::printf("g=%.3f worst overlap err (<=120) = %.3e\n", g, worst);
  }

  const dicke::ModelParams p(1.0, 1.0, 2.0, -0.2, 0.2, 4);
  const double ref = ground(dicke::build_plain_fock(p, 200).matrix.to_dense());
  std::printf("plain ref (n=200): %.15f\n", ref);
  for (int n : {10, 20, 40, 80, 120, 160}) {
    const double ep = ground(dicke::build_plain_fock(p, n).matrix.to_dense());
    const double ed = ground(dicke::build_displaced(p, n).matrix.to_dense());
    std::printf("n=%3d  plain %.15f (err %.2e)   disp %.15f (err %.2e)\n", n,
                ep, ep - ref, ed, ed - ref);
  }
  return 0;
}
