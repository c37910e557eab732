#include <cmath>

#include "doctest.h"
#include "gaussbm/error.hpp"
#include "gaussbm/spectrum.hpp"
#include "support/oracles.hpp"

using namespace gaussbm;

namespace {

double rel(double x, double ref) { return std::fabs(x - ref) / std::fabs(ref); }

}  // namespace

TEST_CASE("residual at lambda = 0 is one") {
  for (int n : {1, 2, 7}) {
    for (double R : {0.5, 3.0, 6.0}) CHECK(eigen_residual(Dimension(n), 0.0, R) == 1.0);
  }
}

TEST_CASE("residual matches the 50-digit series") {
  oracle::SplitMix64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const int n = rng.integer(1, 8);
    const double R = rng.uniform(0.5, 6.0);
    const double lambda = rng.uniform(0.0, 10.0);
    const double ref = oracle::kummer_series(-lambda / 2, n / 2.0, R * R / 2);
    CHECK(std::fabs(eigen_residual(Dimension(n), lambda, R) - ref) <= 1e-12 * std::max(1.0, std::fabs(ref)));
  }
}

TEST_CASE("residual vanishes at the computed eigenvalue") {
  for (int n : {1, 2, 3, 6}) {
    for (double R : {0.7, 2.0, 4.0, 6.0}) {
      const EigenResult e = eigen_ball(Dimension(n), R);
      CHECK(std::fabs(eigen_residual(Dimension(n), e.lambda, R)) <= 1e-12);
      CHECK(e.bracket.first <= e.lambda);
      CHECK(e.lambda <= e.bracket.second);
      CHECK((e.bracket.second - e.bracket.first) <= 1e-13 * e.lambda);
    }
  }
  // The published value is truncated at 1e-10; dM/dlambda is about -200 there.
  CHECK(std::fabs(eigen_residual(Dimension(2), 0.0045931899, 4.0)) < 1e-7);
}

TEST_CASE("published eigenvalues in the plane") {
  CHECK(rel(eigen_ball(Dimension(2), 4.0).lambda, 0.0045931899) <= 1e-6);
  CHECK(rel(eigen_ball(Dimension(2), 5.0).lambda, 0.0000848928) <= 1e-5);
  CHECK(rel(eigen_ball(Dimension(2), 6.0).lambda, 0.0000005157) <= 1e-3);
}

TEST_CASE("eigen_ball agrees with the multiprecision root") {
  for (int n : {1, 2, 3, 5}) {
    for (double R : {0.5, 1.0, 2.5, 4.0, 6.0}) {
      INFO("n=" << n << " R=" << R);
      CHECK(rel(eigen_ball(Dimension(n), R).lambda, oracle::ball_eigenvalue(n, R)) < 1e-11);
    }
  }
}

TEST_CASE("small balls approach the scaled Dirichlet Laplacian eigenvalue") {
  // For R -> 0 the drift is negligible: lambda R^2 -> j^2 with j the first
  // zero of the radial Bessel profile (pi/2 in 1-D, 2.404825557695773 in 2-D).
  const double R = 1e-2;
  CHECK(rel(eigen_ball(Dimension(1), R).lambda * R * R, std::pow(M_PI / 2, 2)) < 1e-3);
  CHECK(rel(eigen_ball(Dimension(2), R).lambda * R * R, std::pow(2.404825557695773, 2)) < 1e-3);
}

TEST_CASE("domain monotonicity") {
  CHECK(eigen_ball(Dimension(1), 8.0).lambda < eigen_ball(Dimension(1), 4.0).lambda);
  for (int n : {1, 2, 3}) {
    double previous = INFINITY;
    for (int k = 1; k <= 24; ++k) {
      const double lambda = eigen_ball(Dimension(n), 0.25 * k).lambda;
      CHECK(lambda < previous);
      previous = lambda;
    }
  }
}

TEST_CASE("eigen_ball errors") {
  CHECK_THROWS_AS(eigen_ball(Dimension(2), 0.0), Error);
  CHECK_THROWS_AS(eigen_ball(Dimension(2), kEigenMaxRadius + 1), Error);
}

TEST_CASE("shooting oracle") {
  CHECK(rel(eigen_ball_shooting(Dimension(2), 4.0), 0.0045931899) <= 1e-5);
  CHECK(rel(eigen_ball_shooting(Dimension(3), 2.0), eigen_ball(Dimension(3), 2.0).lambda) <= 1e-6);
  for (int n : {1, 2, 3}) {
    for (double R : {1.0, 2.0, 4.0, 6.0}) {
      const double series = eigen_ball(Dimension(n), R).lambda;
      CHECK(rel(eigen_ball_shooting(Dimension(n), R), series) <= 1e-6);
    }
  }
}

TEST_CASE("Frobenius start matches the regular expansion") {
  const Dimension n(3);
  const double lambda = 2.5;
  for (double r : {1e-3, 1e-2, 5e-2}) {
    const auto [y, dy] = frobenius_start(n, lambda, r);
    const double leading = 1 - lambda * r * r / (2 * 3);
    CHECK(std::fabs(y - leading) <= 2 * std::pow(r, 4));
    CHECK(std::fabs(dy + lambda * r / 3) <= 4 * std::pow(r, 3));
  }
  // The series start satisfies the ODE to O(r^4): check through the
  // residual y'' + ((n-1)/r - r) y' + lambda y with a difference quotient.
  const double r = 1e-2, h = 1e-4;
  const double ypp = (frobenius_start(n, lambda, r + h).second - frobenius_start(n, lambda, r - h).second) / (2 * h);
  const auto [y, dy] = frobenius_start(n, lambda, r);
  CHECK(std::fabs(ypp + (2 / r - r) * dy + lambda * y) < 1e-6);
}

TEST_CASE("shoot_radial changes sign at the eigenvalue") {
  const Dimension n(2);
  const double lambda = eigen_ball(n, 3.0).lambda;
  CHECK(shoot_radial(n, lambda * (1 - 1e-4), 3.0) > 0);
  CHECK(shoot_radial(n, lambda * (1 + 1e-4), 3.0) < 0);
}

TEST_CASE("shooting config validation") {
  ShootingConfig cfg;
  cfg.steps = 10;
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK_THROWS_AS(eigen_ball_shooting(Dimension(2), 3.0, cfg), Error);
}
