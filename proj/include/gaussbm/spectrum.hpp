#pragma once

#include <utility>

#include "gaussbm/special_functions.hpp"

namespace gaussbm {

/// First Dirichlet eigenvalue of the Ornstein-Uhlenbeck operator on B_R.
struct EigenResult {
  double lambda;
  double residual;                  // |M(-lambda/2, n/2; R^2/2)| at lambda
  std::pair<double, double> bracket;  // final sign-change bracket
};

/// Fixed-step classical RK4 for the radial eigen-ODE; the first step is
/// replaced by the regular (Frobenius) expansion at r = 0.
struct ShootingConfig {
  int steps = 8000;
  double match_tol = 1e-13;  // relative bracket width on lambda

  void validate() const;
};

inline constexpr double kEigenMaxRadius = 20.0;

/// M(-lambda/2, n/2; R^2/2): equals 1 at lambda = 0 and first changes sign at
/// lambda_gamma(B_R).
double eigen_residual(Dimension n, double lambda, double R);

EigenResult eigen_ball(Dimension n, double R);

/// Regular solution of y'' + ((n-1)/r - r) y' = -lambda y with y(0) = 1 at
/// small r: returns {y(r), y'(r)} through order r^4.
std::pair<double, double> frobenius_start(Dimension n, double lambda, double r);

/// y(R) for the regular solution normalised by y(0) = 1.
double shoot_radial(Dimension n, double lambda, double R,
                    const ShootingConfig& cfg = {});

/// Independent eigenvalue oracle: root in lambda of shoot_radial(n, ., R).
double eigen_ball_shooting(Dimension n, double R, const ShootingConfig& cfg = {});

}  // namespace gaussbm
