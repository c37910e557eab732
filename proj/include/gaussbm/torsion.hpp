#pragma once

#include "gaussbm/quadrature.hpp"
#include "gaussbm/special_functions.hpp"

namespace gaussbm {

/// Interval [a, b] in R^1.
struct IntervalDomain {
  double a;
  double b;
};

/// Origin-centred ball of radius R in R^n.
struct BallDomain {
  Dimension n;
  double R;
};

/// Half-space {x : x_1 >= s} in R^n.
struct HalfSpaceDomain {
  Dimension n;
  double s;
};

/// Radial building blocks at (n, R):
///   I(R) = Int_0^R s^{n-1} e^{-s^2/2} ds,  J(R) = Int_0^R I(t)^2 / I'(t) dt,
///   h = I / I',  v = J / (h I),  p = (n-1)/R - R,
/// with h' = 1 - h p, p' = -(n-1)/R^2 - 1 and v' = 1 - (1 + h') v / h.
struct AuxQuantities {
  double I;
  double I_prime;
  double h;
  double h_prime;
  double p;
  double p_prime;
  double J;
  double J_err;
  double v;
  double v_prime;
};

/// alpha_n(R): `value` from v'(R), `torsion_path` from 1 - T T'' / T'^2.
struct AlphaResult {
  double value;
  double err;
  double torsion_path;
};

/// Lowest half-space threshold accepted; below it the torsion overflows
/// quickly and the quadrature loses meaning.
inline constexpr double kHalfSpaceMinThreshold = -8.0;

NumResult torsion_interval(const IntervalDomain& dom, const QuadConfig& cfg = {});

/// J(R) by adaptive quadrature; T_gamma(B_R) = c_n J(R).
NumResult radial_torsion_integral(Dimension n, double R, const QuadConfig& cfg = {});

NumResult torsion_ball(Dimension n, double R, const QuadConfig& cfg = {});
/// T'(R) = c_n I(R)^2 / I'(R).
double torsion_ball_d1(Dimension n, double R);
/// T''(R) = c_n I(R) (2 - (n - 1 - R^2) I(R) / (R^n e^{-R^2/2})).
double torsion_ball_d2(Dimension n, double R);

NumResult torsion_halfspace(const HalfSpaceDomain& dom, const QuadConfig& cfg = {});
/// Closed-form second derivative of s -> T_gamma(H_s).
NumResult torsion_halfspace_d2(double s);

AuxQuantities aux_quantities(Dimension n, double R, const QuadConfig& cfg = {});

AlphaResult alpha_n(Dimension n, double R, const QuadConfig& cfg = {});

/// Sign function whose positivity is local convexity of T_gamma(B_R)^{1/(n+2)}.
NumResult f_exponent_gap(Dimension n, double R, const QuadConfig& cfg = {});

}  // namespace gaussbm
