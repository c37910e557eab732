#include "gaussbm/torsion.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gaussbm/error.hpp"

namespace gaussbm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// e^{t^2/2} overflows a double past |t| ~ 37.6.
constexpr double kMaxAbsCoordinate = 35.0;
constexpr double kInvSqrtTwoPi = 1.0 / kSqrtTwoPi;

double upper_tail(double t) {
  return kSqrtHalfPi * std::erfc(t / std::numbers::sqrt2);
}

// Int_a^x e^{-s^2/2} ds, choosing the tail form that avoids cancellation.
double gauss_mass(double a, double x) {
  if (a >= 0.0) return upper_tail(a) - upper_tail(x);
  if (x <= 0.0) return upper_tail(-x) - upper_tail(-a);
  return kSqrtHalfPi * (std::erf(x / std::numbers::sqrt2) -
                        std::erf(a / std::numbers::sqrt2));
}

void require_radius(double R) {
  if (!std::isfinite(R) || R <= 0.0) fail(ErrorCode::Domain, "R must be finite and > 0");
  if (R > kMaxAbsCoordinate) {
    fail(ErrorCode::Domain, "R > 35 overflows the radial integrals");
  }
}

void require_threshold(double s) {
  if (!std::isfinite(s) || s < kHalfSpaceMinThreshold) {
    fail(ErrorCode::Domain, "half-space threshold must be finite and >= -8");
  }
}

}  // namespace

NumResult torsion_interval(const IntervalDomain& dom, const QuadConfig& cfg) {
  const double a = dom.a;
  const double b = dom.b;
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    fail(ErrorCode::Domain, "interval needs finite a < b");
  }
  if (std::fabs(a) > kMaxAbsCoordinate || std::fabs(b) > kMaxAbsCoordinate) {
    fail(ErrorCode::Domain, "interval endpoints must lie in [-35, 35]");
  }

  // u'(x) = e^{x^2/2} (C - Phi(x)), Phi(x) = Int_a^x e^{-s^2/2} ds, with C
  // fixed by u(b) = 0. T = Int u dgamma = Int |u'|^2 dgamma.
  auto weight = [](double t) { return std::exp(0.5 * t * t); };
  const NumResult denom = integrate(weight, a, b, cfg);
  const NumResult numer =
      integrate([&](double t) { return weight(t) * gauss_mass(a, t); }, a, b, cfg);
  const double C = numer.value / denom.value;
  const double C_err = (numer.err + std::fabs(C) * denom.err) / denom.value;

  const NumResult energy = integrate(
      [&](double x) {
        const double du = C - gauss_mass(a, x);
        return weight(x) * du * du;
      },
      a, b, cfg);
  // T is stationary in C, so the error in C enters only quadratically.
  const double value = energy.value * kInvSqrtTwoPi;
  const double err =
      (energy.err + C_err * C_err * denom.value) * kInvSqrtTwoPi + 4.0 * kEps * value;
  return {value, err};
}

NumResult radial_torsion_integral(Dimension n, double R, const QuadConfig& cfg) {
  require_radius(R);
  // I(t)^2 / I'(t) = h(t) I(t) ~ t^{n+1} / n^2 near t = 0.
  auto integrand = [n](double t) {
    if (t <= 0.0) return 0.0;
    const MomentParts parts = gaussian_moment_parts(n, t);
    return parts.ratio * parts.moment;
  };
  return integrate(Integrand(integrand, n.as_double() + 1.0), 0.0, R, cfg);
}

NumResult torsion_ball(Dimension n, double R, const QuadConfig& cfg) {
  const NumResult J = radial_torsion_integral(n, R, cfg);
  const double c = n.polar_constant();
  const double value = c * J.value;
  if (!std::isfinite(value)) fail(ErrorCode::Domain, "ball torsion overflows");
  return {value, c * J.err + 2.0 * kEps * value};
}

double torsion_ball_d1(Dimension n, double R) {
  require_radius(R);
  const MomentParts parts = gaussian_moment_parts(n, R);
  return n.polar_constant() * parts.ratio * parts.moment;
}

double torsion_ball_d2(Dimension n, double R) {
  require_radius(R);
  const MomentParts parts = gaussian_moment_parts(n, R);
  // I / (R^n e^{-R^2/2}) = h / R.
  const double bracket = 2.0 - (n.as_double() - 1.0 - R * R) * parts.ratio / R;
  return n.polar_constant() * parts.moment * bracket;
}

NumResult torsion_halfspace(const HalfSpaceDomain& dom, const QuadConfig& cfg) {
  require_threshold(dom.s);
  auto integrand = [](double t) {
    if (t > kMaxAbsCoordinate) return 0.0;  // < e^{-600}
    const double tail = upper_tail(t);
    return std::exp(0.5 * t * t) * tail * tail;
  };
  const NumResult integral = integrate_semi_infinite(integrand, dom.s, cfg);
  const double value = integral.value * kInvSqrtTwoPi;
  return {value, integral.err * kInvSqrtTwoPi + 4.0 * kEps * value};
}

NumResult torsion_halfspace_d2(double s) {
  require_threshold(s);
  const double tail = upper_tail(s);
  const double first = -s * std::exp(0.5 * s * s) * kInvSqrtTwoPi * tail * tail;
  const double second = 2.0 * kInvSqrtTwoPi * tail;
  const double value = first + second;
  return {value, 8.0 * kEps * (std::fabs(first) + std::fabs(second))};
}

AuxQuantities aux_quantities(Dimension n, double R, const QuadConfig& cfg) {
  require_radius(R);
  const double nd = n.as_double();
  const MomentParts parts = gaussian_moment_parts(n, R);
  const NumResult J = radial_torsion_integral(n, R, cfg);

  AuxQuantities q{};
  q.I = parts.moment;
  q.I_prime = parts.derivative;
  q.h = parts.ratio;
  q.p = (nd - 1.0) / R - R;
  q.p_prime = -(nd - 1.0) / (R * R) - 1.0;
  q.h_prime = 1.0 - q.h * q.p;
  q.J = J.value;
  q.J_err = J.err;
  q.v = q.J / (q.h * q.I);
  q.v_prime = 1.0 - (1.0 + q.h_prime) * q.v / q.h;
  return q;
}

AlphaResult alpha_n(Dimension n, double R, const QuadConfig& cfg) {
  const AuxQuantities q = aux_quantities(n, R, cfg);
  const double from_v = q.v_prime;

  const NumResult T = torsion_ball(n, R, cfg);
  const double T1 = torsion_ball_d1(n, R);
  const double T2 = torsion_ball_d2(n, R);
  const double from_torsion = 1.0 - T.value * T2 / (T1 * T1);

  const double scale = std::fabs(1.0 - from_v);
  const double err = scale * (q.J_err / q.J) + 32.0 * kEps * (1.0 + scale);
  return {from_v, err, from_torsion};
}

NumResult f_exponent_gap(Dimension n, double R, const QuadConfig& cfg) {
  const AuxQuantities q = aux_quantities(n, R, cfg);
  const double nd = n.as_double();
  // (n-1-R^2) I / (R^n e^{-R^2/2}) = (n-1-R^2) h / R and
  // I^3 / (R^{2n-2} e^{-R^2} J) = h^2 I / J.
  const double second = (nd - 1.0 - R * R) * q.h / R;
  const double third = (nd + 1.0) / (nd + 2.0) * q.h * q.h * q.I / q.J;
  const double value = 2.0 - second - third;
  const double err = third * (q.J_err / q.J) +
                     16.0 * kEps * (2.0 + std::fabs(second) + third);
  return {value, err};
}

}  // namespace gaussbm
