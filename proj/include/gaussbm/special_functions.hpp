#pragma once

#include <numbers>

namespace gaussbm {

/// Spatial dimension n >= 1.
class Dimension {
 public:
  explicit Dimension(int n);
  int value() const noexcept { return n_; }
  double as_double() const noexcept { return static_cast<double>(n_); }

  /// Volume of the unit ball, pi^{n/2} / Gamma(n/2 + 1).
  double unit_ball_volume() const;
  /// c_n = n * omega_n * (2 pi)^{-n/2}: surface factor of the Gaussian measure
  /// in polar coordinates.
  double polar_constant() const;
  /// I(inf) = Int_0^inf s^{n-1} e^{-s^2/2} ds = 2^{(n-2)/2} Gamma(n/2).
  double complete_moment() const;

  friend bool operator==(Dimension, Dimension) = default;

 private:
  int n_;
};

/// A computed value with an estimated absolute error.
struct NumResult {
  double value = 0.0;
  double err = 0.0;
};

/// I(R), I'(R) and h(R) = I(R)/I'(R) evaluated together. h is produced
/// without dividing by I', so it stays finite where I' underflows at tiny R.
struct MomentParts {
  double moment;      // I(R)
  double derivative;  // I'(R) = R^{n-1} e^{-R^2/2}
  double ratio;       // h(R)
};

/// I(R) = Int_0^R s^{n-1} e^{-s^2/2} ds. Throws Domain for R < 0 or non-finite.
NumResult gaussian_moment(Dimension n, double R);

/// I'(R) = R^{n-1} e^{-R^2/2}. Throws Domain for R <= 0.
double gaussian_moment_d1(Dimension n, double R);

/// I, I' and I/I' at R > 0.
MomentParts gaussian_moment_parts(Dimension n, double R);

/// Int_s^inf e^{-t^2/2} dt.
NumResult gaussian_tail(double s);

/// Kummer's confluent hypergeometric function M(a, b; z) = 1F1(a; b; z).
/// Supported for |z| <= kKummerMaxAbsZ; b must not be a non-positive integer.
NumResult kummer_m(double a, double b, double z);

inline constexpr double kKummerMaxAbsZ = 200.0;
inline constexpr double kSqrtTwoPi = 2.5066282746310002;  // sqrt(2 pi)
inline constexpr double kSqrtHalfPi = 1.2533141373155003;  // sqrt(pi / 2)

}  // namespace gaussbm
