#include "gaussbm/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gaussbm/error.hpp"

namespace gaussbm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

#if defined(__SIZEOF_FLOAT128__)
using Wide = __float128;
constexpr double kWideEps = 1.0e-33;
#else
using Wide = long double;
constexpr double kWideEps = std::numeric_limits<long double>::epsilon();
#endif

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    fail(ErrorCode::Domain, std::string(what) + " must be finite");
  }
}

// Sum_{k>=0} x^k / (a (a+1) ... (a+k)), valid and fast for x < a + 1.
double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (term < sum * kEps * 0.25) return sum;
  }
  fail(ErrorCode::Convergence, "incomplete gamma series did not converge");
}

// Continued fraction h with Gamma(a, x) = e^{-x} x^a h (modified Lentz),
// valid for x >= a + 1.
double upper_gamma_fraction(double a, double x) {
  constexpr double kTiny = 1.0e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps * 0.5) return h;
  }
  fail(ErrorCode::Convergence, "incomplete gamma fraction did not converge");
}

struct SeriesSum {
  Wide value;
  Wide abs_sum;  // Sum |term|, drives the rounding estimate
};

// Direct ascending series of M(a, b; z) in extended precision with
// Neumaier-compensated accumulation.
SeriesSum kummer_series(double a, double b, double z) {
  constexpr int kMaxTerms = 10000;
  constexpr double kStopRatio = 1.0e-17;
  const Wide wa = a, wb = b, wz = z;
  Wide term = 1;
  Wide sum = 1;
  Wide comp = 0;
  Wide abs_sum = 1;
  int small_run = 0;
  for (int k = 0; k < kMaxTerms; ++k) {
    term *= (wa + k) / (wb + k) * wz / (k + 1);
    if (term == 0) return {sum + comp, abs_sum};
    const Wide t = sum + term;
    if (wide_abs(sum) >= wide_abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    abs_sum += wide_abs(term);
    // Only count tiny terms once the term ratio has dropped below one;
    // before that a tiny term (a near a negative integer) can still be
    // followed by a growing tail.
    const Wide next_ratio =
        wide_abs((wa + (k + 1)) / (wb + (k + 1)) * wz / (k + 2));
    if (wide_abs(term) < kStopRatio * wide_abs(sum + comp) && next_ratio < 1) {
      if (++small_run == 3) return {sum + comp, abs_sum};
    } else {
      small_run = 0;
    }
  }
  fail(ErrorCode::Convergence, "Kummer series exceeded the term cap");
}

}  // namespace

Dimension::Dimension(int n) : n_(n) {
  if (n < 1) {
    fail(ErrorCode::Domain, "dimension must be >= 1, got " + std::to_string(n));
  }
}

double Dimension::unit_ball_volume() const {
  const double half = 0.5 * n_;
  if (n_ <= 100) {
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
  }
  return std::exp(half * std::log(std::numbers::pi) - std::lgamma(half + 1.0));
}

double Dimension::polar_constant() const {
  return n_ * unit_ball_volume() * std::pow(2.0 * std::numbers::pi, -0.5 * n_);
}

double Dimension::complete_moment() const {
  const double half = 0.5 * n_;
  if (n_ <= 100) return std::pow(2.0, half - 1.0) * std::tgamma(half);
  return std::exp((half - 1.0) * std::numbers::ln2 + std::lgamma(half));
}

MomentParts gaussian_moment_parts(Dimension n, double R) {
  require_finite(R, "R");
  if (R <= 0.0) fail(ErrorCode::Domain, "R must be > 0");
  const double a = 0.5 * n.as_double();
  const double x = 0.5 * R * R;
  const double derivative = gaussian_moment_d1(n, R);
  if (x < a + 1.0) {
    // I = (R/2) I'(R) Sum x^k / (a (a+1) ... (a+k))
    const double ratio = 0.5 * R * lower_gamma_series(a, x);
    return {ratio * derivative, derivative, ratio};
  }
  // Upper tail Int_R^inf = (R/2) I'(R) h_cf.
  const double cf = upper_gamma_fraction(a, x);
  const double full = n.complete_moment();
  const double moment = full - 0.5 * R * derivative * cf;
  const double ratio = full / derivative - 0.5 * R * cf;
  return {moment, derivative, ratio};
}

NumResult gaussian_moment(Dimension n, double R) {
  require_finite(R, "R");
  if (R < 0.0) fail(ErrorCode::Domain, "R must be >= 0");
  if (R == 0.0) return {0.0, 0.0};
  const double value = gaussian_moment_parts(n, R).moment;
  return {value, 8.0 * kEps * value};
}

double gaussian_moment_d1(Dimension n, double R) {
  require_finite(R, "R");
  if (R <= 0.0) fail(ErrorCode::Domain, "I'(R) requires R > 0");
  const int k = n.value() - 1;
  const double power = k == 0 ? 1.0 : std::pow(R, k);
  return power * std::exp(-0.5 * R * R);
}

NumResult gaussian_tail(double s) {
  require_finite(s, "s");
  // x = s / sqrt(2) carries a rounding error dx that erfc amplifies by ~2x^2
  // in the far tail; undo it with one Taylor step.
  constexpr double kSqrt2Lo = -9.6672933134529130e-17;  // sqrt(2) - double(sqrt(2))
  const double x = s / std::numbers::sqrt2;
  const double residual = std::fma(-x, std::numbers::sqrt2, s) - x * kSqrt2Lo;
  const double dx = residual / std::numbers::sqrt2;
  const double erfc_x = std::erfc(x) - std::numbers::inv_sqrtpi * 2.0 * std::exp(-x * x) * dx;
  const double value = kSqrtHalfPi * erfc_x;
  return {value, 4.0 * kEps * value};
}

NumResult kummer_m(double a, double b, double z) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(z, "z");
  if (b <= 0.0 && b == std::floor(b)) {
    fail(ErrorCode::Pole, "Kummer M has a pole at non-positive integer b = " +
                              std::to_string(b));
  }
  if (std::fabs(z) > kKummerMaxAbsZ) {
    fail(ErrorCode::Range, "Kummer M supported for |z| <= 200, got z = " +
                               std::to_string(z));
  }
  if (z == 0.0 || a == 0.0) return {1.0, 0.0};
  if (z > 0.0) {
    const SeriesSum s = kummer_series(a, b, z);
    const double value = static_cast<double>(s.value);
    const double err = kEps * std::fabs(value) +
                       kWideEps * 64.0 * static_cast<double>(s.abs_sum);
    return {value, err};
  }
  // M(a, b; z) = e^z M(b - a, b; -z) keeps the series argument non-negative.
  const SeriesSum s = kummer_series(b - a, b, -z);
  const double scale = std::exp(z);
  const double value = scale * static_cast<double>(s.value);
  const double err = 2.0 * kEps * std::fabs(value) +
                     scale * kWideEps * 64.0 * static_cast<double>(s.abs_sum);
  return {value, err};
}

}  // namespace gaussbm
