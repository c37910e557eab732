#include "gaussbm/spectrum.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "gaussbm/error.hpp"

namespace gaussbm {

namespace {

void require_eigen_radius(double R) {
  if (!std::isfinite(R) || R <= 0.0 || R > kEigenMaxRadius) {
    fail(ErrorCode::Domain, "eigenvalue radius must lie in (0, 20]");
  }
}

// Scan ratio below lambda_2 / lambda_1 for the l = 0 radial family.
double scan_ratio(Dimension n) { return 1.0 + 0.5 / (1.0 + n.as_double() / 20.0); }

double scan_upper(Dimension n, double R) {
  const double nd = n.as_double();
  return 2.0 * nd + R * R + ((nd + 6.0) / R) * ((nd + 6.0) / R);
}

struct Bracket {
  double lo, f_lo, hi, f_hi;
};

// First sign change of `residual` over (0, upper]: residual > 0 at lo, <= 0 at hi.
Bracket bracket_first_root(const std::function<double(double)>& residual,
                           double ratio, double upper) {
  double lo = 1e-9;
  double f_lo = residual(lo);
  while (f_lo <= 0.0) {
    lo *= 0.1;
    if (lo < 1e-300) fail(ErrorCode::Search, "residual not positive near lambda = 0");
    f_lo = residual(lo);
  }
  int evaluations = 0;
  while (lo < upper) {
    const double hi = lo * ratio;
    const double f_hi = residual(hi);
    ++evaluations;
    if (!std::isfinite(f_hi)) break;
    if (f_hi <= 0.0) return {lo, f_lo, hi, f_hi};
    lo = hi;
    f_lo = f_hi;
  }
  std::ostringstream report;
  report << "no sign change found: " << evaluations << " scan points up to lambda = "
         << lo << ", last residual " << f_lo;
  fail(ErrorCode::Search, report.str());
}

Bracket bisect(const std::function<double(double)>& residual, Bracket b,
               double rel_width) {
  while (b.hi - b.lo > rel_width * b.hi) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid <= b.lo || mid >= b.hi) break;
    const double f_mid = residual(mid);
    if (f_mid > 0.0) {
      b.lo = mid;
      b.f_lo = f_mid;
    } else {
      b.hi = mid;
      b.f_hi = f_mid;
    }
  }
  return b;
}

}  // namespace

void ShootingConfig::validate() const {
  if (steps < 100) fail(ErrorCode::Domain, "shooting needs at least 100 steps");
  if (!(match_tol > 0.0) || !std::isfinite(match_tol)) {
    fail(ErrorCode::Domain, "shooting match tolerance must be positive");
  }
}

double eigen_residual(Dimension n, double lambda, double R) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    fail(ErrorCode::Domain, "lambda must be finite and >= 0");
  }
  if (!std::isfinite(R) || R <= 0.0) fail(ErrorCode::Domain, "R must be > 0");
  return kummer_m(-0.5 * lambda, 0.5 * n.as_double(), 0.5 * R * R).value;
}

EigenResult eigen_ball(Dimension n, double R) {
  require_eigen_radius(R);
  auto residual = [n, R](double lambda) { return eigen_residual(n, lambda, R); };
  Bracket b = bracket_first_root(residual, scan_ratio(n), scan_upper(n, R));
  b = bisect(residual, b, 1e-14);

  // Secant point inside the final bracket, then keep the smallest residual.
  double best = b.lo;
  double best_res = std::fabs(b.f_lo);
  if (std::fabs(b.f_hi) < best_res) {
    best = b.hi;
    best_res = std::fabs(b.f_hi);
  }
  const double secant = b.lo - b.f_lo * (b.hi - b.lo) / (b.f_hi - b.f_lo);
  if (secant > b.lo && secant < b.hi) {
    const double r = std::fabs(residual(secant));
    if (r < best_res) {
      best = secant;
      best_res = r;
    }
  }
  return {best, best_res, {b.lo, b.hi}};
}

std::pair<double, double> frobenius_start(Dimension n, double lambda, double r) {
  const double nd = n.as_double();
  const double c2 = -lambda / (2.0 * nd);
  const double c4 = c2 * (2.0 - lambda) / (4.0 * (nd + 2.0));
  const double r2 = r * r;
  return {1.0 + c2 * r2 + c4 * r2 * r2, 2.0 * c2 * r + 4.0 * c4 * r2 * r};
}

double shoot_radial(Dimension n, double lambda, double R, const ShootingConfig& cfg) {
  cfg.validate();
  const double nd = n.as_double();
  const double h = R / cfg.steps;
  auto [y, w] = frobenius_start(n, lambda, h);
  // y' = w, w' = -lambda y - ((n-1)/r - r) w
  auto accel = [&](double r, double yy, double ww) {
    return -lambda * yy - ((nd - 1.0) / r - r) * ww;
  };
  double r = h;
  for (int i = 1; i < cfg.steps; ++i) {
    const double k1y = w;
    const double k1w = accel(r, y, w);
    const double k2y = w + 0.5 * h * k1w;
    const double k2w = accel(r + 0.5 * h, y + 0.5 * h * k1y, k2y);
    const double k3y = w + 0.5 * h * k2w;
    const double k3w = accel(r + 0.5 * h, y + 0.5 * h * k2y, k3y);
    const double k4y = w + h * k3w;
    const double k4w = accel(r + h, y + h * k3y, k4y);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    r = (i + 1) * h;
  }
  if (!std::isfinite(y)) {
    fail(ErrorCode::Evaluation, "shooting integration produced a non-finite value");
  }
  return y;
}

double eigen_ball_shooting(Dimension n, double R, const ShootingConfig& cfg) {
  require_eigen_radius(R);
  cfg.validate();
  auto residual = [&](double lambda) { return shoot_radial(n, lambda, R, cfg); };
  Bracket b = bracket_first_root(residual, scan_ratio(n), scan_upper(n, R));
  b = bisect(residual, b, cfg.match_tol);
  return b.lo - b.f_lo * (b.hi - b.lo) / (b.f_hi - b.f_lo);
}

}  // namespace gaussbm
