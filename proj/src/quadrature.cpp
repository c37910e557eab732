#include "gaussbm/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gaussbm/error.hpp"

namespace gaussbm {

namespace {

// Kronrod abscissae (positive half, descending) and weights; odd indices are
// the 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

using Fn = std::function<double(double)>;

struct Piece {
  Fn g;
  double lo;
  double hi;
};

struct Segment {
  double lo;
  double hi;
  std::size_t piece;
  double value;
  double err;
};

double checked_eval(const Fn& g, double x) {
  const double y = g(x);
  if (!std::isfinite(y)) {
    throw Error(ErrorCode::Evaluation,
                "integrand returned a non-finite value at " + std::to_string(x));
  }
  return y;
}

Segment gauss_kronrod(const Fn& g, double lo, double hi, std::size_t piece) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = checked_eval(g, center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = checked_eval(g, center - dx) + checked_eval(g, center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, piece, kronrod, std::fabs(kronrod - gauss)};
}

NumResult adapt(const std::vector<Piece>& pieces, const QuadConfig& cfg) {
  std::vector<Segment> segments;
  segments.reserve(static_cast<std::size_t>(cfg.max_subdivisions) + pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    segments.push_back(gauss_kronrod(pieces[i].g, pieces[i].lo, pieces[i].hi, i));
  }

  int bisections = 0;
  while (true) {
    double total = 0.0;
    double total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      total += segments[i].value;
      total_err += segments[i].err;
      if (segments[i].err > segments[worst].err) worst = i;
    }
    const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total));
    if (total_err <= target) return {total, total_err};

    const Segment seg = segments[worst];
    const double mid = 0.5 * (seg.lo + seg.hi);
    const bool splittable = mid > seg.lo && mid < seg.hi;
    if (bisections >= cfg.max_subdivisions || !splittable) {
      throw Error(ErrorCode::Convergence,
                  "quadrature did not reach tolerance: estimate " +
                      std::to_string(total) + ", error " +
                      std::to_string(total_err),
                  total);
    }
    const Fn& g = pieces[seg.piece].g;
    segments[worst] = gauss_kronrod(g, seg.lo, mid, seg.piece);
    segments.push_back(gauss_kronrod(g, mid, seg.hi, seg.piece));
    ++bisections;
  }
}

}  // namespace

void QuadConfig::validate() const {
  const bool ok = std::isfinite(abs_tol) && abs_tol > 0.0 &&
                  std::isfinite(rel_tol) && rel_tol > 0.0 &&
                  max_subdivisions >= 1;
  if (!ok) fail(ErrorCode::Domain, "invalid QuadConfig");
}

NumResult integrate(const Integrand& f, double a, double b,
                    const QuadConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    fail(ErrorCode::Domain, "integrate requires finite a < b");
  }
  std::vector<Piece> pieces;
  if (f.left_exponent) {
    // First quarter in u with t = a + u^2: (t - a)^p dt becomes 2 u^{2p+1} du.
    const double width = 0.25 * (b - a);
    const Fn& inner = f.f;
    pieces.push_back({[inner, a](double u) { return 2.0 * u * inner(a + u * u); },
                      0.0, std::sqrt(width)});
    pieces.push_back({inner, a + width, b});
  } else {
    pieces.push_back({f.f, a, b});
  }
  return adapt(pieces, cfg);
}

NumResult integrate_semi_infinite(const Integrand& f, double a,
                                  const QuadConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a)) fail(ErrorCode::Domain, "lower limit must be finite");

  // |f(t)| t must decrease along the tail for the integral to converge.
  double previous = -1.0;
  bool growing = true;
  for (int k = 2; k <= 6; ++k) {
    const double t = a + std::ldexp(1.0, k);
    const double y = f.f(t);
    const double sample = std::isfinite(y) ? std::fabs(y) * (t - a) : INFINITY;
    if (k > 2 && !(sample >= previous && sample > 0.0)) growing = false;
    previous = sample;
  }
  if (growing) {
    fail(ErrorCode::Divergence, "integrand does not decay on [a, inf)");
  }

  const Fn& inner = f.f;
  Fn mapped = [inner, a](double u) {
    const double w = 1.0 - u;
    return inner(a + u / w) / (w * w);
  };
  return adapt({Piece{std::move(mapped), 0.0, 1.0}}, cfg);
}

}  // namespace gaussbm
