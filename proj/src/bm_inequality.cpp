#include "gaussbm/bm_inequality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "gaussbm/error.hpp"
#include "gaussbm/spectrum.hpp"

namespace gaussbm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double lerp(double x0, double x1, double t) { return (1.0 - t) * x0 + t * x1; }

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn) {
  const auto workers =
      static_cast<std::size_t>(std::clamp(jobs, 1, 64));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

using PointFn = std::function<SweepRow(Dimension, double)>;

SweepTable run_sweep(const std::vector<int>& n_list, const std::vector<double>& R_grid,
                     std::vector<std::string> extra_columns, const PointFn& point,
                     int jobs) {
  std::vector<Dimension> dims;
  for (int n : n_list) dims.emplace_back(n);
  SweepTable table{std::move(extra_columns), {}};
  table.rows.resize(dims.size() * R_grid.size());
  const std::size_t extras = table.extra_columns.size();
  parallel_for(table.rows.size(), jobs, [&](std::size_t i) {
    const Dimension n = dims[i / R_grid.size()];
    const double R = R_grid[i % R_grid.size()];
    try {
      table.rows[i] = point(n, R);
    } catch (const Error& e) {
      table.rows[i] = {n.value(), R, kNaN, kNaN, std::vector<double>(extras, kNaN),
                       std::string(error_code_name(e.code())) + ": " + e.what()};
    }
  });
  return table;
}

double transform_slope(const Transform& tr, double x) {
  switch (tr.kind()) {
    case Transform::Kind::Identity: return 1.0;
    case Transform::Kind::Power:
      return std::fabs(tr.exponent()) * std::pow(x, tr.exponent() - 1.0);
    case Transform::Kind::Log: return 1.0 / x;
  }
  return 1.0;
}

double apply_power(const Transform& tr, double x) {
  if (tr.kind() == Transform::Kind::Identity) return x;
  if (!(x > 0.0)) {
    fail(ErrorCode::Transform, "power transform needs a positive value");
  }
  return std::pow(x, tr.exponent());
}

}  // namespace

Transform Transform::power(double exponent) {
  if (!std::isfinite(exponent) || exponent == 0.0) {
    fail(ErrorCode::Transform, "power exponent must be finite and nonzero");
  }
  return Transform(Kind::Power, exponent);
}

std::string Transform::name() const {
  switch (kind_) {
    case Kind::Identity: return "identity";
    case Kind::Power: return "power";
    case Kind::Log: return "log";
  }
  return "unknown";
}

bool BmReport::holds(double tol) const {
  return direction == Direction::Convexity ? deficit <= tol : deficit >= -tol;
}

Domain minkowski_combine(const Domain& d0, const Domain& d1, double t) {
  if (!std::isfinite(t) || t < 0.0 || t > 1.0) {
    fail(ErrorCode::Domain, "Minkowski parameter t must lie in [0, 1]");
  }
  if (d0.index() != d1.index()) {
    fail(ErrorCode::Shape, "Minkowski combination needs two domains of the same kind");
  }
  if (t == 0.0) return d0;
  if (t == 1.0) return d1;
  return std::visit(
      Overloaded{
          [&](const IntervalDomain& a) -> Domain {
            const auto& b = std::get<IntervalDomain>(d1);
            return IntervalDomain{lerp(a.a, b.a, t), lerp(a.b, b.b, t)};
          },
          [&](const BallDomain& a) -> Domain {
            const auto& b = std::get<BallDomain>(d1);
            if (a.n != b.n) fail(ErrorCode::Shape, "balls of different dimension");
            return BallDomain{a.n, lerp(a.R, b.R, t)};
          },
          [&](const HalfSpaceDomain& a) -> Domain {
            const auto& b = std::get<HalfSpaceDomain>(d1);
            if (a.n != b.n) fail(ErrorCode::Shape, "half-spaces of different dimension");
            return HalfSpaceDomain{a.n, lerp(a.s, b.s, t)};
          },
      },
      d0);
}

NumResult evaluate_functional(Functional functional, const Domain& dom,
                              const QuadConfig& cfg) {
  if (functional == Functional::Eigenvalue) {
    const auto* ball = std::get_if<BallDomain>(&dom);
    if (ball == nullptr) {
      fail(ErrorCode::Shape, "the eigenvalue is only available on balls");
    }
    const EigenResult e = eigen_ball(ball->n, ball->R);
    return {e.lambda, e.bracket.second - e.bracket.first};
  }
  return std::visit(
      Overloaded{
          [&](const IntervalDomain& d) { return torsion_interval(d, cfg); },
          [&](const BallDomain& d) { return torsion_ball(d.n, d.R, cfg); },
          [&](const HalfSpaceDomain& d) { return torsion_halfspace(d, cfg); },
      },
      dom);
}

BmReport check_bm(Functional functional, const Domain& d0, const Domain& d1,
                  double t, const Transform& transform, Direction direction,
                  const QuadConfig& cfg) {
  const Domain dt = minkowski_combine(d0, d1, t);
  const NumResult v0 = evaluate_functional(functional, d0, cfg);
  const NumResult v1 = evaluate_functional(functional, d1, cfg);
  const NumResult vt = evaluate_functional(functional, dt, cfg);

  BmReport r{t, v0.value, v1.value, vt.value, transform, direction, 0.0, 0.0, 0.0, 0.0};
  if (transform.kind() == Transform::Kind::Log) {
    if (!(v0.value > 0.0 && v1.value > 0.0 && vt.value > 0.0)) {
      fail(ErrorCode::Transform, "log transform needs positive values");
    }
    r.lhs = vt.value;
    r.rhs = std::pow(v0.value, 1.0 - t) * std::pow(v1.value, t);
    r.err = vt.err +
            r.rhs * ((1.0 - t) * v0.err / v0.value + t * v1.err / v1.value);
  } else {
    r.lhs = apply_power(transform, vt.value);
    r.rhs = (1.0 - t) * apply_power(transform, v0.value) +
            t * apply_power(transform, v1.value);
    r.err = transform_slope(transform, vt.value) * vt.err +
            (1.0 - t) * transform_slope(transform, v0.value) * v0.err +
            t * transform_slope(transform, v1.value) * v1.err;
  }
  r.deficit = r.lhs - r.rhs;
  r.err += 4.0 * std::numeric_limits<double>::epsilon() *
           (std::fabs(r.lhs) + std::fabs(r.rhs));
  return r;
}

std::vector<ReproRow> reproduce_counterexamples(const QuadConfig& cfg) {
  std::vector<ReproRow> rows;
  auto run = [&](ReproRow row, const std::function<void(ReproRow&)>& compute) {
    try {
      compute(row);
      const double diff = row.relative
                              ? std::fabs(row.computed / row.reference - 1.0)
                              : std::fabs(row.computed - row.reference);
      row.discrepancy = diff;
      row.ok = diff <= row.tolerance;
    } catch (const Error& e) {
      row.computed = kNaN;
      row.discrepancy = kNaN;
      row.ok = false;
      row.error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    rows.push_back(std::move(row));
  };
  auto make_row = [](const char* name, const char* description, double reference,
                     double tolerance) {
    ReproRow row;
    row.name = name;
    row.description = description;
    row.reference = reference;
    row.tolerance = tolerance;
    return row;
  };
  auto bm_row = [&](const char* name, const char* description, double reference,
                    double tolerance, Functional functional, Domain d0, Domain d1,
                    double t, Transform tr, Direction dir) {
    run(make_row(name, description, reference, tolerance), [=, &cfg](ReproRow& row) {
          row.report = check_bm(functional, d0, d1, t, tr, dir, cfg);
          row.computed = row.report->deficit;
        });
  };
  auto f_row = [&](const char* name, const char* description, int n, double R,
                   double reference) {
    run(make_row(name, description, reference, 1e-3), [=, &cfg](ReproRow& row) {
      row.computed = f_exponent_gap(Dimension(n), R, cfg).value;
    });
  };
  auto eigen_row = [&](const char* name, const char* description, double R,
                       double reference, double rel_tol) {
    ReproRow row = make_row(name, description, reference, rel_tol);
    row.relative = true;
    run(row, [=](ReproRow& r) { r.computed = eigen_ball(Dimension(2), R).lambda; });
  };

  bm_row("Ex3.1", "T(Omega_t) - T0/2 - T1/2, [-1,1] and [-2,0], t=1/2",
         0.024229258576, 1e-9, Functional::Torsion, IntervalDomain{-1.0, 1.0},
         IntervalDomain{-2.0, 0.0}, 0.5, Transform::identity(), Direction::Convexity);
  bm_row("Ex3.2a", "T(Omega_t) - T0^(1-t) T1^t, [-1,1] and [-3,3], t=3/4",
         -0.296068463159, 1e-9, Functional::Torsion, IntervalDomain{-1.0, 1.0},
         IntervalDomain{-3.0, 3.0}, 0.75, Transform::log(), Direction::Convexity);
  bm_row("Ex3.2b", "T(Omega_t) - T0^(1-t) T1^t, [-1/2,1/2] and [-1,1], t=1/2",
         0.0184327921054, 1e-9, Functional::Torsion, IntervalDomain{-0.5, 0.5},
         IntervalDomain{-1.0, 1.0}, 0.5, Transform::log(), Direction::Convexity);
  f_row("Ex3.3a", "f(3, 1)", 3, 1.0, -0.019);
  f_row("Ex3.3b", "f(3, 2)", 3, 2.0, 0.248);
  eigen_row("Eig.B4", "lambda(B_4), n=2", 4.0, 0.0045931899, 1e-6);
  eigen_row("Eig.B5", "lambda(B_5), n=2", 5.0, 0.0000848928, 1e-5);
  eigen_row("Eig.B6", "lambda(B_6), n=2", 6.0, 0.0000005157, 1e-3);
  bm_row("Eig", "lambda_t^(-1/2) - lambda0^(-1/2)/2 - lambda1^(-1/2)/2, B_4 and B_6, n=2",
         -595.0, 1.0, Functional::Eigenvalue, BallDomain{Dimension(2), 4.0},
         BallDomain{Dimension(2), 6.0}, 0.5, Transform::power(-0.5),
         Direction::Concavity);
  return rows;
}

SweepTable sweep_f(const std::vector<int>& n_list, const std::vector<double>& R_grid,
                   const QuadConfig& cfg, int jobs) {
  return run_sweep(
      n_list, R_grid, {},
      [&cfg](Dimension n, double R) {
        const NumResult f = f_exponent_gap(n, R, cfg);
        return SweepRow{n.value(), R, f.value, f.err, {}, {}};
      },
      jobs);
}

SweepTable sweep_alpha(const std::vector<int>& n_list,
                       const std::vector<double>& R_grid, const QuadConfig& cfg,
                       int jobs) {
  return run_sweep(
      n_list, R_grid, {"torsion_path", "diff"},
      [&cfg](Dimension n, double R) {
        const AlphaResult a = alpha_n(n, R, cfg);
        return SweepRow{n.value(), R, a.value, a.err,
                        {a.torsion_path, a.value - a.torsion_path}, {}};
      },
      jobs);
}

AlphaSupremum alpha_sup_estimate(Dimension n, const std::vector<double>& R_grid,
                                 const QuadConfig& cfg) {
  if (R_grid.empty()) fail(ErrorCode::Domain, "alpha_sup_estimate needs a grid");
  std::vector<double> grid = R_grid;
  std::sort(grid.begin(), grid.end());
  if (!(grid.front() > 0.0)) fail(ErrorCode::Domain, "grid radii must be > 0");

  auto alpha = [&](double R) { return alpha_n(n, R, cfg).value; };
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = alpha(grid[i]);
    if (a > best_value) {
      best_value = a;
      best = i;
    }
  }
  if (grid.size() == 1) return {best_value, grid[best]};

  double lo = best == 0 ? grid[0] * 1e-3 : grid[best - 1];
  double hi = best + 1 == grid.size() ? grid[best] : grid[best + 1];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = alpha(x1);
  double f2 = alpha(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-10 * hi; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = alpha(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = alpha(x1);
    }
  }
  if (f1 > best_value) return {f1, x1};
  if (f2 > best_value) return {f2, x2};
  return {best_value, grid[best]};
}

std::vector<double> radius_grid(double rmin, double rmax, double step) {
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(rmin) ||
      !std::isfinite(rmax) || !(rmin > 0.0)) {
    fail(ErrorCode::Domain, "radius grid needs rmin > 0 and step > 0");
  }
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double R = rmin + static_cast<double>(k) * step;
    if (R > rmax + 1e-9 * step) break;
    grid.push_back(R);
  }
  return grid;
}

}  // namespace gaussbm
