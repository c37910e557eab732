#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gaussbm/quadrature.hpp"
#include "gaussbm/torsion.hpp"

namespace gaussbm {

using Domain = std::variant<IntervalDomain, BallDomain, HalfSpaceDomain>;

enum class Functional { Torsion, Eigenvalue };

/// Monotone reparametrisation applied before comparing along a Minkowski
/// segment. Log compares value_t with the geometric mean value0^{1-t} value1^t.
class Transform {
 public:
  enum class Kind { Identity, Power, Log };

  static Transform identity() { return Transform(Kind::Identity, 1.0); }
  static Transform power(double exponent);
  static Transform log() { return Transform(Kind::Log, 0.0); }

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  std::string name() const;

 private:
  Transform(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}
  Kind kind_;
  double exponent_;
};

enum class Direction { Convexity, Concavity };

/// deficit = lhs - rhs. deficit <= 0 certifies the convexity form
/// F(Omega_t) <= combination; deficit >= 0 certifies concavity.
struct BmReport {
  double t;
  double value0;
  double value1;
  double value_t;
  Transform transform;
  Direction direction;
  double lhs;
  double rhs;
  double deficit;
  double err;

  /// True when the deficit does not contradict `direction` by more than tol.
  bool holds(double tol) const;
};

Domain minkowski_combine(const Domain& d0, const Domain& d1, double t);

/// Torsion on any variant, Eigenvalue on balls only.
NumResult evaluate_functional(Functional functional, const Domain& dom,
                              const QuadConfig& cfg = {});

BmReport check_bm(Functional functional, const Domain& d0, const Domain& d1,
                  double t, const Transform& transform, Direction direction,
                  const QuadConfig& cfg = {});

struct ReproRow {
  std::string name;
  std::string description;
  double computed = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool relative = false;  // tolerance applies to |computed/reference - 1|
  double discrepancy = 0.0;
  bool ok = false;
  std::string error;
  std::optional<BmReport> report;
};

/// Recomputes every published counterexample value. A failing row never
/// stops the others.
std::vector<ReproRow> reproduce_counterexamples(const QuadConfig& cfg = {});

struct SweepRow {
  int n;
  double R;
  double value;
  double err;
  std::vector<double> extras;
  std::string error;  // non-empty when the point failed; value/err are NaN
};

struct SweepTable {
  std::vector<std::string> extra_columns;
  std::vector<SweepRow> rows;
};

/// f(n, R) over n_list x R_grid in n-major, R-minor order. `jobs` > 1 fans
/// grid points out to worker threads; row order is unaffected.
SweepTable sweep_f(const std::vector<int>& n_list, const std::vector<double>& R_grid,
                   const QuadConfig& cfg = {}, int jobs = 1);

/// alpha_n(R) from both paths; extra columns torsion_path and diff.
SweepTable sweep_alpha(const std::vector<int>& n_list,
                       const std::vector<double>& R_grid,
                       const QuadConfig& cfg = {}, int jobs = 1);

struct AlphaSupremum {
  double value;
  double argmax;
};

/// sup_R alpha_n(R) over the grid, refined by golden-section search around
/// the grid maximiser.
AlphaSupremum alpha_sup_estimate(Dimension n, const std::vector<double>& R_grid,
                                 const QuadConfig& cfg = {});

/// step, 2 step, ... up to rmax (inclusive within rounding); starts at rmin
/// when given.
std::vector<double> radius_grid(double rmin, double rmax, double step);

}  // namespace gaussbm
