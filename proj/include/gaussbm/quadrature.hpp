#pragma once

#include <functional>
#include <optional>
#include <type_traits>
#include <utility>

#include "gaussbm/special_functions.hpp"

namespace gaussbm {

struct QuadConfig {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_subdivisions = 2000;

  /// Throws Domain when a field is non-positive or non-finite.
  void validate() const;
};

/// Function of one real variable plus an optional power-law exponent p with
/// f(t) ~ (t - a)^p at the left endpoint. When present, the first panel is
/// integrated in u with t = a + u^2.
struct Integrand {
  std::function<double(double)> f;
  std::optional<double> left_exponent;

  template <typename F>
    requires std::is_invocable_r_v<double, F&, double>
  Integrand(F&& fn, std::optional<double> exponent = std::nullopt)
      : f(std::forward<F>(fn)), left_exponent(exponent) {}
};

/// Globally adaptive Gauss-Kronrod (7/15) integration over [a, b].
/// Throws Convergence (with best estimate) when the subdivision budget runs
/// out, Evaluation when the integrand returns a non-finite value.
NumResult integrate(const Integrand& f, double a, double b,
                    const QuadConfig& cfg = {});

/// Int_a^inf f via t = a + u / (1 - u). Throws Divergence when samples of
/// |f(t)| t along the tail are not decaying.
NumResult integrate_semi_infinite(const Integrand& f, double a,
                                  const QuadConfig& cfg = {});

}  // namespace gaussbm
