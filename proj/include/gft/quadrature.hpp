#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace gft {

using Integrand = std::function<std::complex<double>(double)>;

/// Known growth envelope |x(t)| <= amplitude * exp(growth_rate * |t|).
struct TailBound {
  double amplitude = 1.0;
  double growth_rate = 0.0;
};

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 20000;
  std::optional<TailBound> tail_bound;

  /// Throws ConstraintError if tolerances are not positive.
  void validate() const;
};

struct QuadResult {
  std::complex<double> value;
  double error = 0.0;
  /// Integral of |f|, useful for tail and divergence heuristics.
  double l1 = 0.0;
  long evaluations = 0;
};

/// Adaptive 15/7-point Gauss-Kronrod on [a, b]. Panels never exceed
/// `max_panel_width`; the worst panel is bisected until the summed error
/// meets max(abs_tol, rel_tol |I|).
QuadResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg,
                     double max_panel_width = std::numeric_limits<double>::infinity());

/// Integral over [0, inf). The first panel [0, first_panel] uses t = u^2 so
/// integrable endpoint singularities are tamed; later panels double in length
/// until one contributes less than the tolerance or `truncate_at` is reached.
QuadResult integrate_half_line(const Integrand& f, const QuadratureConfig& cfg,
                               double max_panel_width = std::numeric_limits<double>::infinity(),
                               double truncate_at = std::numeric_limits<double>::infinity(),
                               double first_panel = 1.0);

/// Integral over [0, inf) of an integrand oscillating with half-period
/// `half_period`. Panel sums are accelerated with the Wynn epsilon algorithm,
/// which also assigns the Abel/Cesaro value to non-decaying oscillations.
QuadResult integrate_oscillatory_half_line(const Integrand& f, double half_period,
                                           const QuadratureConfig& cfg, int max_panels = 4000);

/// Wynn epsilon extrapolation of a sequence of partial sums.
std::complex<double> wynn_epsilon(const std::vector<std::complex<double>>& partial_sums);

/// Polynomial (Neville) extrapolation to h = 0 of samples f(h_i).
std::complex<double> polynomial_extrapolate(const std::vector<double>& h,
                                            const std::vector<std::complex<double>>& f);

/// Rational (Bulirsch-Stoer) extrapolation to h = 0 of samples f(h_i), h_i decreasing.
std::complex<double> rational_extrapolate(const std::vector<double>& h,
                                          const std::vector<std::complex<double>>& f);

}  // namespace gft
