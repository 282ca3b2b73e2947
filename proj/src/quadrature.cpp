#include "gft/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "gft/errors.hpp"

namespace gft {

namespace {

using cplx = std::complex<double>;

// Kronrod abscissae (non-negative half); odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  cplx value;
  double error;
  double l1;
};

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx kron = fc * kWgk[7];
  cplx gauss = fc * kWg[3];
  double l1 = std::abs(fc) * kWgk[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const cplx f1 = f(c - dx);
    const cplx f2 = f(c + dx);
    kron += (f1 + f2) * kWgk[i];
    l1 += (std::abs(f1) + std::abs(f2)) * kWgk[i];
    if (i % 2 == 1) gauss += (f1 + f2) * kWg[i / 2];
  }
  Panel p{a, b, kron * h, std::abs((kron - gauss) * h), l1 * std::abs(h)};
  if (!finite(p.value)) throw ConvergenceError("non-finite integrand value", 0.0, INFINITY);
  return p;
}

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0)) throw ConstraintError("quadrature tolerances must be > 0");
  if (max_subdivisions < 1) throw ConstraintError("max_subdivisions must be >= 1");
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg,
                     double max_panel_width) {
  cfg.validate();
  if (a == b) return {};
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  long n0 = 1;
  if (std::isfinite(max_panel_width) && max_panel_width > 0)
    n0 = std::max<long>(1, static_cast<long>(std::ceil((b - a) / max_panel_width)));
  n0 = std::min<long>(n0, 1'000'000);

  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  cplx total = 0.0;
  double err = 0.0;
  double l1 = 0.0;
  long evals = 0;
  for (long i = 0; i < n0; ++i) {
    const double x0 = a + (b - a) * static_cast<double>(i) / static_cast<double>(n0);
    const double x1 = (i + 1 == n0) ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n0);
    Panel p = gauss_kronrod(f, x0, x1);
    evals += 15;
    total += p.value;
    err += p.error;
    l1 += p.l1;
    heap.push(p);
  }

  int splits = 0;
  while (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    if (splits >= cfg.max_subdivisions)
      throw ConvergenceError("adaptive quadrature exceeded max_subdivisions", sign * total, err);
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in double precision; accept its estimate.
      if (heap.size() == 1) break;
      heap.pop();
      err -= worst.error;
      worst.error = 0.0;
      heap.push(worst);
      continue;
    }
    heap.pop();
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    evals += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // Re-sum to limit accumulated rounding in the running total.
  cplx resum = 0.0;
  double err_sum = 0.0;
  while (!heap.empty()) {
    resum += heap.top().value;
    err_sum += heap.top().error;
    heap.pop();
  }
  return {sign * resum, err_sum, l1, evals};
}

QuadResult integrate_half_line(const Integrand& f, const QuadratureConfig& cfg,
                               double max_panel_width, double truncate_at, double first_panel) {
  cfg.validate();
  QuadratureConfig piece_cfg = cfg;
  piece_cfg.abs_tol = cfg.abs_tol / 4.0;

  const double first = std::min(first_panel, truncate_at);
  // t = u^2 on [0, first]; the panel-width cap is applied in u only approximately.
  Integrand g = [&f](double u) { return f(u * u) * (2.0 * u); };
  double u_cap = max_panel_width;
  if (std::isfinite(max_panel_width)) u_cap = max_panel_width / (2.0 * std::sqrt(first) + 1e-300);
  QuadResult r = integrate(g, 0.0, std::sqrt(first), piece_cfg, u_cap);
  cplx total = r.value;
  double err = r.error;
  double l1 = r.l1;
  long evals = r.evaluations;

  double lo = first;
  double prev_mean = INFINITY;
  int growing = 0;
  int small_pieces = 0;
  for (int piece = 0; lo < truncate_at; ++piece) {
    if (piece > 80)
      throw ConvergenceError("half-line integral did not settle (divergent tail?)", total, err);
    const double hi = std::min(2.0 * lo, truncate_at);
    QuadResult p;
    try {
      p = integrate(f, lo, hi, piece_cfg, max_panel_width);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(e.what(), total + e.partial(), err + e.error_estimate());
    }
    total += p.value;
    err += p.error;
    l1 += p.l1;
    evals += p.evaluations;
    const double mean = p.l1 / (hi - lo);
    growing = (mean > prev_mean) ? growing + 1 : 0;
    if (growing >= 10 && p.l1 > 1e3 * std::max(1.0, r.l1))
      throw ConvergenceError("half-line integral appears divergent", total, INFINITY);
    prev_mean = mean;
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)) * 0.25;
    if (p.l1 < tol) {
      if (++small_pieces >= 2) break;
    } else {
      small_pieces = 0;
    }
    lo = hi;
  }
  return {total, err, l1, evals};
}

cplx wynn_epsilon(const std::vector<cplx>& s) {
  const std::size_t n = s.size();
  if (n == 0) return 0.0;
  if (n < 3) return s.back();
  // e[k][j]: column k of the epsilon table; even columns hold estimates.
  std::vector<cplx> prev(n, 0.0);
  std::vector<cplx> cur = s;
  cplx best = s.back();
  double best_delta = std::abs(s[n - 1] - s[n - 2]);
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<cplx> next(n - k);
    bool ok = true;
    for (std::size_t j = 0; j + k < n; ++j) {
      const cplx diff = cur[j + 1] - cur[j];
      if (std::abs(diff) < 1e-300) {
        ok = false;
        break;
      }
      next[j] = prev[j + 1] + 1.0 / diff;
      if (!finite(next[j])) {
        ok = false;
        break;
      }
    }
    if (!ok) break;
    if (k % 2 == 0 && next.size() >= 2) {
      const double delta = std::abs(next[next.size() - 1] - next[next.size() - 2]);
      if (delta <= best_delta) {
        best_delta = delta;
        best = next.back();
      }
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (cur.size() < 2) break;
  }
  return best;
}

QuadResult integrate_oscillatory_half_line(const Integrand& f, double half_period,
                                           const QuadratureConfig& cfg, int max_panels) {
  cfg.validate();
  if (!(half_period > 0) || !std::isfinite(half_period))
    throw ConstraintError("oscillation half-period must be positive and finite");
  QuadratureConfig piece_cfg = cfg;
  piece_cfg.abs_tol = cfg.abs_tol / 8.0;
  // A single GK panel per half-period resolves the kernel; extra splits are adaptive.
  const double cap = half_period / 2.0;

  std::vector<cplx> partial;
  cplx sum = 0.0;
  double l1 = 0.0;
  long evals = 0;
  cplx last_est = 0.0;
  int stable = 0;
  int growing = 0;
  double first_l1 = 0.0;
  double prev_l1 = 0.0;
  const std::size_t window = 40;
  for (int k = 0; k < max_panels; ++k) {
    const double a = half_period * k;
    const double b = half_period * (k + 1);
    QuadResult p;
    if (k == 0) {
      // t = u^2 absorbs integrable singularities at the origin.
      Integrand g = [&f](double u) { return f(u * u) * (2.0 * u); };
      p = integrate(g, 0.0, std::sqrt(b), piece_cfg, cap / (2.0 * std::sqrt(b)));
      first_l1 = p.l1;
    } else {
      p = integrate(f, a, b, piece_cfg, cap);
    }
    sum += p.value;
    l1 += p.l1;
    evals += p.evaluations;
    partial.push_back(sum);
    growing = (k > 0 && p.l1 > prev_l1 * (1.0 + 1e-12)) ? growing + 1 : 0;
    prev_l1 = p.l1;
    if (growing >= 12 && p.l1 > 1e3 * std::max(first_l1, 1e-300))
      throw ConvergenceError("oscillatory integral appears divergent", sum, INFINITY);
    if (k < 6) continue;
    // Extrapolate on a sliding window to keep the table small and stable.
    std::vector<cplx> tail(partial.end() - static_cast<long>(std::min(window, partial.size())),
                           partial.end());
    const cplx est = wynn_epsilon(tail);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(est));
    if (std::abs(est - last_est) < tol) {
      if (++stable >= 3) return {est, std::abs(est - last_est), l1, evals};
    } else {
      stable = 0;
    }
    last_est = est;
  }
  throw ConvergenceError("oscillatory tail did not converge", last_est, INFINITY);
}

cplx polynomial_extrapolate(const std::vector<double>& h, const std::vector<cplx>& f) {
  if (h.size() != f.size() || h.empty()) throw ConstraintError("extrapolation needs matching samples");
  std::vector<cplx> p = f;
  const std::size_t n = h.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = ((0.0 - h[i + m]) * p[i] + (h[i] - 0.0) * p[i + 1]) / (h[i] - h[i + m]);
  return p[0];
}

cplx rational_extrapolate(const std::vector<double>& h, const std::vector<cplx>& f) {
  if (h.size() != f.size() || h.empty()) throw ConstraintError("extrapolation needs matching samples");
  const std::size_t n = h.size();
  std::vector<std::vector<cplx>> t(n, std::vector<cplx>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) t[i][0] = f[i];
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = k; i < n; ++i) {
      const cplx prev2 = k >= 2 ? t[i - 1][k - 2] : cplx(0.0);
      const cplx d = t[i][k - 1] - t[i - 1][k - 1];
      const cplx denom_inner = t[i][k - 1] - prev2;
      if (std::abs(d) == 0.0 || std::abs(denom_inner) == 0.0) {
        t[i][k] = t[i][k - 1];
        continue;
      }
      const cplx den = (h[i - k] / h[i]) * (1.0 - d / denom_inner) - 1.0;
      t[i][k] = t[i][k - 1] + d / den;
    }
  }
  return t[n - 1][n - 1];
}

}  // namespace gft
