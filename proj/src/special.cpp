#include "gft/special.hpp"

#include <array>
#include <cmath>

#include "gft/errors.hpp"
#include "gft/quadrature.hpp"

namespace gft {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_integer(cplx s, double& n) {
  if (s.imag() != 0.0) return false;
  n = std::round(s.real());
  return n == s.real();
}

cplx lanczos(cplx z) {
  // Valid for Re{z} >= 1/2.
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx lower_series(cplx s, double x) {
  cplx term = 1.0 / s;
  cplx sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (s + static_cast<double>(n));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) return std::pow(cplx(x), s) * std::exp(-x) * sum;
  }
  throw ConvergenceError("lower incomplete gamma series did not converge");
}

// Modified Lentz evaluation of the Legendre continued fraction for Gamma(a, x).
bool upper_continued_fraction(double a, double x, double& out) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 200000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) {
      out = std::exp(-x + a * std::log(x)) * h;
      return true;
    }
  }
  return false;
}

cplx upper_quadrature(cplx s, double x) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-300;
  const cplx sm1 = s - 1.0;
  auto f = [&](double r) { return std::exp(-x - r + sm1 * std::log(x + r)); };
  return integrate_half_line(f, cfg).value;
}

}  // namespace

cplx gamma_fn(cplx s) {
  double n = 0.0;
  if (is_integer(s, n)) {
    if (n <= 0) throw PoleError("gamma has a pole at s = " + std::to_string(static_cast<long>(n)));
    if (n <= 170) {
      double f = 1.0;
      for (int k = 2; k < static_cast<int>(n); ++k) f *= k;
      return f;
    }
  }
  if (s.real() < 0.5) return kPi / (std::sin(kPi * s) * lanczos(1.0 - s));
  return lanczos(s);
}

cplx incomplete_gamma(GammaKind kind, cplx s, double x) {
  if (!(x > 0) || !std::isfinite(x)) throw ConstraintError("incomplete gamma needs a finite x > 0");
  if (kind == GammaKind::Lower) {
    if (!(s.real() > 0)) throw RegionError("lower incomplete gamma needs Re{s} > 0");
    return lower_series(s, x);
  }
  if (s.imag() == 0.0) {
    double v = 0.0;
    if (upper_continued_fraction(s.real(), x, v)) return v;
  }
  return upper_quadrature(s, x);
}

cplx zeta(cplx s) {
  if (s == cplx(1.0)) throw PoleError("zeta has a pole at s = 1");
  // B_2k / (2k)!
  static constexpr std::array<double, 10> kB = {
      1.0 / 6 / 2,
      -1.0 / 30 / 24,
      1.0 / 42 / 720,
      -1.0 / 30 / 40320,
      5.0 / 66 / 3628800,
      -691.0 / 2730 / 479001600,
      7.0 / 6 / 87178291200.0,
      -3617.0 / 510 / 20922789888000.0,
      43867.0 / 798 / 6402373705728000.0,
      -174611.0 / 330 / 2432902008176640000.0};
  const int N = 12 + static_cast<int>(std::abs(s));
  cplx sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::pow(static_cast<double>(n), -s);
  const double Nd = N;
  sum += std::pow(Nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(Nd, -s);
  cplx rising = s;  // s (s+1) ... (s+2k-2)
  for (std::size_t k = 1; k <= kB.size(); ++k) {
    const cplx term = kB[k - 1] * rising * std::pow(Nd, -s - static_cast<double>(2 * k - 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
  }
  return sum;
}

cplx generalized_gamma(cplx s) {
  double n = 0.0;
  if (is_integer(s, n)) {
    const long k = static_cast<long>(n);
    if (k % 2 == 0) return 0.0;
    if (k < 0) throw PoleError("generalized gamma has a pole at s = " + std::to_string(k));
    return 2.0 * gamma_fn(s);
  }
  return (std::exp(kJ * kPi * (s - 1.0)) + 1.0) * gamma_fn(s);
}

}  // namespace gft
