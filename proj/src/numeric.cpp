#include "gft/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "gft/errors.hpp"

namespace gft {

namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / kPi);

double weight_factor(double t, double sigma, const WeightSpec& w) {
  double f = (w.q == 1.0) ? std::exp(-sigma * t) : std::exp(-sigma * std::pow(t, w.q));
  if (w.p != 0.0) f *= std::pow(t, w.p);
  return f;
}

// Smallest T >= 1 (up to a cap) where the declared envelope times T drops below abs_tol.
double truncation_point(const TailBound& tb, double sigma, const WeightSpec& w, double abs_tol) {
  for (double T = 1.0; T < 1e9; T *= 1.25) {
    const double env =
        tb.amplitude * std::pow(T, w.p) * std::exp(tb.growth_rate * T - sigma * std::pow(T, w.q)) * T;
    if (env < abs_tol) return T;
  }
  throw ConstraintError("declared growth envelope is not damped by the chosen sigma");
}

// Integral over [0, inf) of an integrand oscillating at angular rate `omega`.
QuadResult half_line(const Integrand& g, double omega, const QuadratureConfig& cfg, double truncate_at) {
  if (std::isfinite(truncate_at)) {
    const double cap = omega != 0.0 ? kPi / (4.0 * std::abs(omega)) : INFINITY;
    return integrate_half_line(g, cfg, cap, truncate_at);
  }
  if (omega != 0.0) return integrate_oscillatory_half_line(g, kPi / std::abs(omega), cfg);
  return integrate_half_line(g, cfg);
}

double truncation_for(const QuadratureConfig& cfg, double sigma, const WeightSpec& w) {
  return cfg.tail_bound ? truncation_point(*cfg.tail_bound, sigma, w, cfg.abs_tol) : INFINITY;
}

cplx delta_contribution(const SignalSpec& x, const ComplexFrequency& f, const WeightSpec& w) {
  cplx sum = 0.0;
  for (const auto& term : x.terms()) {
    if (const auto* d = std::get_if<atom::DiracDelta>(&term.atom)) {
      const double at = std::abs(d->t0);
      sum += term.coef * std::pow(at, w.p) * std::exp(-f.sigma() * std::pow(at, w.q)) *
             std::exp(-kJ * f.omega() * d->t0);
    }
  }
  return sum;
}

TimeFunction regular_part(const SignalSpec& x) {
  return [x](double t) { return evaluate_regular(x, t); };
}

}  // namespace

void WeightSpec::validate() const {
  if (!(p >= 0) || !std::isfinite(p)) throw ConstraintError("weight exponent p must be >= 0");
  if (!(q >= 0) || !std::isfinite(q)) throw ConstraintError("damping exponent q must be >= 0");
}

cplx gft_forward(const TimeFunction& x, const ComplexFrequency& f, const WeightSpec& w,
                 const QuadratureConfig& cfg) {
  w.validate();
  cfg.validate();
  const double sigma = f.sigma();
  const double omega = f.omega();
  // Both half-lines folded onto [0, inf) so odd singularities at the origin cancel.
  Integrand g = [&](double t) {
    const cplx rot = std::exp(-kJ * (omega * t));
    return (x(t) * rot + x(-t) * std::conj(rot)) * weight_factor(t, sigma, w);
  };
  return half_line(g, omega, cfg, truncation_for(cfg, sigma, w)).value;
}

cplx gft_forward(const SampledSignal& x, const ComplexFrequency& f, const WeightSpec& w,
                 const QuadratureConfig& cfg) {
  w.validate();
  cfg.validate();
  const double sigma = f.sigma();
  const double omega = f.omega();
  Integrand g = [&](double t) {
    return x(t) * weight_factor(std::abs(t), sigma, w) * std::exp(-kJ * (omega * t));
  };
  double cap = x.dt();
  if (omega != 0.0) cap = std::min(cap, kPi / (4.0 * std::abs(omega)));
  const double a = x.t_start();
  const double b = x.t_end();
  if (a < 0 && b > 0) return integrate(g, a, 0.0, cfg, cap).value + integrate(g, 0.0, b, cfg, cap).value;
  return integrate(g, a, b, cfg, cap).value;
}

cplx gft_forward(const SignalSpec& x, const ComplexFrequency& f, const WeightSpec& w,
                 const QuadratureConfig& cfg) {
  return gft_forward(regular_part(x), f, w, cfg) + delta_contribution(x, f, w);
}

SplitValue clt_lt_split(const TimeFunction& x, const ComplexFrequency& f, const QuadratureConfig& cfg) {
  cfg.validate();
  const double sigma = f.sigma();
  const double omega = f.omega();
  const double T = truncation_for(cfg, sigma, WeightSpec{});
  Integrand lt = [&](double t) { return x(t) * std::exp(-f.s() * t); };
  Integrand clt = [&](double t) { return x(-t) * std::exp(-f.s_conj() * t); };
  return {half_line(clt, omega, cfg, T).value, half_line(lt, omega, cfg, T).value};
}

SplitValue clt_lt_split(const SignalSpec& x, const ComplexFrequency& f, const QuadratureConfig& cfg) {
  SplitValue v = clt_lt_split(regular_part(x), f, cfg);
  for (const auto& term : x.terms()) {
    if (const auto* d = std::get_if<atom::DiracDelta>(&term.atom)) {
      if (d->t0 >= 0)
        v.lt += term.coef * std::exp(-f.s() * d->t0);
      else
        v.clt += term.coef * std::exp(f.s_conj() * d->t0);
    }
  }
  return v;
}

cplx igft_reconstruct(const SpectrumEvaluator& spectrum, double sigma, double t, const QuadratureConfig& cfg) {
  cfg.validate();
  Integrand g = [&](double w) {
    const cplx rot = std::exp(kJ * (w * t));
    return spectrum(sigma, w) * rot + spectrum(sigma, -w) * std::conj(rot);
  };
  QuadResult r = (t != 0.0) ? integrate_oscillatory_half_line(g, kPi / std::abs(t), cfg)
                            : integrate_half_line(g, cfg);
  return r.value * std::exp(sigma * std::abs(t)) / (2.0 * kPi);
}

OriginSynthesis synthesize_at_origin(const std::function<cplx(cplx)>& lt_part,
                                     const std::function<cplx(cplx)>& clt_part, double sigma,
                                     const QuadratureConfig& cfg, double tol) {
  Integrand lt = [&](double w) { return lt_part(cplx(sigma, w)) + lt_part(cplx(sigma, -w)); };
  Integrand clt = [&](double w) { return clt_part(cplx(sigma, -w)) + clt_part(cplx(sigma, w)); };
  OriginSynthesis o;
  o.from_lt = integrate_half_line(lt, cfg).value / (2.0 * kPi);
  o.from_clt = integrate_half_line(clt, cfg).value / (2.0 * kPi);
  o.total = o.from_lt + o.from_clt;
  o.halves_agree = std::abs(o.from_lt - o.from_clt) <= tol * std::max(1.0, std::abs(o.total));
  return o;
}

cplx ft_limit_numeric(const TimeFunction& x, double omega, const LadderConfig& ladder,
                      const QuadratureConfig& cfg, const WeightSpec& w) {
  if (!(ladder.sigma0 > 0)) throw ConstraintError("ladder sigma0 must be > 0");
  if (ladder.depth < 2) throw ConstraintError("ladder depth must be >= 2");
  std::vector<double> h;
  std::vector<cplx> v;
  for (int k = 0; k < ladder.depth; ++k) {
    const double sigma = ladder.sigma0 * std::ldexp(1.0, -k);
    h.push_back(sigma);
    v.push_back(gft_forward(x, ComplexFrequency(sigma, omega), w, cfg));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(std::abs(v[i]) > std::abs(v[i - 1]))) monotone = false;
  if (monotone && std::abs(v.back()) > 10.0 * std::abs(v.front()))
    throw DivergenceError("transform grows without bound as sigma -> 0; the limit is distributional");
  const std::size_t n = std::min<std::size_t>(std::max(2, ladder.richardson_terms), v.size());
  std::vector<double> hh(h.end() - static_cast<long>(n), h.end());
  std::vector<cplx> vv(v.end() - static_cast<long>(n), v.end());
  return polynomial_extrapolate(hh, vv);
}

cplx ft_limit_numeric(const SignalSpec& x, double omega, const LadderConfig& ladder,
                      const QuadratureConfig& cfg, const WeightSpec& w) {
  // Deltas do not depend on sigma when p = 0, so only the regular part is extrapolated.
  cplx deltas = delta_contribution(x, ComplexFrequency(0.0, omega), w);
  return ft_limit_numeric(regular_part(x), omega, ladder, cfg, w) + deltas;
}

cplx periodic_gft(const PeriodicSignal& px, const ComplexFrequency& f, const QuadratureConfig& cfg) {
  if (!(f.sigma() > 0)) throw RegionError("periodic transform requires sigma > 0");
  const double T = px.period();
  const cplx s = f.s();
  const cplx sc = f.s_conj();
  const auto& xt = px.one_period();
  double cap = T / 4.0;
  if (f.omega() != 0.0) cap = std::min(cap, kPi / (4.0 * std::abs(f.omega())));
  const cplx lt_int = integrate([&](double t) { return xt(t) * std::exp(-s * t); }, 0.0, T, cfg, cap).value;
  const cplx clt_int = integrate([&](double t) { return xt(t) * std::exp(sc * t); }, 0.0, T, cfg, cap).value;
  const cplx eT = std::exp(-sc * T);
  return eT / (1.0 - eT) * clt_int + lt_int / (1.0 - std::exp(-s * T));
}

cplx md_gft_2d(const PlaneFunction& g, double sigma, double omega1, double omega2, const QuadratureConfig& cfg) {
  QuadratureConfig inner = cfg;
  inner.rel_tol = cfg.rel_tol * 0.1;
  inner.abs_tol = cfg.abs_tol * 0.1;
  TimeFunction row = [&](double x1) {
    return gft_forward([&](double x2) { return g(x1, x2); }, ComplexFrequency(sigma, omega2), WeightSpec{}, inner);
  };
  return gft_forward(row, ComplexFrequency(sigma, omega1), WeightSpec{}, cfg);
}

cplx damped_fct(const TimeFunction& x, double sigma, double omega, const QuadratureConfig& cfg) {
  if (!(sigma > 0)) throw RegionError("damped cosine transform requires sigma > 0");
  if (!(omega >= 0)) throw ConstraintError("cosine transform frequency must be >= 0");
  Integrand g = [&](double t) { return x(t) * std::exp(-sigma * t) * std::cos(omega * t); };
  return kSqrt2OverPi * half_line(g, omega, cfg, INFINITY).value;
}

cplx damped_ifct(const CosineSpectrum& xc, double sigma, double t, const QuadratureConfig& cfg) {
  if (!(sigma > 0)) throw RegionError("damped cosine transform requires sigma > 0");
  if (!(t >= 0)) throw ConstraintError("inverse cosine transform is defined for t >= 0");
  Integrand g = [&](double w) { return xc(w) * std::cos(w * t); };
  return kSqrt2OverPi * std::exp(sigma * t) * half_line(g, t, cfg, INFINITY).value;
}

namespace {

double compute_admissibility(const TimeFunction& psi, double support) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  cfg.abs_tol = 1e-13;
  auto spectrum = [&](double w) {
    double cap = support / 8.0;
    if (w != 0.0) cap = std::min(cap, kPi / (4.0 * std::abs(w)));
    return integrate([&](double t) { return psi(t) * std::exp(-kJ * (w * t)); }, -support, support, cfg, cap)
        .value;
  };
  double scale = integrate([&](double t) { return cplx(std::abs(psi(t))); }, -support, support, cfg,
                           support / 8.0)
                     .value.real();
  if (!(scale > 0)) throw ConstraintError("mother wavelet is identically zero");
  if (std::abs(spectrum(0.0)) > 1e-8 * scale)
    throw ConstraintError("mother wavelet has nonzero mean; admissibility constant is infinite");
  QuadratureConfig outer;
  outer.rel_tol = 1e-8;
  outer.abs_tol = 1e-12;
  Integrand g = [&](double w) {
    const double a = std::norm(spectrum(w)) + std::norm(spectrum(-w));
    return cplx(a / w);
  };
  const double c = integrate_half_line(g, outer).value.real();
  if (!(c > 0) || !std::isfinite(c)) throw ConstraintError("wavelet admissibility constant must be finite and > 0");
  return c;
}

}  // namespace

WaveletSpec::WaveletSpec(TimeFunction mother, double support)
    : mother_(std::move(mother)), support_(support) {
  if (!(support > 0)) throw ConstraintError("wavelet support must be > 0");
  c_psi_ = std::make_shared<const double>(compute_admissibility(mother_, support_));
}

WaveletSpec::WaveletSpec(TimeFunction mother, double support, double admissibility)
    : mother_(std::move(mother)), support_(support) {
  if (!(support > 0)) throw ConstraintError("wavelet support must be > 0");
  if (!(admissibility > 0) || !std::isfinite(admissibility))
    throw ConstraintError("wavelet admissibility constant must be finite and > 0");
  c_psi_ = std::make_shared<const double>(admissibility);
}

double WaveletSpec::admissibility() const { return *c_psi_; }

WaveletSpec mexican_hat() {
  return WaveletSpec([](double t) { return cplx((1.0 - t * t) * std::exp(-0.5 * t * t)); }, 12.0);
}

cplx damped_cwt(const TimeFunction& x, double sigma, double a, double b, const WaveletSpec& psi,
                const QuadratureConfig& cfg) {
  if (a == 0.0) return 0.0;
  const double scale = 1.0 / std::sqrt(std::abs(a));
  Integrand g = [&](double t) {
    return x(t) * std::exp(-sigma * std::abs(t)) * std::conj(psi((t - b) / a)) * scale;
  };
  const double lo = b - psi.support() * std::abs(a);
  const double hi = b + psi.support() * std::abs(a);
  const double cap = std::abs(a) / 2.0;
  if (lo < 0 && hi > 0) return integrate(g, lo, 0.0, cfg, cap).value + integrate(g, 0.0, hi, cfg, cap).value;
  return integrate(g, lo, hi, cfg, cap).value;
}

cplx damped_icwt(const CwtCoefficients& coeffs, double sigma, double t, const WaveletSpec& psi,
                 const CwtGrid& grid) {
  if (!(grid.a_min > 0) || !(grid.a_max > grid.a_min) || grid.a_points < 2 || grid.b_points < 2 ||
      !(grid.b_halfwidth > 0))
    throw ConstraintError("invalid wavelet reconstruction grid");
  const double la = std::log(grid.a_min);
  const double lb = std::log(grid.a_max);
  const double dla = (lb - la) / (grid.a_points - 1);
  cplx total = 0.0;
  for (int i = 0; i < grid.a_points; ++i) {
    const double mag = std::exp(la + dla * i);
    const double wa = (i == 0 || i == grid.a_points - 1) ? 0.5 : 1.0;
    const double half = grid.b_halfwidth * mag;
    const double db = 2.0 * half / (grid.b_points - 1);
    for (double a : {mag, -mag}) {
      cplx inner = 0.0;
      for (int j = 0; j < grid.b_points; ++j) {
        const double b = t - half + db * j;
        const double wb = (j == 0 || j == grid.b_points - 1) ? 0.5 : 1.0;
        inner += wb * coeffs(a, b) * psi((t - b) / a) / std::sqrt(mag);
      }
      // da / a^2 = d(ln|a|) / |a|
      total += wa * dla * inner * db / mag;
    }
  }
  return std::exp(sigma * std::abs(t)) * total / psi.admissibility();
}

}  // namespace gft
