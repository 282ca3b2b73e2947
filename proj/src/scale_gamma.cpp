#include "gft/scale_gamma.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "gft/errors.hpp"
#include "gft/special.hpp"

namespace gft {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt(cplx z) {
  std::ostringstream os;
  os << z;
  return os.str();
}

// integral over [0, inf) of g(t) exp(-v t), a divergent result reported as a region error.
cplx laplace_piece(const std::function<cplx(double)>& g, cplx v, const QuadratureConfig& cfg, const char* side) {
  auto f = [&](double t) {
    const cplx gt = g(t);
    if (gt == cplx(0.0)) return cplx(0.0);
    return gt * std::exp(-v * t);
  };
  try {
    return integrate_half_line(f, cfg).value;
  } catch (const ConvergenceError& e) {
    throw RegionError(std::string(side) + " piece diverges at order " + fmt(v) + " (" + e.what() + ")");
  }
}

// (e^{-cL} / 2 pi) * integral over the line of F(c + j w) e^{-j w L}.
cplx line_inverse(const std::function<cplx(cplx)>& F, double c, double L, const QuadratureConfig& cfg,
                  double& error) {
  auto g = [&](double w) {
    const cplx e = std::exp(cplx(0.0, -w * L));
    return F(cplx(c, w)) * e + F(cplx(c, -w)) * std::conj(e);
  };
  QuadResult r = L == 0.0 ? integrate_half_line(g, cfg) : integrate_oscillatory_half_line(g, kPi / std::abs(L), cfg);
  const double k = std::exp(-c * L) / (2.0 * kPi);
  error = r.error * k;
  return r.value * k;
}

cplx integral_one_to(const TimeFunction& y, cplx order, double a) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  auto f = [&](double tau) { return y(tau) * std::pow(tau, order - 1.0); };
  return integrate(f, 1.0, a, cfg).value;
}

}  // namespace

FstValue evaluate(const MellinPair& pair, const ComplexFrequency& f) {
  return {pair.lower(f.s()), pair.upper(-f.s_conj())};
}

MellinPair fst_catalog(const FstAtom& atom, double abs_tol) {
  using namespace fst;
  return std::visit(
      overloaded{
          [](const Delta& d) -> MellinPair {
            if (!(d.t0 > 0) || !std::isfinite(d.t0)) throw ConstraintError("delta location must be > 0");
            const double t0 = d.t0;
            return {[t0](cplx s) { return t0 <= 1.0 ? std::pow(cplx(t0), s - 1.0) : cplx(0.0); },
                    [t0](cplx u) { return t0 > 1.0 ? std::pow(cplx(t0), u - 1.0) : cplx(0.0); }};
          },
          [](const ExpDecay& e) -> MellinPair {
            if (!(e.a > 0)) throw ConstraintError("decay rate must be > 0");
            const double a = e.a;
            return {[a](cplx s) { return std::pow(cplx(a), -s) * incomplete_gamma(GammaKind::Lower, s, a); },
                    [a](cplx u) { return std::pow(cplx(a), -u) * incomplete_gamma(GammaKind::Upper, u, a); }};
          },
          [](const Step&) -> MellinPair {
            return {[](cplx s) {
                      if (!(s.real() > 0)) throw RegionError("lower piece of u(t) needs Re{s} > 0");
                      return 1.0 / s;
                    },
                    [](cplx u) {
                      if (!(u.real() < 0)) throw RegionError("upper piece of u(t) needs Re{s*} > 0");
                      return -1.0 / u;
                    }};
          },
          [](const Power& p) -> MellinPair {
            const cplx a = p.a;
            return {[a](cplx s) {
                      if (!((s + a).real() > 0)) throw RegionError("lower piece of t^a needs Re{s + a} > 0");
                      return 1.0 / (s + a);
                    },
                    [a](cplx u) {
                      if (!((u + a).real() < 0)) throw RegionError("upper piece of t^a needs Re{s*} > Re{a}");
                      return -1.0 / (u + a);
                    }};
          },
          [abs_tol](const BoseEinstein&) -> MellinPair {
            // Sum over l of exp(-l tau). The lower sum of l^-s Gamma_L(s, l) is
            // rewritten as Gamma(s) zeta(s) minus a fast-decaying upper sum.
            auto upper_sum = [abs_tol](cplx order) {
              cplx sum = 0.0;
              for (int l = 1; l < 5000; ++l) {
                const cplx term =
                    std::pow(static_cast<double>(l), -order) * incomplete_gamma(GammaKind::Upper, order, l);
                sum += term;
                if (std::abs(term) < abs_tol) return sum;
              }
              throw ConvergenceError("Bose-Einstein sum did not converge", sum);
            };
            return {[upper_sum](cplx s) {
                      if (!(s.real() > 1)) throw RegionError("lower piece of 1/(e^t - 1) needs Re{s} > 1");
                      return gamma_fn(s) * zeta(s) - upper_sum(s);
                    },
                    [upper_sum](cplx u) { return upper_sum(u); }};
          },
      },
      atom);
}

MellinPair mellin_pair(const TimeFunction& y, const QuadratureConfig& cfg) {
  return {[y, cfg](cplx s) { return laplace_piece([&](double t) { return y(std::exp(-t)); }, s, cfg, "lower"); },
          [y, cfg](cplx u) { return laplace_piece([&](double t) { return y(std::exp(t)); }, -u, cfg, "upper"); }};
}

FstValue fst_forward(const TimeFunction& y, const ComplexFrequency& f, const QuadratureConfig& cfg) {
  return evaluate(mellin_pair(y, cfg), f);
}

FstValue fst_forward(const FstAtom& atom, const ComplexFrequency& f) { return evaluate(fst_catalog(atom), f); }

cplx mellin_lower(const TimeFunction& y, cplx s, double tau_c, const QuadratureConfig& cfg) {
  if (!(tau_c > 0)) throw ConstraintError("split point must be > 0");
  if (std::isinf(tau_c)) {
    const MellinPair p = mellin_pair(y, cfg);
    return p.lower(s) + p.upper(s);
  }
  return std::pow(cplx(tau_c), s) * laplace_piece([&](double t) { return y(tau_c * std::exp(-t)); }, s, cfg, "lower");
}

cplx mellin_upper(const TimeFunction& y, cplx s, double tau_c, const QuadratureConfig& cfg) {
  if (!(tau_c > 0)) throw ConstraintError("split point must be > 0");
  if (std::isinf(tau_c)) return 0.0;
  return std::pow(cplx(tau_c), s) * laplace_piece([&](double t) { return y(tau_c * std::exp(t)); }, -s, cfg, "upper");
}

MellinSplit mellin_partial(const TimeFunction& y, cplx s, double tau_c, const QuadratureConfig& cfg) {
  const cplx lower = mellin_lower(y, s, tau_c, cfg);
  return {lower, mellin_upper(y, s, tau_c, cfg)};
}

cplx ifst_numeric(const std::function<cplx(cplx)>& lower, const std::function<cplx(cplx)>& upper, double sigma,
                  double tau, const QuadratureConfig& cfg) {
  if (!(tau > 0) || !std::isfinite(tau)) throw ConstraintError("tau must be finite and > 0");
  const double L = std::log(tau);
  double e1 = 0.0, e2 = 0.0;
  if (tau < 1.0) return line_inverse(lower, sigma, L, cfg, e1);
  if (tau > 1.0) return line_inverse(upper, -sigma, L, cfg, e2);
  const cplx a = line_inverse(lower, sigma, 0.0, cfg, e1);
  const cplx b = line_inverse(upper, -sigma, 0.0, cfg, e2);
  const double allowed = 10.0 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(a)) + e1 + e2;
  if (std::abs(a - b) > allowed)
    throw ConsistencyError("lower and upper inverse lines disagree at tau = 1: " + fmt(a) + " vs " + fmt(b));
  return a + b;
}

MellinPair fst_apply_property(const MellinPair& pair, const FstOp& op) {
  using namespace fop;
  const auto L = pair.lower;
  const auto U = pair.upper;
  return std::visit(
      overloaded{
          [&](const Scale& sc) -> MellinPair {
            if (!(sc.a > 0) || !std::isfinite(sc.a)) throw ConstraintError("scale factor must be > 0");
            if (sc.a == 1.0) return pair;
            if (!sc.y) throw ConstraintError("scaling needs the signal for the correction integral between 1 and a");
            const double a = sc.a;
            const TimeFunction y = sc.y;
            return {[L, a, y](cplx s) { return std::pow(cplx(a), -s) * (L(s) + integral_one_to(y, s, a)); },
                    [U, a, y](cplx u) { return std::pow(cplx(a), -u) * (U(u) - integral_one_to(y, u, a)); }};
          },
          [&](const MulPower& mp) -> MellinPair {
            const double m = mp.m;
            return {[L, m](cplx s) { return L(s + m); }, [U, m](cplx u) { return U(u + m); }};
          },
          [&](const Derivative& d) -> MellinPair {
            if (d.order != 1 && d.order != 2) throw ConstraintError("derivative order must be 1 or 2");
            if (!d.y1) throw ConstraintError("the derivative identity needs the boundary value y(1)");
            const cplx y1 = *d.y1;
            if (d.order == 1)
              return {[L, y1](cplx s) { return y1 - (s - 1.0) * L(s - 1.0); },
                      [U, y1](cplx u) { return -y1 - (u - 1.0) * U(u - 1.0); }};
            if (!d.dy1) throw ConstraintError("the second-derivative identity needs y'(1)");
            const cplx dy1 = *d.dy1;
            return {[L, y1, dy1](cplx s) { return dy1 - (s - 1.0) * y1 + (s - 1.0) * (s - 2.0) * L(s - 2.0); },
                    [U, y1, dy1](cplx u) { return -dy1 + (u - 1.0) * y1 + (u - 1.0) * (u - 2.0) * U(u - 2.0); }};
          },
          [&](const TDerivative& d) -> MellinPair {
            if (!d.y1) throw ConstraintError("the identity needs the boundary value y(1)");
            const cplx y1 = *d.y1;
            return {[L, y1](cplx s) { return y1 - s * L(s); }, [U, y1](cplx u) { return -y1 - u * U(u); }};
          },
      },
      op);
}

void validate_pdf(const Pdf& pdf, const QuadratureConfig& cfg) {
  for (int i = -2000; i <= 2000; ++i) {
    const double y = 0.05 * i;
    const double v = pdf(y);
    if (!std::isfinite(v) || v < -1e-14)
      throw ValidationError("density is negative or non-finite at y = " + std::to_string(y));
  }
  double total = 0.0;
  try {
    total = integrate_half_line([&](double y) { return cplx(pdf(y) + pdf(-y)); }, cfg).value.real();
  } catch (const ConvergenceError& e) {
    throw ValidationError(std::string("density normalisation integral failed: ") + e.what());
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw ValidationError("density integrates to " + std::to_string(total) + ", not 1");
}

cplx mgf_eval(const Pdf& pdf, const ComplexFrequency& f, const QuadratureConfig& cfg) {
  if (f.sigma() < 0) throw ConstraintError("damping sigma must be >= 0");
  validate_pdf(pdf, cfg);
  const cplx s = f.s(), sc = f.s_conj();
  auto g = [&](double y) { return pdf(-y) * std::exp(-sc * y) + pdf(y) * std::exp(-s * y); };
  return integrate_half_line(g, cfg).value;
}

HalfLineMoments half_line_moments(const Pdf& pdf, int M, const QuadratureConfig& cfg) {
  if (M < 0) throw ConstraintError("moment order must be >= 0");
  HalfLineMoments out;
  for (int m = 0; m <= M; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    out.negative.push_back(
        sign * integrate_half_line([&](double y) { return cplx(std::pow(y, m) * pdf(-y)); }, cfg).value.real());
    out.positive.push_back(
        integrate_half_line([&](double y) { return cplx(std::pow(y, m) * pdf(y)); }, cfg).value.real());
  }
  return out;
}

cplx mgf_series(const HalfLineMoments& moments, const ComplexFrequency& f) {
  const cplx s = f.s(), sc = f.s_conj();
  cplx sum = 0.0;
  cplx ps = 1.0, pn = 1.0;
  double fact = 1.0;
  for (std::size_t m = 0; m < moments.positive.size(); ++m) {
    if (m > 0) {
      fact *= static_cast<double>(m);
      ps *= sc;
      pn *= -s;
    }
    sum += ps / fact * moments.negative[m] + pn / fact * moments.positive[m];
  }
  return sum;
}

MgfSeriesReport mgf_series_check(const Pdf& pdf, double radius, int M, double tol, const QuadratureConfig& cfg) {
  if (!(radius > 0)) throw ConstraintError("probe radius must be > 0");
  MgfSeriesReport rep;
  rep.moments = half_line_moments(pdf, M, cfg);
  for (double r : {0.25 * radius, 0.5 * radius, radius}) {
    for (double th : {-0.5 * kPi, -0.25 * kPi, 0.0, 0.25 * kPi, 0.5 * kPi}) {
      const ComplexFrequency f(std::max(0.0, r * std::cos(th)), r * std::sin(th));
      rep.max_error = std::max(rep.max_error, std::abs(mgf_series(rep.moments, f) - mgf_eval(pdf, f, cfg)));
    }
  }
  rep.passed = rep.max_error <= tol;
  return rep;
}

MomentReport cauchy_damped_moment(int m, double sigma, const QuadratureConfig& cfg) {
  if (m < 0) throw ConstraintError("moment order must be >= 0");
  if (!(sigma > 0)) throw ConstraintError("damping sigma must be > 0");
  MomentReport rep{m, sigma, 0.0, true};
  if (m % 2 == 1) return rep;
  try {
    const QuadResult r = integrate_half_line(
        [&](double y) { return cplx(std::pow(y, m) * std::exp(-sigma * y) / (1.0 + y * y)); }, cfg);
    rep.value = 2.0 / kPi * r.value.real();
  } catch (const ConvergenceError& e) {
    rep.value = 2.0 / kPi * e.partial().real();
    rep.converged = false;
  }
  return rep;
}

}  // namespace gft
