#include "gft/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gft/errors.hpp"

namespace gft {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Terms = std::vector<SpectrumTerm>;

bool is_integer(double p) { return std::abs(p - std::round(p)) < 1e-12; }

cplx ipow(cplx w, int k) {
  cplx r = 1.0;
  cplx b = k < 0 ? 1.0 / w : w;
  for (int n = std::abs(k); n > 0; n >>= 1) {
    if (n & 1) r *= b;
    b *= b;
  }
  return r;
}

double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

bool same_center(cplx a, cplx b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

bool on_axis(cplx c) { return std::abs(c.real()) <= 1e-12 * std::max(1.0, std::abs(c)); }

SpectrumTerm power_term(cplx coef, cplx center, double p, double delay = 0.0) {
  SpectrumTerm t;
  t.coef = coef;
  t.center = center;
  t.p = p;
  t.delay = delay;
  return t;
}

// term(v + delta)
SpectrumTerm shifted(SpectrumTerm t, cplx delta) {
  t.center -= delta;
  if (t.delay != 0.0) t.coef *= std::exp(-delta * t.delay);
  return t;
}

void shift_all(Terms& ts, cplx delta) {
  for (auto& t : ts) t = shifted(t, delta);
}

// term(v / a), a > 0
Terms scaled(const SpectrumTerm& t, double a) {
  SpectrumTerm r = t;
  r.center = t.center * a;
  r.delay = t.delay / a;
  if (t.kind == SpectrumTerm::Kind::Power) {
    r.coef = t.coef * std::pow(a, t.p);
    return {r};
  }
  SpectrumTerm c = power_term(-t.coef * std::log(a), 0.0, 0.0, r.delay);
  return {r, c};
}

// v * term
Terms times_v(const SpectrumTerm& t) {
  if (t.kind == SpectrumTerm::Kind::Log)
    throw UnsupportedError("multiplying a logarithmic term by the frequency variable");
  SpectrumTerm a = t;
  a.p = t.p - 1.0;
  Terms out{a};
  if (t.center != cplx(0.0)) {
    SpectrumTerm b = t;
    b.coef = t.coef * t.center;
    out.push_back(b);
  }
  return out;
}

// d/dv term
Terms derivative(const SpectrumTerm& t) {
  Terms out;
  if (t.delay != 0.0) {
    SpectrumTerm a = t;
    a.coef = -t.delay * t.coef;
    out.push_back(a);
  }
  if (t.kind == SpectrumTerm::Kind::Log) {
    out.push_back(power_term(t.coef, t.center, 1.0, t.delay));
  } else if (t.p != 0.0) {
    out.push_back(power_term(-t.p * t.coef, t.center, t.p + 1.0, t.delay));
  }
  return out;
}

// term / v
Terms over_v(const SpectrumTerm& t) {
  if (t.kind == SpectrumTerm::Kind::Log)
    throw UnsupportedError("dividing a logarithmic term by the frequency variable");
  if (t.center == cplx(0.0)) {
    SpectrumTerm r = t;
    r.p += 1.0;
    return {r};
  }
  if (!is_integer(t.p))
    throw UnsupportedError("dividing a shifted fractional power by the frequency variable");
  const int k = static_cast<int>(std::round(t.p));
  const cplx c = t.center;
  // Both recursions bottom out at 1/v.
  Terms out;
  if (k >= 0) {
    // 1/(v (v-c)^k) = [ (v-c)^-k - 1/(v (v-c)^(k-1)) ] / c
    cplx scale = t.coef;
    for (int j = k; j >= 1; --j) {
      scale /= c;
      out.push_back(power_term(scale, c, j, t.delay));
      scale = -scale;
    }
    out.push_back(power_term(scale, 0.0, 1.0, t.delay));
  } else {
    // (v-c)^n / v = (v-c)^(n-1) - c (v-c)^(n-1) / v
    cplx scale = t.coef;
    for (int n = -k; n >= 1; --n) {
      out.push_back(power_term(scale, c, -(n - 1), t.delay));
      scale *= -c;
    }
    out.push_back(power_term(scale, 0.0, 1.0, t.delay));
  }
  return out;
}

template <class F>
Terms map_terms(const Terms& ts, F f) {
  Terms out;
  for (const auto& t : ts) {
    Terms r = f(t);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

void scale_coefs(Terms& ts, cplx k) {
  for (auto& t : ts) t.coef *= k;
}

cplx eval_term(const SpectrumTerm& t, cplx v) {
  const cplx w = v - t.center;
  cplx val;
  if (t.kind == SpectrumTerm::Kind::Log) {
    if (w == cplx(0.0)) throw PoleError("logarithmic singularity at v = " + std::to_string(t.center.real()));
    val = std::log(w);
  } else if (t.p == 0.0) {
    val = 1.0;
  } else if (w == cplx(0.0)) {
    if (t.p > 0) throw PoleError("evaluation at a pole");
    val = 0.0;
  } else if (is_integer(t.p)) {
    val = ipow(w, -static_cast<int>(std::round(t.p)));
  } else {
    val = std::exp(-t.p * std::log(w));
  }
  if (t.delay != 0.0) val *= std::exp(-v * t.delay);
  return t.coef * val;
}

// Laplace transform of t^k e^{b t} osc(w t) on t > 0, as terms in v.
Terms causal_terms(int k, cplx b, atom::Oscillation osc, double w) {
  const double kf = factorial(k);
  const cplx up = b + kJ * w;
  const cplx dn = b - kJ * w;
  switch (osc) {
    case atom::Oscillation::None:
      return {power_term(kf, b, k + 1)};
    case atom::Oscillation::Cos:
      return {power_term(0.5 * kf, up, k + 1), power_term(0.5 * kf, dn, k + 1)};
    case atom::Oscillation::Sin:
      if (w == 0.0) return {};
      return {power_term(kf / (2.0 * kJ), up, k + 1), power_term(-kf / (2.0 * kJ), dn, k + 1)};
  }
  return {};
}

Terms cos_terms(double w0) { return causal_terms(0, 0.0, atom::Oscillation::Cos, w0); }
Terms sin_terms(double w0) { return causal_terms(0, 0.0, atom::Oscillation::Sin, w0); }

SpectrumExpr gated_spectrum(const atom::Gated& g) {
  SpectrumExpr e;
  const cplx b = g.rate;
  const bool right = g.side >= 0;
  const bool left = g.side <= 0;
  if (g.side == 1 && g.t0 < 0)
    throw UnsupportedError("right-sided gate starting before the origin has no catalog row");
  if (g.side == -1 && g.t0 > 0)
    throw UnsupportedError("left-sided gate ending after the origin has no catalog row");
  if (g.side == 0 && g.t0 != 0.0)
    throw UnsupportedError("two-sided gate must be centred at the origin");
  Roc roc = Roc::entire_plane();
  if (right) {
    e.lt = causal_terms(g.k, b, g.osc, g.omega);
    for (auto& t : e.lt) t.delay = g.t0;
    roc = roc.intersect(Roc::half_plane(b.real()));
  }
  if (left) {
    // Reflected: (-1)^k tau^k e^{-b tau} osc(-w tau), tau > 0, delayed by -t0.
    e.clt = causal_terms(g.k, -b, g.osc, g.omega);
    double sign = (g.k % 2 == 0) ? 1.0 : -1.0;
    if (g.osc == atom::Oscillation::Sin) sign = -sign;
    scale_coefs(e.clt, sign);
    for (auto& t : e.clt) t.delay = -g.t0;
    roc = roc.intersect(Roc::half_plane(-b.real()));
  }
  e.roc = roc;
  return e;
}

SpectrumExpr atom_spectrum(const SignalAtom& a, std::optional<double> weight_p) {
  using namespace atom;
  SpectrumExpr e;
  const Roc right_half = Roc::half_plane(0.0);
  std::visit(
      overloaded{
          [&](const DiracDelta& d) {
            if (d.t0 >= 0)
              e.lt = {power_term(1.0, 0.0, 0.0, d.t0)};
            else
              e.clt = {power_term(1.0, 0.0, 0.0, -d.t0)};
            e.roc = Roc::entire_plane();
          },
          [&](const Constant&) {
            e.clt = {power_term(1.0, 0.0, 1.0)};
            e.lt = {power_term(1.0, 0.0, 1.0)};
            e.roc = right_half;
          },
          [&](const Signum&) {
            e.clt = {power_term(-1.0, 0.0, 1.0)};
            e.lt = {power_term(1.0, 0.0, 1.0)};
            e.roc = right_half;
          },
          [&](const UnitStep& u) {
            if (u.orientation == Orientation::Forward)
              e.lt = {power_term(1.0, 0.0, 1.0)};
            else
              e.clt = {power_term(1.0, 0.0, 1.0)};
            e.roc = right_half;
          },
          [&](const TwoSidedExp& x) {
            e.clt = {power_term(1.0, x.a, 1.0)};
            e.lt = {power_term(1.0, -x.a, 1.0)};
            e.roc = Roc::half_plane(std::abs(x.a.real()));
          },
          [&](const AbsExp& x) {
            e.clt = {power_term(1.0, -x.a, 1.0)};
            e.lt = {power_term(1.0, -x.a, 1.0)};
            e.roc = Roc::half_plane(-x.a.real());
          },
          [&](const ComplexExp& x) {
            e.clt = {power_term(1.0, -kJ * x.omega0, 1.0)};
            e.lt = {power_term(1.0, kJ * x.omega0, 1.0)};
            e.roc = right_half;
          },
          [&](const Cosine& x) {
            e.clt = cos_terms(x.omega0);
            e.lt = cos_terms(x.omega0);
            e.roc = right_half;
          },
          [&](const Sine& x) {
            e.lt = sin_terms(x.omega0);
            e.clt = sin_terms(x.omega0);
            scale_coefs(e.clt, -1.0);
            e.roc = right_half;
          },
          [&](const Power& x) {
            const double g = std::tgamma(x.m + 1.0);
            e.clt = {power_term(g * unit_phase(x.m), 0.0, x.m + 1.0)};
            e.lt = {power_term(g, 0.0, x.m + 1.0)};
            e.roc = right_half;
          },
          [&](const AbsPower& x) {
            const double g = std::tgamma(x.m + 1.0);
            e.clt = {power_term(g, 0.0, x.m + 1.0)};
            e.lt = {power_term(g, 0.0, x.m + 1.0)};
            e.roc = right_half;
          },
          [&](const InversePower& x) {
            if (!weight_p)
              throw ConstraintError("inverse power atoms need a weight exponent p > m - 1");
            const double p = *weight_p;
            if (!(p > x.m - 1.0))
              throw ConstraintError("weight exponent p must exceed m - 1 for 1/t^m");
            const double q = p - x.m + 1.0;
            const double g = std::tgamma(q);
            e.clt = {power_term(g * unit_phase(-x.m), 0.0, q)};
            e.lt = {power_term(g, 0.0, q)};
            e.roc = right_half;
          },
          [&](const Gated& g) { e = gated_spectrum(g); },
      },
      a);
  if (weight_p && *weight_p != 0.0 && !std::holds_alternative<InversePower>(a))
    e = weight_by_power(e, *weight_p);
  return e;
}

bool same_shape(const SpectrumTerm& a, const SpectrumTerm& b) {
  return a.kind == b.kind && std::abs(a.p - b.p) < 1e-12 && std::abs(a.delay - b.delay) < 1e-12 &&
         same_center(a.center, b.center);
}

Terms simplify_terms(const Terms& in, double tol) {
  Terms out;
  for (const auto& t : in) {
    auto it = std::find_if(out.begin(), out.end(), [&](const SpectrumTerm& o) { return same_shape(o, t); });
    if (it == out.end())
      out.push_back(t);
    else
      it->coef += t.coef;
  }
  double scale = 0.0;
  for (const auto& t : in) scale = std::max(scale, std::abs(t.coef));
  out.erase(std::remove_if(out.begin(), out.end(),
                           [&](const SpectrumTerm& t) { return std::abs(t.coef) <= tol * std::max(1.0, scale); }),
            out.end());
  std::sort(out.begin(), out.end(), [](const SpectrumTerm& a, const SpectrumTerm& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.delay != b.delay) return a.delay < b.delay;
    if (a.p != b.p) return a.p > b.p;
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return out;
}

// Integral of the terms from v to infinity along a ray, for simple undelayed poles
// whose residues sum to zero (otherwise the integral diverges logarithmically).
Terms antiderivative_tail(const Terms& ts) {
  Terms out;
  cplx residue_sum = 0.0;
  double scale = 0.0;
  for (const auto& t : ts) {
    if (t.kind != SpectrumTerm::Kind::Power || t.p != 1.0 || t.delay != 0.0)
      throw UnsupportedError("division by t is limited to undelayed simple poles");
    residue_sum += t.coef;
    scale = std::max(scale, std::abs(t.coef));
    SpectrumTerm l = t;
    l.kind = SpectrumTerm::Kind::Log;
    l.p = 0.0;
    l.coef = -t.coef;
    out.push_back(l);
  }
  if (std::abs(residue_sum) > 1e-12 * std::max(1.0, scale))
    throw UnsupportedError("division by t: residues do not cancel, x(t)/t is not integrable at the origin");
  return out;
}

Roc shift_roc(const Roc& r, double by) {
  if (r.kind() != Roc::Kind::HalfPlane) return r;
  return Roc::half_plane(r.bound() + by);
}

}  // namespace

SpectrumTerm rational_pole(cplx coef, cplx pole, int multiplicity) {
  if (multiplicity < 1) throw ConstraintError("pole multiplicity must be >= 1");
  return power_term(coef, pole, multiplicity);
}

SpectrumTerm fractional_power(cplx coef, double p) {
  if (!(p > 0)) throw ConstraintError("fractional power exponent must be > 0");
  return power_term(coef, 0.0, p);
}

SpectrumTerm unity(cplx coef) { return power_term(coef, 0.0, 0.0); }

SpectrumTerm delayed(double t0, SpectrumTerm inner) {
  if (!(t0 >= 0)) throw ConstraintError("delay must be >= 0");
  inner.delay += t0;
  return inner;
}

cplx eval_terms(const std::vector<SpectrumTerm>& terms, cplx v) {
  cplx sum = 0.0;
  for (const auto& t : terms) sum += eval_term(t, v);
  return sum;
}

cplx eval_spectrum(const SpectrumExpr& expr, const ComplexFrequency& f) {
  if (!expr.roc.contains(f.sigma()))
    throw RegionError("sigma = " + std::to_string(f.sigma()) + " outside ROC " + expr.roc.describe());
  return eval_terms(expr.clt, f.s_conj()) + eval_terms(expr.lt, f.s());
}

SpectrumExpr operator+(const SpectrumExpr& a, const SpectrumExpr& b) {
  SpectrumExpr r;
  r.clt = a.clt;
  r.clt.insert(r.clt.end(), b.clt.begin(), b.clt.end());
  r.lt = a.lt;
  r.lt.insert(r.lt.end(), b.lt.begin(), b.lt.end());
  r.roc = a.roc.intersect(b.roc);
  return r;
}

SpectrumExpr operator*(cplx k, SpectrumExpr e) {
  scale_coefs(e.clt, k);
  scale_coefs(e.lt, k);
  return e;
}

SpectrumExpr simplify(const SpectrumExpr& e, double tol) {
  SpectrumExpr r = e;
  r.clt = simplify_terms(e.clt, tol);
  r.lt = simplify_terms(e.lt, tol);
  return r;
}

SpectrumExpr lookup_gft(const SignalSpec& spec, std::optional<double> weight_p) {
  if (weight_p && !(*weight_p >= 0)) throw ConstraintError("weight exponent p must be >= 0");
  SpectrumExpr total;
  for (const auto& term : spec.terms()) total = total + term.coef * atom_spectrum(term.atom, weight_p);
  return simplify(total);
}

SpectrumExpr weight_by_power(const SpectrumExpr& e, double p) {
  if (!(p >= 0)) throw ConstraintError("weight exponent must be >= 0");
  if (p == 0.0) return e;
  auto weigh = [p](const SpectrumTerm& t) -> Terms {
    if (t.kind == SpectrumTerm::Kind::Power && t.p == 0.0) {
      // A delta at t = delay.
      SpectrumTerm r = t;
      r.coef *= std::pow(t.delay, p);
      return {r};
    }
    if (t.kind != SpectrumTerm::Kind::Power || !(t.p > 0) || t.delay != 0.0)
      throw UnsupportedError("power weighting needs undelayed pole or power terms");
    SpectrumTerm r = t;
    r.coef *= std::exp(std::lgamma(t.p + p) - std::lgamma(t.p));
    r.p = t.p + p;
    return {r};
  };
  SpectrumExpr r = e;
  r.clt = map_terms(e.clt, weigh);
  r.lt = map_terms(e.lt, weigh);
  return simplify(r);
}

SpectrumExpr apply_time_property(const SpectrumExpr& e, const TimeOp& o) {
  SpectrumExpr r = e;
  std::visit(
      overloaded{
          [&](const op::SgnDelay& d) {
            if (!(d.t0 >= 0)) throw ConstraintError("sgn delay requires t0 >= 0");
            for (auto& t : r.clt) t.delay += d.t0;
            for (auto& t : r.lt) t.delay += d.t0;
          },
          [&](const op::Scale& s) {
            if (!(s.a > 0) || !std::isfinite(s.a))
              throw ConstraintError("scale factor must be > 0 (compose with reverse for a < 0)");
            auto f = [&](const SpectrumTerm& t) { return scaled(t, s.a); };
            r.clt = map_terms(e.clt, f);
            r.lt = map_terms(e.lt, f);
            scale_coefs(r.clt, 1.0 / s.a);
            scale_coefs(r.lt, 1.0 / s.a);
            if (e.roc.kind() == Roc::Kind::HalfPlane) r.roc = Roc::half_plane(e.roc.bound() * s.a);
          },
          [&](const op::Reverse&) { std::swap(r.clt, r.lt); },
          [&](const op::Derivative& d) {
            if (d.m < 0) throw ConstraintError("derivative order must be >= 0");
            if (static_cast<int>(d.right.size()) < d.m)
              throw ConstraintError("derivative needs x(0), ..., x^(m-1)(0)");
            const auto& left = d.left.empty() ? d.right : d.left;
            if (static_cast<int>(left.size()) < d.m)
              throw ConstraintError("left initial values must have m entries");
            Terms clt = e.clt;
            Terms lt = e.lt;
            for (int i = 0; i < d.m; ++i) {
              clt = map_terms(clt, times_v);
              scale_coefs(clt, -1.0);
              lt = map_terms(lt, times_v);
            }
            for (int i = 1; i <= d.m; ++i) {
              const int deg = d.m - i;
              const double sgn = (deg % 2 == 0) ? 1.0 : -1.0;
              clt.push_back(power_term(sgn * left[i - 1], 0.0, -deg));
              lt.push_back(power_term(-d.right[i - 1], 0.0, -deg));
            }
            r.clt = clt;
            r.lt = lt;
          },
          [&](const op::RunningIntegral&) {
            r.roc = e.roc.intersect(Roc::half_plane(0.0));
            r.clt = map_terms(e.clt, over_v);
            scale_coefs(r.clt, -1.0);
            r.lt = map_terms(e.lt, over_v);
          },
      },
      o);
  return simplify(r);
}

SpectrumExpr apply_modulation_property(const SpectrumExpr& e, const ModulationOp& o) {
  SpectrumExpr r = e;
  auto differentiate = [](Terms ts, int m) {
    for (int i = 0; i < m; ++i) ts = map_terms(ts, derivative);
    return ts;
  };
  std::visit(
      overloaded{
          [&](const op::ExpTwoSided& x) {
            shift_all(r.clt, -x.a);
            shift_all(r.lt, x.a);
            r.roc = shift_roc(e.roc, std::abs(x.a.real()));
          },
          [&](const op::ExpAbs& x) {
            shift_all(r.clt, x.a);
            shift_all(r.lt, x.a);
            r.roc = shift_roc(e.roc, -x.a.real());
          },
          [&](const op::MulPower& x) {
            if (x.m < 0) throw ConstraintError("power must be a non-negative integer");
            r.clt = differentiate(e.clt, x.m);
            r.lt = differentiate(e.lt, x.m);
            if (x.m % 2 == 1) scale_coefs(r.lt, -1.0);
          },
          [&](const op::MulAbsPower& x) {
            if (!(x.m >= 0)) throw ConstraintError("power must be >= 0");
            if (!is_integer(x.m)) {
              r = weight_by_power(e, x.m);
              return;
            }
            const int m = static_cast<int>(std::round(x.m));
            r.clt = differentiate(e.clt, m);
            r.lt = differentiate(e.lt, m);
            if (m % 2 == 1) {
              scale_coefs(r.clt, -1.0);
              scale_coefs(r.lt, -1.0);
            }
          },
          [&](const op::DivT&) {
            r.clt = antiderivative_tail(e.clt);
            r.lt = antiderivative_tail(e.lt);
            scale_coefs(r.clt, -1.0);
          },
          [&](const op::DivAbsT&) {
            r.clt = antiderivative_tail(e.clt);
            r.lt = antiderivative_tail(e.lt);
          },
      },
      o);
  return simplify(r);
}

FtLimit ft_limit_symbolic(const SpectrumExpr& e, double omega) {
  if (e.roc.kind() == Roc::Kind::HalfPlane && e.roc.bound() > 0)
    throw RegionError("sigma -> 0 limit requires the imaginary axis on the ROC boundary or inside it");
  if (e.roc.is_discrete()) throw RegionError("discrete ROC passed to a continuous limit");

  struct AxisPole {
    double location;  // omega0 of the resulting delta
    cplx weight;      // residue times the delay factor at the pole
    const SpectrumTerm* term;
    bool lt;
    bool matched = false;
  };
  std::vector<AxisPole> poles;
  FtLimit out;
  const cplx v_lt = kJ * omega;
  const cplx v_clt = -kJ * omega;

  auto scan = [&](const Terms& ts, bool lt) {
    for (const auto& t : ts) {
      const cplx v = lt ? v_lt : v_clt;
      if (t.kind == SpectrumTerm::Kind::Power && t.p > 0 && on_axis(t.center)) {
        if (is_integer(t.p) && std::round(t.p) == 1.0) {
          const cplx c(0.0, t.center.imag());
          const double loc = lt ? c.imag() : -c.imag();
          poles.push_back({loc, t.coef * std::exp(-c * t.delay), &t, lt});
          continue;
        }
        if (is_integer(t.p))
          throw DivergenceError("higher-order pole on the imaginary axis; the limit is not a function");
      }
      try {
        out.regular += eval_term(t, v);
      } catch (const PoleError&) {
        throw DivergenceError("spectrum is singular at omega = " + std::to_string(omega));
      }
    }
  };
  scan(e.clt, false);
  scan(e.lt, true);

  for (auto& a : poles) {
    if (!a.lt || a.matched) continue;
    for (auto& b : poles) {
      if (b.lt || b.matched) continue;
      if (std::abs(a.location - b.location) > 1e-12 * std::max(1.0, std::abs(a.location))) continue;
      if (a.term->delay != 0.0 || b.term->delay != 0.0) continue;
      if (std::abs(a.term->coef - b.term->coef) > 1e-12 * std::max(1.0, std::abs(a.term->coef))) continue;
      a.matched = b.matched = true;
      out.atoms.push_back({a.location, 2.0 * kPi * a.weight});
      break;
    }
  }
  for (const auto& a : poles) {
    if (a.matched) continue;
    if (std::abs(omega - a.location) <= 1e-12 * std::max(1.0, std::abs(omega)))
      throw DivergenceError("unmatched pole on the imaginary axis at omega = " + std::to_string(omega));
    out.atoms.push_back({a.location, kPi * a.weight});
    out.regular += eval_term(*a.term, a.lt ? v_lt : v_clt);
  }

  // Merge atoms sharing a location and drop cancelled ones.
  std::vector<DistributionalAtom> merged;
  for (const auto& a : out.atoms) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const DistributionalAtom& m) {
      return std::abs(m.omega0 - a.omega0) <= 1e-12 * std::max(1.0, std::abs(a.omega0));
    });
    if (it == merged.end())
      merged.push_back(a);
    else
      it->weight += a.weight;
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const DistributionalAtom& a) { return std::abs(a.weight) < 1e-14; }),
               merged.end());
  std::sort(merged.begin(), merged.end(),
            [](const DistributionalAtom& a, const DistributionalAtom& b) { return a.omega0 < b.omega0; });
  out.atoms = std::move(merged);
  return out;
}

namespace {

std::string fmt_complex(cplx z) {
  std::ostringstream os;
  os.precision(12);
  if (z.imag() == 0.0) {
    os << z.real();
  } else if (z.real() == 0.0) {
    os << z.imag() << "j";
  } else {
    os << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "j)";
  }
  return os.str();
}

}  // namespace

std::string describe(const SpectrumTerm& t, const char* var) {
  std::ostringstream os;
  os.precision(12);
  os << fmt_complex(t.coef);
  if (t.delay != 0.0) os << "*exp(-" << var << "*" << t.delay << ")";
  std::string base = var;
  if (t.center != cplx(0.0)) base = std::string("(") + var + "-" + fmt_complex(t.center) + ")";
  if (t.kind == SpectrumTerm::Kind::Log) {
    os << "*log" << (t.center != cplx(0.0) ? base : "(" + base + ")");
  } else if (t.p > 0) {
    os << "/" << base;
    if (t.p != 1.0) os << "^" << t.p;
  } else if (t.p < 0) {
    os << "*" << base;
    if (t.p != -1.0) os << "^" << -t.p;
  }
  return os.str();
}

std::string describe(const SpectrumExpr& e) {
  std::ostringstream os;
  auto part = [&](const Terms& ts, const char* var) {
    if (ts.empty()) {
      os << "0";
      return;
    }
    for (std::size_t i = 0; i < ts.size(); ++i) os << (i ? " + " : "") << describe(ts[i], var);
  };
  os << "clt[s*]: ";
  part(e.clt, "s*");
  os << "; lt[s]: ";
  part(e.lt, "s");
  os << "; ROC " << e.roc.describe();
  return os.str();
}

}  // namespace gft
