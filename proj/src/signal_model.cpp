#include "gft/signal_model.hpp"

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

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

cplx oscillation(atom::Oscillation osc, double omega, double tau) {
  switch (osc) {
    case atom::Oscillation::None:
      return 1.0;
    case atom::Oscillation::Cos:
      return std::cos(omega * tau);
    case atom::Oscillation::Sin:
      return std::sin(omega * tau);
  }
  return 1.0;
}

// Flattened parameters used for ordering and approximate comparison.
std::vector<double> key_of(const SignalAtom& a) {
  std::vector<double> k{static_cast<double>(a.index())};
  std::visit(overloaded{
                 [&](const atom::DiracDelta& d) { k.push_back(d.t0); },
                 [&](const atom::Constant&) {},
                 [&](const atom::Signum&) {},
                 [&](const atom::UnitStep& u) {
                   k.push_back(u.orientation == atom::Orientation::Forward ? 1 : -1);
                 },
                 [&](const atom::TwoSidedExp& e) {
                   k.push_back(e.a.real());
                   k.push_back(e.a.imag());
                 },
                 [&](const atom::AbsExp& e) {
                   k.push_back(e.a.real());
                   k.push_back(e.a.imag());
                 },
                 [&](const atom::ComplexExp& e) { k.push_back(e.omega0); },
                 [&](const atom::Cosine& c) { k.push_back(c.omega0); },
                 [&](const atom::Sine& c) { k.push_back(c.omega0); },
                 [&](const atom::Power& p) { k.push_back(p.m); },
                 [&](const atom::AbsPower& p) { k.push_back(p.m); },
                 [&](const atom::InversePower& p) { k.push_back(p.m); },
                 [&](const atom::Gated& g) {
                   k.push_back(g.k);
                   k.push_back(g.rate.real());
                   k.push_back(g.rate.imag());
                   k.push_back(static_cast<double>(g.osc));
                   k.push_back(g.omega);
                   k.push_back(g.t0);
                   k.push_back(g.side);
                 },
             },
             a);
  return k;
}

bool keys_close(const std::vector<double>& x, const std::vector<double>& y, double tol) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i] - y[i]) > tol * std::max(1.0, std::abs(x[i]))) return false;
  return true;
}

bool near_zero(double v, double tol) { return std::abs(v) <= tol; }

// Rewrites an atom into its canonical representative, adjusting the coefficient.
// Returns false when the term vanishes identically.
bool canonicalize(SignalTerm& term, double tol) {
  using namespace atom;
  if (auto* c = std::get_if<Cosine>(&term.atom)) {
    c->omega0 = std::abs(c->omega0);
    return true;
  }
  if (auto* s = std::get_if<Sine>(&term.atom)) {
    if (near_zero(s->omega0, tol)) return false;
    if (s->omega0 < 0) {
      s->omega0 = -s->omega0;
      term.coef = -term.coef;
    }
    return true;
  }
  auto* g = std::get_if<Gated>(&term.atom);
  if (!g) return true;
  if (g->osc != Oscillation::None && near_zero(g->omega, tol)) {
    if (g->osc == Oscillation::Sin) return false;
    g->osc = Oscillation::None;
    g->omega = 0.0;
  }
  if (g->osc == Oscillation::None) g->omega = 0.0;
  if (g->omega < 0) {
    g->omega = -g->omega;
    if (g->osc == Oscillation::Sin) term.coef = -term.coef;
  }
  if (g->side == 0 && g->k == 0 && near_zero(g->t0, tol)) {
    const bool no_rate = std::abs(g->rate) <= tol;
    if (g->osc == Oscillation::None) {
      term.atom = no_rate ? SignalAtom{Constant{}} : SignalAtom{TwoSidedExp{-g->rate}};
    } else if (no_rate) {
      term.atom = g->osc == Oscillation::Cos ? SignalAtom{Cosine{g->omega}}
                                             : SignalAtom{Sine{g->omega}};
    }
  }
  return true;
}

}  // namespace

ComplexFrequency::ComplexFrequency(double sigma, double omega) : sigma_(sigma), omega_(omega) {
  if (!std::isfinite(sigma) || !std::isfinite(omega))
    throw ConstraintError("complex frequency components must be finite");
}

DiscreteFrequency::DiscreteFrequency(double sigma, double Omega) : sigma_(sigma), Omega_(Omega) {
  if (!std::isfinite(sigma) || !std::isfinite(Omega))
    throw ConstraintError("discrete frequency components must be finite");
}

double DiscreteFrequency::r() const { return std::exp(sigma_); }
cplx DiscreteFrequency::z() const { return std::exp(cplx(sigma_, Omega_)); }
cplx DiscreteFrequency::z_conj() const { return std::exp(cplx(sigma_, -Omega_)); }

void validate_atom(const SignalAtom& a) {
  std::visit(overloaded{
                 [](const atom::DiracDelta& d) {
                   if (!std::isfinite(d.t0)) throw ConstraintError("delta offset must be finite");
                 },
                 [](const atom::Power& p) {
                   if (!(p.m > -1.0)) throw ConstraintError("power atom requires m > -1");
                 },
                 [](const atom::AbsPower& p) {
                   if (!(p.m > -1.0)) throw ConstraintError("abs_pow atom requires m > -1");
                 },
                 [](const atom::InversePower& p) {
                   if (!(p.m >= 1.0)) throw ConstraintError("inv_pow atom requires m >= 1");
                 },
                 [](const atom::TwoSidedExp& e) {
                   if (!finite(e.a)) throw ConstraintError("exp rate must be finite");
                 },
                 [](const atom::AbsExp& e) {
                   if (!finite(e.a)) throw ConstraintError("abs_exp rate must be finite");
                 },
                 [](const atom::Gated& g) {
                   if (g.k < 0) throw ConstraintError("gated atom requires k >= 0");
                   if (g.side < -1 || g.side > 1)
                     throw ConstraintError("gated side must be -1, 0 or 1");
                   if (!finite(g.rate) || !std::isfinite(g.omega) || !std::isfinite(g.t0))
                     throw ConstraintError("gated atom parameters must be finite");
                 },
                 [](const auto&) {},
             },
             a);
}

SignalSpec::SignalSpec(std::vector<SignalTerm> terms) {
  for (auto& t : terms) add(t.coef, std::move(t.atom));
}

SignalSpec& SignalSpec::add(cplx coef, SignalAtom atom) {
  if (!finite(coef)) throw ConstraintError("signal coefficients must be finite");
  validate_atom(atom);
  terms_.push_back({coef, std::move(atom)});
  return *this;
}

bool SignalSpec::has_deltas() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const SignalTerm& t) {
    return std::holds_alternative<atom::DiracDelta>(t.atom);
  });
}

SignalSpec& SignalSpec::operator+=(const SignalSpec& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

SignalSpec& SignalSpec::operator*=(cplx factor) {
  for (auto& t : terms_) t.coef *= factor;
  return *this;
}

SignalSpec operator+(SignalSpec a, const SignalSpec& b) { return a += b; }
SignalSpec operator*(cplx factor, SignalSpec a) { return a *= factor; }

cplx unit_phase(double m) {
  if (m == std::floor(m)) return std::fmod(std::abs(m), 2.0) == 0.0 ? 1.0 : -1.0;
  return std::exp(kJ * kPi * m);
}

cplx evaluate_atom(const SignalAtom& a, double t) {
  using namespace atom;
  return std::visit(
      overloaded{
          [&](const DiracDelta& d) -> cplx {
            if (t == d.t0) throw DomainError("pointwise evaluation at a delta location");
            return 0.0;
          },
          [](const Constant&) -> cplx { return 1.0; },
          [&](const Signum&) -> cplx { return t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0); },
          [&](const UnitStep& u) -> cplx {
            if (u.orientation == Orientation::Forward) return t >= 0 ? 1.0 : 0.0;
            return t <= 0 ? 1.0 : 0.0;
          },
          [&](const TwoSidedExp& e) -> cplx { return std::exp(-e.a * t); },
          [&](const AbsExp& e) -> cplx { return std::exp(-e.a * std::abs(t)); },
          [&](const ComplexExp& e) -> cplx { return std::exp(kJ * (e.omega0 * t)); },
          [&](const Cosine& c) -> cplx { return std::cos(c.omega0 * t); },
          [&](const Sine& c) -> cplx { return std::sin(c.omega0 * t); },
          [&](const Power& p) -> cplx {
            if (t == 0.0) {
              if (p.m > 0) return 0.0;
              if (p.m == 0) return 1.0;
              throw DomainError("t^m with m < 0 is singular at t = 0");
            }
            const double mag = std::pow(std::abs(t), p.m);
            return t > 0 ? cplx(mag) : unit_phase(p.m) * mag;
          },
          [&](const AbsPower& p) -> cplx {
            if (t == 0.0) {
              if (p.m > 0) return 0.0;
              if (p.m == 0) return 1.0;
              throw DomainError("|t|^m with m < 0 is singular at t = 0");
            }
            return std::pow(std::abs(t), p.m);
          },
          [&](const InversePower& p) -> cplx {
            if (t == 0.0) throw DomainError("1/t^m evaluated at t = 0");
            const double mag = std::pow(std::abs(t), -p.m);
            return t > 0 ? cplx(mag) : unit_phase(-p.m) * mag;
          },
          [&](const Gated& g) -> cplx {
            const double tau = t - g.t0;
            const bool active = g.side == 0 || (g.side > 0 ? tau >= 0 : tau < 0);
            if (!active) return 0.0;
            return std::pow(tau, g.k) * std::exp(g.rate * tau) * oscillation(g.osc, g.omega, tau);
          },
      },
      a);
}

cplx evaluate_signal(const SignalSpec& spec, double t) {
  cplx sum = 0.0;
  for (const auto& term : spec.terms()) sum += term.coef * evaluate_atom(term.atom, t);
  return sum;
}

cplx evaluate_regular(const SignalSpec& spec, double t) {
  cplx sum = 0.0;
  for (const auto& term : spec.terms()) {
    if (std::holds_alternative<atom::DiracDelta>(term.atom)) continue;
    sum += term.coef * evaluate_atom(term.atom, t);
  }
  return sum;
}

SignalSpec reflect(const SignalSpec& spec) {
  using namespace atom;
  SignalSpec out;
  for (const auto& term : spec.terms()) {
    std::visit(overloaded{
                   [&](const DiracDelta& d) { out.add(term.coef, DiracDelta{-d.t0}); },
                   [&](const Constant& c) { out.add(term.coef, c); },
                   [&](const Signum& s) { out.add(-term.coef, s); },
                   [&](const UnitStep& u) {
                     out.add(term.coef, UnitStep{u.orientation == Orientation::Forward
                                                     ? Orientation::Reversed
                                                     : Orientation::Forward});
                   },
                   [&](const TwoSidedExp& e) { out.add(term.coef, TwoSidedExp{-e.a}); },
                   [&](const AbsExp& e) { out.add(term.coef, e); },
                   [&](const ComplexExp& e) { out.add(term.coef, ComplexExp{-e.omega0}); },
                   [&](const Cosine& c) { out.add(term.coef, c); },
                   [&](const Sine& s) { out.add(-term.coef, s); },
                   [&](const Power& p) {
                     if (p.m != std::floor(p.m))
                       throw UnsupportedError("reflection of a non-integer power atom");
                     out.add(term.coef * unit_phase(p.m), p);
                   },
                   [&](const AbsPower& p) { out.add(term.coef, p); },
                   [&](const InversePower& p) {
                     if (p.m != std::floor(p.m))
                       throw UnsupportedError("reflection of a non-integer inverse power");
                     out.add(term.coef * unit_phase(p.m), p);
                   },
                   [&](const Gated& g) {
                     // (-t - t0)^k e^{r(-t - t0)} osc(w(-t - t0)) = (-1)^k (t + t0)^k e^{-r(t + t0)} (+-)osc(w(t + t0))
                     Gated r = g;
                     r.rate = -g.rate;
                     r.t0 = -g.t0;
                     r.side = -g.side;
                     cplx c = term.coef * ((g.k % 2) ? -1.0 : 1.0);
                     if (g.osc == Oscillation::Sin) c = -c;
                     out.add(c, r);
                   },
               },
               term.atom);
  }
  // The strict/inclusive edge of a reflected gate moves to the other side;
  // the difference is a single point and is ignored.
  return out;
}

SignalSpec normalize(const SignalSpec& spec, double tol) {
  std::vector<SignalTerm> work;
  for (auto term : spec.terms())
    if (canonicalize(term, tol)) work.push_back(std::move(term));

  // Merge approximately equal atoms.
  std::vector<SignalTerm> merged;
  std::vector<std::vector<double>> keys;
  for (auto& term : work) {
    auto k = key_of(term.atom);
    bool found = false;
    for (std::size_t i = 0; i < merged.size(); ++i) {
      if (keys_close(keys[i], k, tol)) {
        merged[i].coef += term.coef;
        found = true;
        break;
      }
    }
    if (!found) {
      merged.push_back(term);
      keys.push_back(std::move(k));
    }
  }

  // A gate on both sides with the same coefficient is the ungated function.
  for (std::size_t i = 0; i < merged.size(); ++i) {
    auto* gi = std::get_if<atom::Gated>(&merged[i].atom);
    if (!gi || gi->side != 1) continue;
    for (std::size_t j = 0; j < merged.size(); ++j) {
      auto* gj = std::get_if<atom::Gated>(&merged[j].atom);
      if (!gj || gj->side != -1) continue;
      atom::Gated probe = *gj;
      probe.side = 1;
      if (!keys_close(key_of(probe), key_of(*gi), tol)) continue;
      if (std::abs(merged[i].coef - merged[j].coef) > tol * std::max(1.0, std::abs(merged[i].coef)))
        continue;
      gi->side = 0;
      merged[j].coef = 0.0;
      canonicalize(merged[i], tol);
      break;
    }
  }

  std::vector<SignalTerm> kept;
  for (auto& t : merged)
    if (std::abs(t.coef) > tol) kept.push_back(std::move(t));
  std::sort(kept.begin(), kept.end(), [](const SignalTerm& a, const SignalTerm& b) {
    return key_of(a.atom) < key_of(b.atom);
  });

  // Canonicalising may have produced new duplicates (e.g. Cosine from a merged gate).
  SignalSpec out;
  for (auto& t : kept) {
    if (!out.terms().empty() &&
        keys_close(key_of(out.terms().back().atom), key_of(t.atom), tol)) {
      std::vector<SignalTerm> terms = out.terms();
      terms.back().coef += t.coef;
      out = SignalSpec(std::move(terms));
      continue;
    }
    out.add(t.coef, t.atom);
  }
  return out;
}

bool equivalent(const SignalSpec& a, const SignalSpec& b, double tol) {
  SignalSpec diff = a + (-1.0 * b);
  return normalize(diff, tol).empty();
}

std::string describe(const SignalAtom& a) {
  using namespace atom;
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const DiracDelta& d) { os << "delta(t-" << d.t0 << ")"; },
                 [&](const Constant&) { os << "1"; },
                 [&](const Signum&) { os << "sgn(t)"; },
                 [&](const UnitStep& u) {
                   os << (u.orientation == Orientation::Forward ? "u(t)" : "u(-t)");
                 },
                 [&](const TwoSidedExp& e) { os << "exp(-(" << e.a << ")t)"; },
                 [&](const AbsExp& e) { os << "exp(-(" << e.a << ")|t|)"; },
                 [&](const ComplexExp& e) { os << "exp(j" << e.omega0 << "t)"; },
                 [&](const Cosine& c) { os << "cos(" << c.omega0 << "t)"; },
                 [&](const Sine& c) { os << "sin(" << c.omega0 << "t)"; },
                 [&](const Power& p) { os << "t^" << p.m; },
                 [&](const AbsPower& p) { os << "|t|^" << p.m; },
                 [&](const InversePower& p) { os << "1/t^" << p.m; },
                 [&](const Gated& g) {
                   os << "(t-" << g.t0 << ")^" << g.k << "*exp((" << g.rate << ")(t-" << g.t0
                      << "))";
                   if (g.osc == Oscillation::Cos) os << "*cos(" << g.omega << "(t-" << g.t0 << "))";
                   if (g.osc == Oscillation::Sin) os << "*sin(" << g.omega << "(t-" << g.t0 << "))";
                   if (g.side > 0) os << "*[t>=" << g.t0 << "]";
                   if (g.side < 0) os << "*[t<" << g.t0 << "]";
                 },
             },
             a);
  return os.str();
}

std::string describe(const SignalSpec& s) {
  if (s.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : s.terms()) {
    if (!first) os << " + ";
    first = false;
    os << t.coef << "*" << describe(t.atom);
  }
  return os.str();
}

SampledSignal::SampledSignal(double t_start, double dt, std::vector<cplx> values)
    : t_start_(t_start), dt_(dt), values_(std::move(values)) {
  if (!(dt > 0)) throw ConstraintError("sampled signal requires dt > 0");
  if (values_.empty()) throw ConstraintError("sampled signal requires at least one value");
}

double SampledSignal::t_end() const noexcept {
  return t_start_ + dt_ * static_cast<double>(values_.size() - 1);
}

cplx SampledSignal::operator()(double t) const {
  const double x = (t - t_start_) / dt_;
  if (x < 0 || x > static_cast<double>(values_.size() - 1)) return 0.0;
  const auto i = static_cast<std::size_t>(std::floor(x));
  if (i + 1 >= values_.size()) return values_.back();
  const double f = x - static_cast<double>(i);
  return (1.0 - f) * values_[i] + f * values_[i + 1];
}

PeriodicSignal::PeriodicSignal(double period, TimeFunction one_period)
    : period_(period), one_period_(std::move(one_period)) {
  if (!(period > 0)) throw ConstraintError("periodic signal requires T > 0");
}

PeriodicSignal::PeriodicSignal(double period, const SignalSpec& one_period)
    : PeriodicSignal(period, [spec = one_period](double t) { return evaluate_regular(spec, t); }) {}

cplx PeriodicSignal::operator()(double t) const {
  double r = std::fmod(t, period_);
  if (r < 0) r += period_;
  return one_period_(r);
}

Roc Roc::half_plane(double c) {
  if (!std::isfinite(c)) throw ConstraintError("half-plane bound must be finite");
  return Roc(Kind::HalfPlane, c);
}

Roc Roc::outside_circle(double r0) {
  if (!(r0 >= 0) || !std::isfinite(r0)) throw ConstraintError("circle radius must be >= 0");
  return Roc(Kind::OutsideCircle, r0);
}

bool Roc::contains(double sigma) const {
  switch (kind_) {
    case Kind::EntirePlane:
    case Kind::EntireZPlane:
      return true;
    case Kind::HalfPlane:
      return sigma > bound_;
    case Kind::OutsideCircle:
      return std::exp(sigma) > bound_;
  }
  return false;
}

Roc Roc::intersect(const Roc& other) const {
  if (is_discrete() != other.is_discrete())
    throw ConstraintError("cannot intersect continuous and discrete regions");
  if (kind_ == Kind::EntirePlane || kind_ == Kind::EntireZPlane) return other;
  if (other.kind_ == Kind::EntirePlane || other.kind_ == Kind::EntireZPlane) return *this;
  return Roc(kind_, std::max(bound_, other.bound_));
}

std::string Roc::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::EntirePlane:
      os << "all s";
      break;
    case Kind::HalfPlane:
      os << "Re{s} > " << bound_;
      break;
    case Kind::EntireZPlane:
      os << "all z";
      break;
    case Kind::OutsideCircle:
      os << "|z| > " << bound_;
      break;
  }
  return os.str();
}

}  // namespace gft
