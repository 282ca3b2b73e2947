#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace gft {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kJ{0.0, 1.0};

/// Complex frequency s = sigma + j omega together with its conjugate s*.
class ComplexFrequency {
 public:
  ComplexFrequency(double sigma, double omega);

  double sigma() const noexcept { return sigma_; }
  double omega() const noexcept { return omega_; }
  cplx s() const noexcept { return {sigma_, omega_}; }
  cplx s_conj() const noexcept { return {sigma_, -omega_}; }

 private:
  double sigma_;
  double omega_;
};

/// Discrete frequency with z = exp(sigma + j Omega).
class DiscreteFrequency {
 public:
  DiscreteFrequency(double sigma, double Omega);

  double sigma() const noexcept { return sigma_; }
  double Omega() const noexcept { return Omega_; }
  double r() const;
  cplx z() const;
  cplx z_conj() const;

 private:
  double sigma_;
  double Omega_;
};

namespace atom {

struct DiracDelta {
  double t0 = 0.0;
};
struct Constant {};
struct Signum {};

enum class Orientation { Forward, Reversed };  // u(t) / u(-t)

struct UnitStep {
  Orientation orientation = Orientation::Forward;
};
/// exp(-a t) on the whole line.
struct TwoSidedExp {
  cplx a;
};
/// exp(-a |t|).
struct AbsExp {
  cplx a;
};
struct ComplexExp {
  double omega0 = 0.0;
};
struct Cosine {
  double omega0 = 0.0;
};
struct Sine {
  double omega0 = 0.0;
};
/// t^m, m > -1. For t < 0 the principal value exp(j pi m) |t|^m is used.
struct Power {
  double m = 0.0;
};
/// |t|^m, m > -1.
struct AbsPower {
  double m = 0.0;
};
/// 1 / t^m, m >= 1. For t < 0 the value is exp(-j pi m) / |t|^m.
struct InversePower {
  double m = 1.0;
};

enum class Oscillation { None, Cos, Sin };

/// (t - t0)^k exp(rate (t - t0)) osc(omega (t - t0)) restricted to one side of t0.
///
/// side = +1 keeps t >= t0, side = -1 keeps t < t0, side = 0 keeps every t.
/// Solvers and rational inversion produce these; the catalog covers them for
/// side +1 with t0 >= 0, side -1 with t0 <= 0 and side 0 with t0 = 0.
struct Gated {
  int k = 0;
  cplx rate;
  Oscillation osc = Oscillation::None;
  double omega = 0.0;
  double t0 = 0.0;
  int side = 1;
};

}  // namespace atom

using SignalAtom =
    std::variant<atom::DiracDelta, atom::Constant, atom::Signum, atom::UnitStep,
                 atom::TwoSidedExp, atom::AbsExp, atom::ComplexExp, atom::Cosine,
                 atom::Sine, atom::Power, atom::AbsPower, atom::InversePower,
                 atom::Gated>;

/// Throws ConstraintError when an atom's parameters are out of range.
void validate_atom(const SignalAtom& a);

struct SignalTerm {
  cplx coef;
  SignalAtom atom;
};

/// Weighted sum of atoms; the empty sum is the zero signal.
class SignalSpec {
 public:
  SignalSpec() = default;
  explicit SignalSpec(std::vector<SignalTerm> terms);

  SignalSpec& add(cplx coef, SignalAtom atom);
  const std::vector<SignalTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  bool has_deltas() const;

  SignalSpec& operator+=(const SignalSpec& other);
  SignalSpec& operator*=(cplx factor);

 private:
  std::vector<SignalTerm> terms_;
};

SignalSpec operator+(SignalSpec a, const SignalSpec& b);
SignalSpec operator*(cplx factor, SignalSpec a);

/// exp(j pi m) with exact +-1 for integer m.
cplx unit_phase(double m);

cplx evaluate_atom(const SignalAtom& a, double t);

/// Pointwise value; u(0) = 1 and sgn(0) = 0. Throws DomainError at a delta
/// location or where an inverse power is singular.
cplx evaluate_signal(const SignalSpec& spec, double t);

/// Same as evaluate_signal but deltas contribute nothing (the regular part).
cplx evaluate_regular(const SignalSpec& spec, double t);

/// x(-t) as a spec. Non-integer powers have no single-atom reflection and throw.
SignalSpec reflect(const SignalSpec& spec);

/// Merges equal atoms, drops zero coefficients, canonicalises gated atoms
/// that coincide with plain atoms and sorts into a deterministic order.
SignalSpec normalize(const SignalSpec& spec, double tol = 1e-10);

/// True when a - b normalises to the zero signal.
bool equivalent(const SignalSpec& a, const SignalSpec& b, double tol = 1e-9);

std::string describe(const SignalAtom& a);
std::string describe(const SignalSpec& s);

/// Uniformly sampled signal; linear interpolation inside, zero outside.
class SampledSignal {
 public:
  SampledSignal(double t_start, double dt, std::vector<cplx> values);

  double t_start() const noexcept { return t_start_; }
  double dt() const noexcept { return dt_; }
  double t_end() const noexcept;
  const std::vector<cplx>& values() const noexcept { return values_; }
  cplx operator()(double t) const;

 private:
  double t_start_;
  double dt_;
  std::vector<cplx> values_;
};

using TimeFunction = std::function<cplx(double)>;

/// Periodic signal described by one period on [0, T].
class PeriodicSignal {
 public:
  PeriodicSignal(double period, TimeFunction one_period);
  PeriodicSignal(double period, const SignalSpec& one_period);

  double period() const noexcept { return period_; }
  const TimeFunction& one_period() const noexcept { return one_period_; }
  /// Value of the periodic extension.
  cplx operator()(double t) const;

 private:
  double period_;
  TimeFunction one_period_;
};

/// Region of convergence. Continuous: Re{s} > bound. Discrete: |z| > bound.
class Roc {
 public:
  enum class Kind { EntirePlane, HalfPlane, EntireZPlane, OutsideCircle };

  static Roc entire_plane() { return Roc(Kind::EntirePlane, 0.0); }
  static Roc half_plane(double c);
  static Roc entire_z_plane() { return Roc(Kind::EntireZPlane, 0.0); }
  static Roc outside_circle(double r0);

  Kind kind() const noexcept { return kind_; }
  double bound() const noexcept { return bound_; }
  bool is_discrete() const noexcept {
    return kind_ == Kind::EntireZPlane || kind_ == Kind::OutsideCircle;
  }

  /// Continuous: sigma > c. Discrete: exp(sigma) > r0.
  bool contains(double sigma) const;
  Roc intersect(const Roc& other) const;
  std::string describe() const;

  friend bool operator==(const Roc&, const Roc&) = default;

 private:
  Roc(Kind kind, double bound) : kind_(kind), bound_(bound) {}
  Kind kind_;
  double bound_;
};

}  // namespace gft
