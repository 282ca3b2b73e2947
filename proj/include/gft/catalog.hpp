#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gft/signal_model.hpp"

namespace gft {

/// One additive term of a one-sided spectrum in the variable v (s or s*).
///
/// Power kind: coef * exp(-v * delay) * (v - center)^(-p). Positive integer p
/// is a pole of that multiplicity, non-integer p a fractional power, p = 0 a
/// constant and negative integer p a polynomial factor.
/// Log kind: coef * exp(-v * delay) * log(v - center), produced by division by t.
struct SpectrumTerm {
  enum class Kind { Power, Log };
  cplx coef{1.0, 0.0};
  cplx center{0.0, 0.0};
  double p = 0.0;
  double delay = 0.0;
  Kind kind = Kind::Power;

  bool is_pole() const { return kind == Kind::Power && p > 0; }
};

SpectrumTerm rational_pole(cplx coef, cplx pole, int multiplicity);
SpectrumTerm fractional_power(cplx coef, double p);
SpectrumTerm unity(cplx coef = 1.0);
/// exp(-v t0) * inner, t0 >= 0.
SpectrumTerm delayed(double t0, SpectrumTerm inner);

struct SpectrumExpr {
  std::vector<SpectrumTerm> clt;  // variable s*
  std::vector<SpectrumTerm> lt;   // variable s
  Roc roc = Roc::entire_plane();
};

/// Value of one side at v. Throws PoleError exactly at a singularity.
cplx eval_terms(const std::vector<SpectrumTerm>& terms, cplx v);

/// clt part at s* plus lt part at s. Throws RegionError outside the ROC.
cplx eval_spectrum(const SpectrumExpr& expr, const ComplexFrequency& f);

/// Transform of a signal. With `weight_p` set, the result is the transform of
/// |t|^p x(t); inverse-power atoms require it (p > m - 1).
SpectrumExpr lookup_gft(const SignalSpec& spec, std::optional<double> weight_p = std::nullopt);

SpectrumExpr operator+(const SpectrumExpr& a, const SpectrumExpr& b);
SpectrumExpr operator*(cplx k, SpectrumExpr e);

/// Merges terms of identical shape and drops zero coefficients.
SpectrumExpr simplify(const SpectrumExpr& e, double tol = 1e-13);

/// Transform of |t|^p x(t) from the transform of x (requires undelayed poles).
SpectrumExpr weight_by_power(const SpectrumExpr& e, double p);

namespace op {
struct SgnDelay {
  double t0 = 0.0;
};
struct Scale {
  double a = 1.0;
};
struct Reverse {};
/// m-th derivative. `right` holds x(0+), x'(0+), ...; `left` the limits from
/// t < 0. Leave `left` empty when the signal is smooth at the origin.
struct Derivative {
  int m = 1;
  std::vector<cplx> right;
  std::vector<cplx> left;
};
struct RunningIntegral {};

struct ExpTwoSided {
  cplx a;
};
struct ExpAbs {
  cplx a;
};
struct MulPower {
  int m = 1;
};
struct MulAbsPower {
  double m = 1.0;
};
struct DivT {};
struct DivAbsT {};
}  // namespace op

using TimeOp = std::variant<op::SgnDelay, op::Scale, op::Reverse, op::Derivative, op::RunningIntegral>;
using ModulationOp =
    std::variant<op::ExpTwoSided, op::ExpAbs, op::MulPower, op::MulAbsPower, op::DivT, op::DivAbsT>;

SpectrumExpr apply_time_property(const SpectrumExpr& e, const TimeOp& o);
SpectrumExpr apply_modulation_property(const SpectrumExpr& e, const ModulationOp& o);

/// Coefficient `weight` of delta(omega - omega0) in the sigma -> 0 limit.
struct DistributionalAtom {
  double omega0 = 0.0;
  cplx weight;
};

struct FtLimit {
  cplx regular;
  std::vector<DistributionalAtom> atoms;
  bool is_finite() const { return atoms.empty(); }
};

/// sigma -> 0 limit at omega. Simple poles on the imaginary axis become delta
/// atoms; a query exactly on an unmatched axis singularity, or any higher-order
/// axis pole, throws DivergenceError.
FtLimit ft_limit_symbolic(const SpectrumExpr& e, double omega);

std::string describe(const SpectrumTerm& t, const char* var);
std::string describe(const SpectrumExpr& e);

}  // namespace gft
