#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gft/quadrature.hpp"
#include "gft/signal_model.hpp"

namespace gft {

namespace seq {

struct DeltaN {
  long n0 = 0;
};
struct ConstantN {};
struct SignumN {};  // sgn[0] = 0
struct UnitStepN {
  atom::Orientation orientation = atom::Orientation::Forward;  // u[0] = 1 either way
};
/// a^n for every n.
struct GeometricN {
  cplx a;
};
/// a^|n|, |a| < 1.
struct AbsGeometricN {
  cplx a;
};
struct ComplexExpN {
  double Omega0 = 0.0;
};
struct CosineN {
  double Omega0 = 0.0;
};
struct SineN {
  double Omega0 = 0.0;
};
/// C(n - n0 + m - 1, m - 1) p^(n - n0) u[n - n0]: the causal mode of a pole of order m.
struct PoleModeN {
  cplx p;
  int m = 1;
  long n0 = 0;
};

}  // namespace seq

using SequenceAtom = std::variant<seq::DeltaN, seq::ConstantN, seq::SignumN, seq::UnitStepN, seq::GeometricN,
                                  seq::AbsGeometricN, seq::ComplexExpN, seq::CosineN, seq::SineN, seq::PoleModeN>;

struct SequenceTerm {
  cplx coef;
  SequenceAtom atom;
};

class SequenceSpec {
 public:
  SequenceSpec() = default;
  explicit SequenceSpec(std::vector<SequenceTerm> terms);
  SequenceSpec& add(cplx coef, SequenceAtom atom);
  const std::vector<SequenceTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

 private:
  std::vector<SequenceTerm> terms_;
};

cplx evaluate_atom(const SequenceAtom& a, long n);
cplx evaluate_sequence(const SequenceSpec& s, long n);
std::string describe(const SequenceAtom& a);
std::string describe(const SequenceSpec& s);

/// coef * w^shift * (1 - ratio w^stride)^(-order), with w = 1/z (lt) or 1/z* (clt).
struct ZTerm {
  cplx coef{1.0, 0.0};
  cplx ratio{0.0, 0.0};
  int order = 0;
  long shift = 0;
  int stride = 1;
};

/// clt holds samples n <= -1 (as powers of 1/z*), lt holds n >= 0 (powers of 1/z).
struct ZSpectrumExpr {
  std::vector<ZTerm> clt;
  std::vector<ZTerm> lt;
  Roc roc = Roc::entire_z_plane();
};

cplx eval_zterms(const std::vector<ZTerm>& terms, cplx w);
cplx eval_zspectrum(const ZSpectrumExpr& e, const DiscreteFrequency& f);
/// Coefficient of w^power in the power-series expansion of the terms.
cplx series_coefficient(const std::vector<ZTerm>& terms, long power);
/// x[n] read back from the expression.
cplx sample_of(const ZSpectrumExpr& e, long n);
/// |z| > max |ratio|^(1/stride) over pole terms, entire plane without poles.
Roc zroc_of(const ZSpectrumExpr& e);
ZSpectrumExpr simplify(const ZSpectrumExpr& e, double tol = 1e-13);

ZSpectrumExpr gdtft_closed_form(const SequenceSpec& s);

struct SeriesValue {
  cplx value;
  /// Geometric estimate of the truncated tail.
  double tail_bound = 0.0;
};

using SequenceFunction = std::function<cplx(long)>;

/// Partial sums of both one-sided series up to |n| = n_max.
SeriesValue gdtft_numeric(const SequenceFunction& x, const DiscreteFrequency& f, long n_max,
                          double abs_tol = 1e-12);
/// Finite sequence; values[i] is x[n_start + i].
SeriesValue gdtft_numeric(const std::vector<cplx>& values, long n_start, const DiscreteFrequency& f);

using ZEvaluator = std::function<cplx(double Omega, double sigma)>;

/// Trapezoid rule on [-pi, pi) starting at `panels` points and doubling until
/// successive results differ by less than abs_tol; times exp(sigma |n|).
cplx igdtft_numeric(const ZEvaluator& X, double sigma, long n, int panels = 64, double abs_tol = 1e-12);

namespace zop {
struct Delay {
  long m = 0;
};
struct Advance {
  long m = 0;
};
struct Reverse {};
struct Expand {
  int k = 1;
};
/// x[-1] defaults to the sample read from the expression.
struct FirstDifference {
  std::optional<cplx> x_minus1;
};
struct Accumulate {};
/// a^{-n} x[n].
struct GeometricModulate {
  cplx a;
};
struct MulNPower {
  int m = 1;
};
}  // namespace zop

using ZOp = std::variant<zop::Delay, zop::Advance, zop::Reverse, zop::Expand, zop::FirstDifference, zop::Accumulate,
                         zop::GeometricModulate, zop::MulNPower>;

/// Boundary samples used by the correction sums are read from the expression.
ZSpectrumExpr apply_gdtft_property(const ZSpectrumExpr& e, const ZOp& op);

}  // namespace gft
