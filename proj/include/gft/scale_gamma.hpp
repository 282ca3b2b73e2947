#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "gft/quadrature.hpp"
#include "gft/signal_model.hpp"

namespace gft {

/// Lower piece Y_L(s, 1) and upper piece Y_U(-s*, 1) of a scale transform.
struct FstValue {
  cplx lower;
  cplx upper;
  cplx total() const { return lower + upper; }
};

/// Partial Mellin transforms split at tau = 1, each as a function of its own order:
/// lower(s) = integral over (0, 1] of y tau^(s-1), upper(u) = integral over [1, inf) of y tau^(u-1).
/// The scale transform at s is lower(s) + upper(-s*).
struct MellinPair {
  std::function<cplx(cplx)> lower;
  std::function<cplx(cplx)> upper;
};

FstValue evaluate(const MellinPair& pair, const ComplexFrequency& f);

namespace fst {
/// delta(tau - t0), t0 > 0; t0 = 1 belongs to the lower piece.
struct Delta {
  double t0 = 1.0;
};
/// exp(-a tau), a > 0.
struct ExpDecay {
  double a = 1.0;
};
struct Step {};
/// tau^a.
struct Power {
  cplx a;
};
/// 1 / (exp(tau) - 1).
struct BoseEinstein {};
}  // namespace fst

using FstAtom = std::variant<fst::Delta, fst::ExpDecay, fst::Step, fst::Power, fst::BoseEinstein>;

/// Closed forms; each piece throws RegionError outside its convergence region.
MellinPair fst_catalog(const FstAtom& atom, double abs_tol = 1e-15);

/// Both pieces by quadrature after tau = exp(-+t). A divergent piece throws
/// RegionError naming the side.
MellinPair mellin_pair(const TimeFunction& y, const QuadratureConfig& cfg = {});

FstValue fst_forward(const TimeFunction& y, const ComplexFrequency& f, const QuadratureConfig& cfg = {});
FstValue fst_forward(const FstAtom& atom, const ComplexFrequency& f);

/// Y_L(s, tau_c) and Y_U(s, tau_c); tau_c = inf gives (full transform, 0).
cplx mellin_lower(const TimeFunction& y, cplx s, double tau_c, const QuadratureConfig& cfg = {});
cplx mellin_upper(const TimeFunction& y, cplx s, double tau_c, const QuadratureConfig& cfg = {});
struct MellinSplit {
  cplx lower;
  cplx upper;
};
MellinSplit mellin_partial(const TimeFunction& y, cplx s, double tau_c, const QuadratureConfig& cfg = {});

/// Inverse along Re{s} = sigma: the lower line for tau < 1, the upper line for
/// tau > 1. At tau = 1 each line returns half the value; both are computed,
/// checked against each other and summed.
cplx ifst_numeric(const std::function<cplx(cplx)>& lower, const std::function<cplx(cplx)>& upper, double sigma,
                  double tau, const QuadratureConfig& cfg = {});

namespace fop {
/// y(a tau). The split point moves to a, so the signal itself is needed for
/// the correction integral between 1 and a.
struct Scale {
  double a = 1.0;
  TimeFunction y;
};
/// tau^m y(tau).
struct MulPower {
  double m = 1.0;
};
/// y' (order 1) or y'' (order 2); y(1) and for order 2 also y'(1) are required.
struct Derivative {
  int order = 1;
  std::optional<cplx> y1;
  std::optional<cplx> dy1;
};
/// tau y'(tau).
struct TDerivative {
  std::optional<cplx> y1;
};
}  // namespace fop

using FstOp = std::variant<fop::Scale, fop::MulPower, fop::Derivative, fop::TDerivative>;

MellinPair fst_apply_property(const MellinPair& pair, const FstOp& op);

/// Real density on the line.
using Pdf = std::function<double(double)>;

/// Throws ValidationError unless the density is nonnegative on a probe grid and
/// integrates to 1 within 1e-6.
void validate_pdf(const Pdf& pdf, const QuadratureConfig& cfg = {});

/// Damped moment generating function: the two half-line integrals at s* and s.
cplx mgf_eval(const Pdf& pdf, const ComplexFrequency& f, const QuadratureConfig& cfg = {});

struct HalfLineMoments {
  /// integral over y >= 0 of (-y)^m f(-y), m = 0..M.
  std::vector<double> negative;
  /// integral over y >= 0 of y^m f(y), m = 0..M.
  std::vector<double> positive;
};

HalfLineMoments half_line_moments(const Pdf& pdf, int M, const QuadratureConfig& cfg = {});

/// Truncated series sum_m (s*)^m/m! M_nm + (-s)^m/m! M_pm.
cplx mgf_series(const HalfLineMoments& moments, const ComplexFrequency& f);

struct MgfSeriesReport {
  HalfLineMoments moments;
  /// Largest |series - mgf_eval| over the probe points.
  double max_error = 0.0;
  bool passed = false;
};

/// Compares the truncated series with mgf_eval on probe points |s| <= radius, Re{s} >= 0.
MgfSeriesReport mgf_series_check(const Pdf& pdf, double radius, int M, double tol = 1e-6,
                                 const QuadratureConfig& cfg = {});

struct MomentReport {
  int order = 0;
  double sigma = 0.0;
  double value = 0.0;
  bool converged = false;
};

/// (1/pi) integral of y^m exp(-sigma |y|) / (1 + y^2): exactly 0 for odd m.
MomentReport cauchy_damped_moment(int m, double sigma, const QuadratureConfig& cfg = {});

}  // namespace gft
