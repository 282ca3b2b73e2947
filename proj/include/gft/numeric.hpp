#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "gft/quadrature.hpp"
#include "gft/signal_model.hpp"

namespace gft {

/// Weight |t|^p exp(-sigma |t|^q); (0, 1) is the plain transform.
struct WeightSpec {
  double p = 0.0;
  double q = 1.0;
  void validate() const;
};

/// Spectrum as a function of (sigma, omega).
using SpectrumEvaluator = std::function<cplx(double sigma, double omega)>;

cplx gft_forward(const TimeFunction& x, const ComplexFrequency& f, const WeightSpec& w = {},
                 const QuadratureConfig& cfg = {});
cplx gft_forward(const SampledSignal& x, const ComplexFrequency& f, const WeightSpec& w = {},
                 const QuadratureConfig& cfg = {});
/// Regular part by quadrature, delta atoms in closed form.
cplx gft_forward(const SignalSpec& x, const ComplexFrequency& f, const WeightSpec& w = {},
                 const QuadratureConfig& cfg = {});

struct SplitValue {
  cplx clt;
  cplx lt;
};

SplitValue clt_lt_split(const TimeFunction& x, const ComplexFrequency& f, const QuadratureConfig& cfg = {});
/// A delta at the origin is counted in the lt half.
SplitValue clt_lt_split(const SignalSpec& x, const ComplexFrequency& f, const QuadratureConfig& cfg = {});

/// x(t) = exp(sigma |t|) / (2 pi) * integral of X(omega, sigma) exp(j omega t) d omega.
cplx igft_reconstruct(const SpectrumEvaluator& spectrum, double sigma, double t,
                      const QuadratureConfig& cfg = {});

/// The two one-sided syntheses evaluated at t = 0: the lt half integrated
/// along Re{s} = sigma and the clt half along Re{s*} = sigma.
struct OriginSynthesis {
  cplx from_lt;
  cplx from_clt;
  /// Sum of the halves, the value the full synthesis assigns to t = 0.
  cplx total;
  /// Whether the two halves agree to within `tol`.
  bool halves_agree;
};

OriginSynthesis synthesize_at_origin(const std::function<cplx(cplx)>& lt_part,
                                     const std::function<cplx(cplx)>& clt_part, double sigma,
                                     const QuadratureConfig& cfg = {}, double tol = 1e-6);

struct LadderConfig {
  double sigma0 = 0.5;
  int depth = 5;
  /// Number of trailing ladder values used by the extrapolation.
  int richardson_terms = 4;
};

/// Extrapolates gft_forward(sigma_k, omega), sigma_k = sigma0 2^-k, to sigma = 0.
/// Throws DivergenceError when the ladder grows by more than 10x monotonically.
cplx ft_limit_numeric(const TimeFunction& x, double omega, const LadderConfig& ladder = {},
                      const QuadratureConfig& cfg = {}, const WeightSpec& w = {});
cplx ft_limit_numeric(const SignalSpec& x, double omega, const LadderConfig& ladder = {},
                      const QuadratureConfig& cfg = {}, const WeightSpec& w = {});

/// Geometric-series formula for a periodic signal; requires sigma > 0.
cplx periodic_gft(const PeriodicSignal& px, const ComplexFrequency& f, const QuadratureConfig& cfg = {});

using PlaneFunction = std::function<cplx(double, double)>;

/// Iterated quadrature of g exp(-sigma (|x1| + |x2|)) exp(-j (w1 x1 + w2 x2)).
cplx md_gft_2d(const PlaneFunction& g, double sigma, double omega1, double omega2,
               const QuadratureConfig& cfg = {});

/// sqrt(2/pi) * integral over t >= 0 of x exp(-sigma t) cos(omega t).
cplx damped_fct(const TimeFunction& x, double sigma, double omega, const QuadratureConfig& cfg = {});
using CosineSpectrum = std::function<cplx(double omega)>;
cplx damped_ifct(const CosineSpectrum& xc, double sigma, double t, const QuadratureConfig& cfg = {});

/// Mother wavelet with its admissibility constant, computed once.
class WaveletSpec {
 public:
  /// `support` bounds |t| beyond which the mother is negligible.
  WaveletSpec(TimeFunction mother, double support);
  /// Uses a known admissibility constant instead of computing it.
  WaveletSpec(TimeFunction mother, double support, double admissibility);

  cplx operator()(double t) const { return mother_(t); }
  double support() const noexcept { return support_; }
  double admissibility() const;

 private:
  TimeFunction mother_;
  double support_;
  std::shared_ptr<const double> c_psi_;
};

/// (1 - t^2) exp(-t^2 / 2); its admissibility constant is 2 pi.
WaveletSpec mexican_hat();

cplx damped_cwt(const TimeFunction& x, double sigma, double a, double b, const WaveletSpec& psi,
                const QuadratureConfig& cfg = {});

struct CwtGrid {
  double a_min = 1.0 / 64.0;
  double a_max = 64.0;
  int a_points = 64;
  /// b spans t +- b_halfwidth |a| with b_points samples.
  double b_halfwidth = 6.0;
  int b_points = 64;
};

using CwtCoefficients = std::function<cplx(double a, double b)>;

/// Discretised inverse on a log grid in |a| (both signs) and a linear b window.
cplx damped_icwt(const CwtCoefficients& coeffs, double sigma, double t, const WaveletSpec& psi,
                 const CwtGrid& grid = {});

}  // namespace gft
