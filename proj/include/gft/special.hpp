#pragma once

#include "gft/signal_model.hpp"

namespace gft {

/// Gamma function for complex s (Lanczos, reflection below Re{s} = 1/2).
/// Positive integers up to 170 are exact factorials. Throws PoleError at 0, -1, -2, ...
cplx gamma_fn(cplx s);

enum class GammaKind { Lower, Upper };

/// Integral of exp(-tau) tau^(s-1) over [0, x] (Lower, Re{s} > 0) or [x, inf)
/// (Upper, any s). Lower uses the power series; Upper a continued fraction for
/// real s and quadrature otherwise.
cplx incomplete_gamma(GammaKind kind, cplx s, double x);

/// Riemann zeta by Euler-Maclaurin summation. Throws PoleError at s = 1.
cplx zeta(cplx s);

/// [exp(j pi (s - 1)) + 1] Gamma(s). Exactly 0 at even integers; PoleError at
/// negative odd integers.
cplx generalized_gamma(cplx s);

}  // namespace gft
