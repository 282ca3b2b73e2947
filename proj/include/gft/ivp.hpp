#pragma once

#include <vector>

#include "gft/gdtft.hpp"
#include "gft/signal_model.hpp"

namespace gft {

/// sum_k a_k x^(k)(t) = forcing(t) with x(0), ..., x^(M-1)(0) given.
struct OdeProblem {
  /// a_M, ..., a_0 (highest derivative first).
  std::vector<cplx> coefficients;
  SignalSpec forcing;
  /// x(0), x'(0), ..., x^(M-1)(0).
  std::vector<cplx> initial_conditions;

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
  void validate() const;
};

/// Two-sided solution from the causal and anticausal transform equations.
SignalSpec solve_ode_gft(const OdeProblem& p);

enum class FtPolicy {
  /// Accept growing half-line modes and report them, as the transform algebra does.
  Permissive,
  /// Refuse when a causal mode grows as t -> +inf or an anticausal one as t -> -inf.
  Strict,
};

/// Same equations on s = j omega, with the anticausal half inverted by the
/// left-sided rule r / (s - a)^k -> -r t^(k-1) e^(a t) / (k-1)! u(-t).
SignalSpec solve_ode_ft(const OdeProblem& p, FtPolicy policy = FtPolicy::Permissive);

/// Max |sum_k a_k x^(k)(t) - forcing_regular(t)| over the grid, derivatives by
/// 5-point central differences (h = 1e-4 up to second order, larger above).
double verify_solution(const SignalSpec& sol, const OdeProblem& p, const std::vector<double>& grid);

/// sum_k b_k x[n-k] = f[n] for n >= 0 with x[-1], ..., x[-K] given.
struct DifferenceProblem {
  /// b_0, ..., b_K.
  std::vector<cplx> coefficients;
  SequenceSpec forcing;
  /// x[-1], ..., x[-K].
  std::vector<cplx> initial_conditions;

  void validate() const;
};

struct DifferenceSolution {
  /// Valid for n >= 0.
  SequenceSpec closed_form;
  /// x[0], ..., x[N-1].
  std::vector<cplx> samples;
};

DifferenceSolution solve_difference(const DifferenceProblem& p, int n_samples = 65);

/// x[0], ..., x[N-1] by running the recursion forward.
std::vector<cplx> recurse_difference(const DifferenceProblem& p, int n_samples);

}  // namespace gft
