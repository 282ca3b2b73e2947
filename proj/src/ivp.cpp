#include "gft/ivp.hpp"

#include <algorithm>
#include <cmath>

#include "gft/catalog.hpp"
#include "gft/errors.hpp"
#include "gft/rational.hpp"

namespace gft {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// a_0 + a_1 v + ... from the highest-first coefficient list; sign_flip gives P(-v).
Polynomial characteristic(const std::vector<cplx>& highest_first, bool sign_flip) {
  const std::size_t M = highest_first.size() - 1;
  std::vector<cplx> asc(M + 1);
  for (std::size_t k = 0; k <= M; ++k) {
    cplx a = highest_first[M - k];
    if (sign_flip && (k % 2 == 1)) a = -a;
    asc[k] = a;
  }
  return Polynomial(std::move(asc));
}

Polynomial power_of_linear(cplx center, int n) {
  Polynomial out({1.0});
  for (int i = 0; i < n; ++i) out = out * Polynomial({-center, 1.0});
  return out;
}

// coef (v - c)^-p as numerator / denominator factors; p must be an integer.
void term_factors(const SpectrumTerm& t, Polynomial& num, Polynomial& den) {
  if (t.kind != SpectrumTerm::Kind::Power || std::abs(t.p - std::round(t.p)) > 1e-12)
    throw UnsupportedError("forcing spectrum is not rational (fractional power or logarithm)");
  const int p = static_cast<int>(std::lround(t.p));
  if (p >= 0) {
    num = Polynomial({t.coef});
    den = power_of_linear(t.center, p);
  } else {
    num = t.coef * power_of_linear(t.center, -p);
    den = Polynomial({1.0});
  }
}

// sum_k a_k sum_{i=1..k} v^{k-i} x^{(i-1)}(0), with v replaced by -v when flipped.
Polynomial initial_condition_polynomial(const OdeProblem& p, bool sign_flip) {
  const int M = p.order();
  Polynomial out;
  for (int k = 1; k <= M; ++k) {
    const cplx ak = p.coefficients[static_cast<std::size_t>(M - k)];
    if (ak == cplx(0.0)) continue;
    for (int i = 1; i <= k; ++i) {
      const int deg = k - i;
      cplx c = ak * p.initial_conditions[static_cast<std::size_t>(i - 1)];
      if (sign_flip && deg % 2 == 1) c = -c;
      out += Polynomial::monomial(c, deg);
    }
  }
  return out;
}

void check_growth(const PartialFractionForm& form, bool causal) {
  for (const auto& t : form.terms) {
    const double re = t.pole.real();
    if ((causal && re > 1e-12) || (!causal && re < -1e-12))
      throw UnsupportedError(
          "a homogeneous mode grows toward the half-line's infinity, so its Fourier transform does not exist; "
          "use solve_ode_gft");
  }
}

// Causal inversion of num/den * exp(-v delay) in the lt variable.
SignalSpec invert_causal(const Polynomial& num, const Polynomial& den, double delay, FtPolicy policy, bool check) {
  const PartialFractionForm form = partial_fractions(RationalFunction(num, den, delay));
  if (check && policy == FtPolicy::Strict) check_growth(form, true);
  return invert_lt_part(form);
}

// Right-sided inverse mapped to the left-sided rule, then placed at t0 = -advance.
SignalSpec left_sided(const SignalSpec& right, double advance) {
  SignalSpec out;
  for (const auto& t : right.terms()) {
    if (const auto* d = std::get_if<atom::DiracDelta>(&t.atom)) {
      (void)d;
      out.add(t.coef, atom::DiracDelta{-advance});
      continue;
    }
    const auto* g = std::get_if<atom::Gated>(&t.atom);
    if (g == nullptr) throw UnsupportedError("unexpected atom in a partial-fraction inverse");
    atom::Gated h = *g;
    h.side = -1;
    h.t0 = -advance;
    out.add(-t.coef, h);
  }
  return out;
}

std::vector<double> stencil(int order, double& h) {
  switch (order) {
    case 1:
      h = 1e-4;
      return {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
    case 2:
      h = 1e-4;
      return {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
    case 3:
      h = 1e-3;
      return {-0.5, 1.0, 0.0, -1.0, 0.5};
    case 4:
      h = 5e-3;
      return {1.0, -4.0, 6.0, -4.0, 1.0};
    default:
      throw ConstraintError("verification supports derivatives up to order 4");
  }
}

}  // namespace

void OdeProblem::validate() const {
  if (coefficients.size() < 2) throw ConstraintError("ODE order must be >= 1");
  for (const auto& a : coefficients)
    if (!finite(a)) throw ConstraintError("ODE coefficients must be finite");
  if (std::all_of(coefficients.begin(), coefficients.end(), [](cplx a) { return a == cplx(0.0); }))
    throw DegenerateError("characteristic polynomial is identically zero");
  if (coefficients.front() == cplx(0.0)) throw ConstraintError("leading coefficient a_M must be nonzero");
  if (initial_conditions.size() != coefficients.size() - 1)
    throw ConstraintError("expected exactly " + std::to_string(coefficients.size() - 1) + " initial conditions");
  for (const auto& x : initial_conditions)
    if (!finite(x)) throw ConstraintError("initial conditions must be finite");
}

SignalSpec solve_ode_gft(const OdeProblem& p) {
  p.validate();
  const Polynomial P = characteristic(p.coefficients, false);
  const Polynomial Q = characteristic(p.coefficients, true);  // P(-s*)
  const SpectrumExpr F = lookup_gft(p.forcing);

  SignalSpec out;
  // Causal half: P(s) X = F_lt + I(s).
  const Polynomial I = initial_condition_polynomial(p, false);
  if (!I.is_zero()) out = out + invert_lt_part(partial_fractions(RationalFunction(I, P)));
  for (const auto& t : F.lt) {
    Polynomial num, den;
    term_factors(t, num, den);
    out = out + invert_lt_part(partial_fractions(RationalFunction(num, den * P, t.delay)));
  }
  // Anticausal half: P(-s*) Xc = F_clt - J(s*).
  const Polynomial J = initial_condition_polynomial(p, true);
  if (!J.is_zero()) out = out + invert_clt_part(partial_fractions(RationalFunction(-1.0 * J, Q)));
  for (const auto& t : F.clt) {
    Polynomial num, den;
    term_factors(t, num, den);
    out = out + invert_clt_part(partial_fractions(RationalFunction(num, den * Q, t.delay)));
  }
  return normalize(out);
}

SignalSpec solve_ode_ft(const OdeProblem& p, FtPolicy policy) {
  p.validate();
  const Polynomial P = characteristic(p.coefficients, false);
  const SpectrumExpr F = lookup_gft(p.forcing);

  SignalSpec out;
  const Polynomial I = initial_condition_polynomial(p, false);
  if (!I.is_zero()) out = out + invert_causal(I, P, 0.0, policy, true);
  for (const auto& t : F.lt) {
    Polynomial num, den;
    term_factors(t, num, den);
    out = out + invert_causal(num, den * P, t.delay, policy, false);
  }

  // Anticausal half in s = j omega: the left-sided transform L(s) equals the
  // complementary transform at s* = -s, so P(-s*) becomes P(s) and
  // (-s*)^{k-i} becomes s^{k-i}. Forcing delays turn into advances.
  auto left_invert = [&](const Polynomial& num, const Polynomial& den, double advance, bool check) {
    const PartialFractionForm form = partial_fractions(RationalFunction(num, den));
    if (check && policy == FtPolicy::Strict) check_growth(form, false);
    return left_sided(invert_lt_part(form), advance);
  };
  const Polynomial J = initial_condition_polynomial(p, false);
  if (!J.is_zero()) out = out + left_invert(-1.0 * J, P, 0.0, true);
  for (const auto& t : F.clt) {
    Polynomial num, den;
    SpectrumTerm flipped = t;
    flipped.center = -t.center;  // (v - c) at v = -s is -(s + c)
    term_factors(flipped, num, den);
    const int pw = static_cast<int>(std::lround(t.p));
    // (-(s + c))^-p = (-1)^p (s + c)^-p
    if (pw % 2 != 0) num = -1.0 * num;
    out = out + left_invert(num, den * P, t.delay, false);
  }
  return normalize(out);
}

double verify_solution(const SignalSpec& sol, const OdeProblem& p, const std::vector<double>& grid) {
  p.validate();
  const int M = p.order();
  double worst = 0.0;
  for (double t : grid) {
    cplx lhs = 0.0;
    for (int k = 0; k <= M; ++k) {
      const cplx ak = p.coefficients[static_cast<std::size_t>(M - k)];
      if (ak == cplx(0.0)) continue;
      cplx dk;
      if (k == 0) {
        dk = evaluate_regular(sol, t);
      } else {
        double h = 0.0;
        const std::vector<double> w = stencil(k, h);
        dk = 0.0;
        for (int i = -2; i <= 2; ++i) {
          const double wi = w[static_cast<std::size_t>(i + 2)];
          if (wi != 0.0) dk += wi * evaluate_regular(sol, t + i * h);
        }
        dk /= std::pow(h, k);
      }
      lhs += ak * dk;
    }
    worst = std::max(worst, std::abs(lhs - evaluate_regular(p.forcing, t)));
  }
  return worst;
}

void DifferenceProblem::validate() const {
  if (coefficients.empty()) throw ConstraintError("difference equation needs b_0");
  for (const auto& b : coefficients)
    if (!finite(b)) throw ConstraintError("difference coefficients must be finite");
  if (coefficients.front() == cplx(0.0))
    throw DegenerateError("b_0 = 0: the recursion cannot be normalised to a causal update");
  if (initial_conditions.size() != coefficients.size() - 1)
    throw ConstraintError("expected exactly " + std::to_string(coefficients.size() - 1) + " initial conditions");
}

DifferenceSolution solve_difference(const DifferenceProblem& p, int n_samples) {
  p.validate();
  if (n_samples < 0) throw ConstraintError("sample count must be >= 0");
  const Polynomial B(p.coefficients);  // in w = 1/z
  const std::size_t K = p.coefficients.size() - 1;

  SequenceSpec out;
  // num(w) w^shift / den(w), expanded about w = 0 into causal modes.
  auto invert = [&](const Polynomial& num, const Polynomial& den, long shift) {
    const PartialFractionForm form = partial_fractions(RationalFunction(num, den));
    for (std::size_t d = 0; d < form.polynomial.size(); ++d)
      if (form.polynomial[d] != cplx(0.0)) out.add(form.polynomial[d], seq::DeltaN{shift + static_cast<long>(d)});
    for (const auto& t : form.terms) {
      // r (w - w_i)^-k = r (-w_i)^-k (1 - w / w_i)^-k
      const cplx wi = t.pole;
      const cplx c = t.residue * std::pow(-wi, -t.multiplicity);
      out.add(c, seq::PoleModeN{1.0 / wi, t.multiplicity, shift});
    }
  };

  // Initial-condition correction from the delay identity.
  Polynomial ic;
  for (std::size_t k = 1; k <= K; ++k)
    for (std::size_t l = 1; l <= k; ++l)
      ic += Polynomial::monomial(p.coefficients[k] * p.initial_conditions[l - 1], static_cast<int>(k - l));
  if (!ic.is_zero()) invert(-1.0 * ic, B, 0);

  const ZSpectrumExpr F = gdtft_closed_form(p.forcing);
  for (const auto& t : F.lt) {
    if (t.stride != 1) throw UnsupportedError("forcing with stride > 1 is not supported");
    if (t.shift < 0) throw UnsupportedError("forcing term with a negative power of z^-1");
    Polynomial den = B;
    for (int i = 0; i < t.order; ++i) den = den * Polynomial({1.0, -t.ratio});
    invert(Polynomial({t.coef}), den, t.shift);
  }

  DifferenceSolution sol;
  sol.closed_form = std::move(out);
  sol.samples.reserve(static_cast<std::size_t>(n_samples));
  for (int n = 0; n < n_samples; ++n) sol.samples.push_back(evaluate_sequence(sol.closed_form, n));
  return sol;
}

std::vector<cplx> recurse_difference(const DifferenceProblem& p, int n_samples) {
  p.validate();
  const std::size_t K = p.coefficients.size() - 1;
  std::vector<cplx> x;
  auto at = [&](long n) -> cplx {
    if (n < 0) return p.initial_conditions[static_cast<std::size_t>(-n - 1)];
    return x[static_cast<std::size_t>(n)];
  };
  for (long n = 0; n < n_samples; ++n) {
    cplx acc = evaluate_sequence(p.forcing, n);
    for (std::size_t k = 1; k <= K; ++k) acc -= p.coefficients[k] * at(n - static_cast<long>(k));
    x.push_back(acc / p.coefficients[0]);
  }
  return x;
}

}  // namespace gft
