#pragma once

#include <vector>

#include "gft/signal_model.hpp"

namespace gft {

/// Complex polynomial, coefficients in ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::vector<cplx> ascending);
  static Polynomial monomial(cplx coef, int degree);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<cplx>& coefficients() const noexcept { return c_; }
  cplx operator[](int i) const { return (i >= 0 && i <= degree()) ? c_[static_cast<std::size_t>(i)] : cplx(0.0); }
  cplx leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }

  cplx operator()(cplx z) const;
  Polynomial derivative() const;
  /// Coefficients of p(a + h) in powers of h.
  Polynomial taylor_shift(cplx a) const;
  /// Roots by companion-matrix eigenvalues with Newton polishing.
  std::vector<cplx> roots() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx k);

 private:
  void trim();
  std::vector<cplx> c_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(cplx k, Polynomial a);

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};
DivMod divmod(const Polynomial& num, const Polynomial& den);

/// exp(-v delay) * numerator(v) / denominator(v), stored with a monic denominator.
class RationalFunction {
 public:
  RationalFunction(Polynomial numerator, Polynomial denominator, double delay = 0.0);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }
  double delay() const noexcept { return delay_; }
  cplx operator()(cplx v) const;

 private:
  Polynomial num_;
  Polynomial den_;
  double delay_;
};

struct PoleTerm {
  cplx residue;
  cplx pole;
  int multiplicity = 1;
};

/// sum residue / (v - pole)^multiplicity + polynomial(v), all times exp(-v delay).
struct PartialFractionForm {
  std::vector<PoleTerm> terms;
  std::vector<cplx> polynomial;
  double delay = 0.0;

  cplx operator()(cplx v) const;
};

/// Roots closer than `cluster_tol` (relative to max(1, |root|)) count as one repeated pole.
PartialFractionForm partial_fractions(const RationalFunction& r, double cluster_tol = 1e-6);

Roc roc_of(const PartialFractionForm& form);

/// Causal inverse (support t >= delay).
SignalSpec invert_lt_part(const PartialFractionForm& form);
/// Anticausal inverse: form is read in s* and the causal inverse is time-reflected.
SignalSpec invert_clt_part(const PartialFractionForm& form);

}  // namespace gft
