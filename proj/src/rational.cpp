#include "gft/rational.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "gft/errors.hpp"

namespace gft {

Polynomial::Polynomial(std::vector<cplx> ascending) : c_(std::move(ascending)) {
  for (const auto& z : c_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ConstraintError("polynomial coefficients must be finite");
  trim();
}

Polynomial Polynomial::monomial(cplx coef, int degree) {
  if (degree < 0) throw ConstraintError("monomial degree must be >= 0");
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coef;
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

cplx Polynomial::operator()(cplx z) const {
  cplx r = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * z + *it;
  return r;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::taylor_shift(cplx a) const {
  // Repeated synthetic division (Horner's scheme for all derivatives).
  std::vector<cplx> b = c_;
  const std::size_t n = b.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t i = n - 1; i > k; --i) b[i - 1] += a * b[i];
  return Polynomial(std::move(b));
}

std::vector<cplx> Polynomial::roots() const {
  const int n = degree();
  if (n < 1) return {};
  // Roots at zero are split off exactly.
  std::size_t zeros = 0;
  while (zeros < c_.size() && c_[zeros] == cplx(0.0)) ++zeros;
  std::vector<cplx> out(zeros, cplx(0.0));
  std::vector<cplx> q(c_.begin() + static_cast<long>(zeros), c_.end());
  const int m = static_cast<int>(q.size()) - 1;
  if (m >= 1) {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) comp(i, m - 1) = -q[static_cast<std::size_t>(i)] / q.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw ConvergenceError("companion eigenvalue solver failed");
    Polynomial p(q);
    Polynomial dp = p.derivative();
    for (int i = 0; i < m; ++i) {
      cplx r = es.eigenvalues()(i);
      for (int it = 0; it < 3; ++it) {
        const cplx d = dp(r);
        if (std::abs(d) < 1e-14 * std::max(1.0, std::abs(p.leading()))) break;
        const cplx step = p(r) / d;
        const cplx trial = r - step;
        if (std::abs(p(trial)) >= std::abs(p(r))) break;
        r = trial;
      }
      out.push_back(r);
    }
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx k) {
  for (auto& z : c_) z *= k;
  trim();
  return *this;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator*(cplx k, Polynomial a) { return a *= k; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> c(a.coefficients().size() + b.coefficients().size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coefficients().size(); ++i)
    for (std::size_t j = 0; j < b.coefficients().size(); ++j) c[i + j] += a.coefficients()[i] * b.coefficients()[j];
  return Polynomial(std::move(c));
}

DivMod divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DegenerateError("division by the zero polynomial");
  const int dn = den.degree();
  std::vector<cplx> r = num.coefficients();
  if (num.degree() < dn) return {Polynomial{}, num};
  std::vector<cplx> q(static_cast<std::size_t>(num.degree() - dn) + 1, 0.0);
  for (int k = num.degree() - dn; k >= 0; --k) {
    const cplx f = r[static_cast<std::size_t>(k + dn)] / den.leading();
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= dn; ++j) r[static_cast<std::size_t>(k + j)] -= f * den[j];
    r[static_cast<std::size_t>(k + dn)] = 0.0;
  }
  r.resize(static_cast<std::size_t>(dn));
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator, double delay)
    : num_(std::move(numerator)), den_(std::move(denominator)), delay_(delay) {
  if (den_.is_zero()) throw DegenerateError("rational function with zero denominator");
  if (!(delay >= 0) || !std::isfinite(delay)) throw ConstraintError("delay must be finite and >= 0");
  const cplx lead = den_.leading();
  num_ *= 1.0 / lead;
  den_ *= 1.0 / lead;
}

cplx RationalFunction::operator()(cplx v) const {
  const cplx d = den_(v);
  if (d == cplx(0.0)) throw PoleError("rational function evaluated at a pole");
  cplx r = num_(v) / d;
  if (delay_ != 0.0) r *= std::exp(-v * delay_);
  return r;
}

cplx PartialFractionForm::operator()(cplx v) const {
  cplx sum = Polynomial(polynomial)(v);
  for (const auto& t : terms) {
    const cplx w = v - t.pole;
    if (w == cplx(0.0)) throw PoleError("partial fraction evaluated at a pole");
    sum += t.residue / std::pow(w, t.multiplicity);
  }
  if (delay != 0.0) sum *= std::exp(-v * delay);
  return sum;
}

PartialFractionForm partial_fractions(const RationalFunction& r, double cluster_tol) {
  PartialFractionForm out;
  out.delay = r.delay();
  DivMod dm = divmod(r.numerator(), r.denominator());
  out.polynomial = dm.quotient.coefficients();
  if (dm.remainder.is_zero()) return out;

  // Cluster roots: a k-fold root comes back split by about eps^(1/k).
  struct Cluster {
    cplx sum;
    int count;
    cplx center() const { return sum / static_cast<double>(count); }
  };
  std::vector<Cluster> clusters;
  for (const cplx& z : r.denominator().roots()) {
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
      return std::abs(c.center() - z) <= cluster_tol * std::max(1.0, std::abs(z));
    });
    if (it == clusters.end())
      clusters.push_back({z, 1});
    else {
      it->sum += z;
      ++it->count;
    }
  }

  // A k-fold root is a simple root of the (k-1)-th derivative, where Newton converges quadratically.
  for (auto& cl : clusters) {
    if (cl.count < 2) continue;
    Polynomial g = r.denominator();
    for (int k = 1; k < cl.count; ++k) g = g.derivative();
    const Polynomial dg = g.derivative();
    cplx z = cl.center();
    for (int it = 0; it < 8; ++it) {
      const cplx d = dg(z);
      if (d == cplx(0.0)) break;
      const cplx next = z - g(z) / d;
      if (!(std::abs(g(next)) < std::abs(g(z)))) break;
      z = next;
    }
    cl.sum = z * static_cast<double>(cl.count);
  }

  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const cplx a = clusters[i].center();
    const int m = clusters[i].count;
    // Deflated denominator from the other clusters, then N/D expanded about a.
    Polynomial defl({1.0});
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      if (j == i) continue;
      const cplx b = clusters[j].center();
      for (int k = 0; k < clusters[j].count; ++k) defl = defl * Polynomial({-b, 1.0});
    }
    const Polynomial n = dm.remainder.taylor_shift(a);
    const Polynomial d = defl.taylor_shift(a);
    // Series division: sum c_j h^j = n(h) / d(h), first m coefficients.
    std::vector<cplx> c(static_cast<std::size_t>(m), 0.0);
    for (int j = 0; j < m; ++j) {
      cplx acc = n[j];
      for (int l = 1; l <= j; ++l) acc -= d[l] * c[static_cast<std::size_t>(j - l)];
      c[static_cast<std::size_t>(j)] = acc / d[0];
    }
    for (int j = 0; j < m; ++j) {
      const cplx res = c[static_cast<std::size_t>(j)];
      if (res == cplx(0.0)) continue;
      out.terms.push_back({res, a, m - j});
    }
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const PoleTerm& x, const PoleTerm& y) {
    if (x.pole.real() != y.pole.real()) return x.pole.real() < y.pole.real();
    if (x.pole.imag() != y.pole.imag()) return x.pole.imag() < y.pole.imag();
    return x.multiplicity < y.multiplicity;
  });
  return out;
}

Roc roc_of(const PartialFractionForm& form) {
  if (form.terms.empty()) return Roc::entire_plane();
  double c = -INFINITY;
  for (const auto& t : form.terms) c = std::max(c, t.pole.real());
  return Roc::half_plane(c);
}

SignalSpec invert_lt_part(const PartialFractionForm& form) {
  SignalSpec out;
  Polynomial poly(form.polynomial);
  if (poly.degree() >= 1)
    throw UnsupportedError("polynomial part of degree >= 1 would need delta derivatives");
  if (poly.degree() == 0) out.add(poly[0], atom::DiracDelta{form.delay});

  std::vector<bool> used(form.terms.size(), false);
  constexpr double kTol = 1e-9;
  for (std::size_t i = 0; i < form.terms.size(); ++i) {
    if (used[i]) continue;
    const PoleTerm& t = form.terms[i];
    const int k = t.multiplicity - 1;
    const double kf = std::tgamma(static_cast<double>(k) + 1.0);
    used[i] = true;
    const cplx a = t.pole;
    bool paired = false;
    if (std::abs(a.imag()) > kTol * std::max(1.0, std::abs(a))) {
      // Look for the conjugate pole with a conjugate residue.
      for (std::size_t j = i + 1; j < form.terms.size(); ++j) {
        const PoleTerm& u = form.terms[j];
        if (used[j] || u.multiplicity != t.multiplicity) continue;
        if (std::abs(u.pole - std::conj(a)) > kTol * std::max(1.0, std::abs(a))) continue;
        if (std::abs(u.residue - std::conj(t.residue)) > kTol * std::max(1.0, std::abs(t.residue))) continue;
        used[j] = paired = true;
        // r e^{(al + j be) t} + conj = 2 e^{al t} (Re r cos(be t) - Im r sin(be t))
        const cplx up = a.imag() > 0 ? t.residue : u.residue;
        const double beta = std::abs(a.imag());
        const cplx rate(a.real(), 0.0);
        if (up.real() != 0.0)
          out.add(2.0 * up.real() / kf, atom::Gated{k, rate, atom::Oscillation::Cos, beta, form.delay, 1});
        if (up.imag() != 0.0)
          out.add(-2.0 * up.imag() / kf, atom::Gated{k, rate, atom::Oscillation::Sin, beta, form.delay, 1});
        break;
      }
    }
    if (!paired) {
      cplx rate = a;
      if (std::abs(rate.imag()) <= kTol * std::max(1.0, std::abs(a))) rate = cplx(a.real(), 0.0);
      out.add(t.residue / kf, atom::Gated{k, rate, atom::Oscillation::None, 0.0, form.delay, 1});
    }
  }
  return out;
}

SignalSpec invert_clt_part(const PartialFractionForm& form) { return reflect(invert_lt_part(form)); }

}  // namespace gft
