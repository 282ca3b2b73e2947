#include "gft/gdtft.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gft/errors.hpp"

namespace gft {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double binomial(long n, long k) {
  if (k < 0 || n < k) return 0.0;
  double r = 1.0;
  for (long i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

cplx ipow(cplx p, long j) {
  cplx r = 1.0;
  cplx b = p;
  long e = j < 0 ? -j : j;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return j < 0 ? 1.0 / r : r;
}

ZTerm monomial(cplx coef, long shift) { return ZTerm{coef, 0.0, 0, shift, 1}; }
ZTerm pole(cplx coef, cplx ratio, long shift) { return ZTerm{coef, ratio, 1, shift, 1}; }

void scale(std::vector<ZTerm>& v, cplx k) {
  for (auto& t : v) t.coef *= k;
}

void append(std::vector<ZTerm>& dst, const std::vector<ZTerm>& src) { dst.insert(dst.end(), src.begin(), src.end()); }

std::vector<ZTerm> shifted(std::vector<ZTerm> v, long by) {
  for (auto& t : v) t.shift += by;
  return v;
}

// term * (1 - w)
std::vector<ZTerm> times_one_minus_w(const std::vector<ZTerm>& v) {
  std::vector<ZTerm> out;
  for (const auto& t : v) {
    if (t.order > 0 && t.stride == 1 && t.ratio == cplx(1.0)) {
      ZTerm r = t;
      --r.order;
      if (r.order == 0) r.ratio = 0.0;
      out.push_back(r);
      continue;
    }
    out.push_back(t);
    ZTerm r = t;
    r.coef = -r.coef;
    ++r.shift;
    out.push_back(r);
  }
  return out;
}

// term / (1 - w)
std::vector<ZTerm> over_one_minus_w(const std::vector<ZTerm>& v) {
  std::vector<ZTerm> out;
  for (const auto& t : v) {
    if (t.order == 0 || t.ratio == cplx(0.0)) {
      out.push_back(ZTerm{t.coef, 1.0, 1, t.shift, 1});
      continue;
    }
    if (t.stride != 1)
      throw UnsupportedError("accumulation of an expanded (stride > 1) pole term is not supported");
    if (t.ratio == cplx(1.0)) {
      ZTerm r = t;
      ++r.order;
      out.push_back(r);
      continue;
    }
    // w^n0 / ((1 - p w)^m (1 - w)) = [T_{m-1} - p w^n0 / (1 - p w)^m] / (1 - p), T_0 = w^n0 / (1 - w)
    const cplx p = t.ratio;
    const cplx inv = 1.0 / (1.0 - p);
    cplx carry = t.coef;  // weight of T_m still to expand
    for (int m = t.order; m >= 1; --m) {
      out.push_back(ZTerm{-carry * p * inv, p, m, t.shift, 1});
      carry *= inv;
    }
    out.push_back(ZTerm{carry, 1.0, 1, t.shift, 1});
  }
  return out;
}

// w d/dw
std::vector<ZTerm> euler_derivative(const std::vector<ZTerm>& v) {
  std::vector<ZTerm> out;
  for (const auto& t : v) {
    if (t.shift != 0) {
      ZTerm r = t;
      r.coef *= static_cast<double>(t.shift);
      out.push_back(r);
    }
    if (t.order > 0 && t.ratio != cplx(0.0))
      out.push_back(ZTerm{t.coef * static_cast<double>(t.order) * t.ratio * static_cast<double>(t.stride), t.ratio,
                          t.order + 1, t.shift + t.stride, t.stride});
  }
  return out;
}

bool same_pole(const ZTerm& a, const ZTerm& b, double tol) {
  return a.stride == b.stride && std::abs(a.ratio - b.ratio) <= tol * std::max(1.0, std::abs(a.ratio));
}

std::vector<ZTerm> simplify_terms(std::vector<ZTerm> v, double tol) {
  for (auto& t : v) {
    if (t.order == 0 || t.ratio == cplx(0.0)) {
      t.order = 0;
      t.ratio = 0.0;
      t.stride = 1;
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    // Merge equal shapes.
    std::vector<ZTerm> merged;
    for (const auto& t : v) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const ZTerm& m) {
        return m.order == t.order && m.shift == t.shift && same_pole(m, t, tol);
      });
      if (it == merged.end())
        merged.push_back(t);
      else
        it->coef += t.coef;
    }
    double scale_ref = 0.0;
    for (const auto& t : merged) scale_ref = std::max(scale_ref, std::abs(t.coef));
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [&](const ZTerm& t) { return std::abs(t.coef) <= tol * std::max(1.0, scale_ref); }),
                 merged.end());
    v = std::move(merged);

    for (std::size_t i = 0; i < v.size() && !changed; ++i) {
      const ZTerm& a = v[i];
      if (a.order == 0) continue;
      const cplx ps = a.ratio;
      for (std::size_t j = 0; j < v.size() && !changed; ++j) {
        if (j == i) continue;
        const ZTerm& b = v[j];
        const double ctol = tol * std::max(1.0, std::abs(a.coef));
        // c w^n (1-pw^s)^-m - p c w^(n+s) (1-pw^s)^-m = c w^n (1-pw^s)^-(m-1)
        if (b.order == a.order && same_pole(a, b, tol) && b.shift == a.shift + a.stride &&
            std::abs(b.coef + ps * a.coef) <= ctol) {
          ZTerm r = a;
          --r.order;
          if (r.order == 0) r.ratio = 0.0, r.stride = 1;
          v[i] = r;
          v.erase(v.begin() + static_cast<long>(j));
          changed = true;
          break;
        }
        // c w^n (1-pw^s)^-m - c w^n (1-pw^s)^-(m-1) = c p w^(n+s) (1-pw^s)^-m
        if (b.order == a.order - 1 && b.shift == a.shift && (b.order == 0 || same_pole(a, b, tol)) &&
            std::abs(b.coef + a.coef) <= ctol) {
          ZTerm r = a;
          r.coef *= ps;
          r.shift += a.stride;
          v[i] = r;
          v.erase(v.begin() + static_cast<long>(j));
          changed = true;
          break;
        }
      }
    }
  }
  std::sort(v.begin(), v.end(), [](const ZTerm& a, const ZTerm& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.shift != b.shift) return a.shift < b.shift;
    if (a.ratio.real() != b.ratio.real()) return a.ratio.real() < b.ratio.real();
    return a.ratio.imag() < b.ratio.imag();
  });
  return v;
}

ZSpectrumExpr finish(ZSpectrumExpr e) {
  e = simplify(e);
  return e;
}

}  // namespace

SequenceSpec::SequenceSpec(std::vector<SequenceTerm> terms) {
  for (auto& t : terms) add(t.coef, std::move(t.atom));
}

SequenceSpec& SequenceSpec::add(cplx coef, SequenceAtom atom) {
  if (!finite(coef)) throw ConstraintError("sequence coefficients must be finite");
  if (const auto* g = std::get_if<seq::GeometricN>(&atom); g && g->a == cplx(0.0))
    throw ConstraintError("geometric ratio must be nonzero");
  if (const auto* pm = std::get_if<seq::PoleModeN>(&atom); pm && (pm->m < 1 || pm->n0 < 0))
    throw ConstraintError("pole mode needs order >= 1 and n0 >= 0");
  terms_.push_back({coef, std::move(atom)});
  return *this;
}

cplx evaluate_atom(const SequenceAtom& a, long n) {
  using namespace seq;
  const double nd = static_cast<double>(n);
  return std::visit(overloaded{
                        [&](const DeltaN& d) { return cplx(n == d.n0 ? 1.0 : 0.0); },
                        [&](const ConstantN&) { return cplx(1.0); },
                        [&](const SignumN&) { return cplx(n > 0 ? 1.0 : (n < 0 ? -1.0 : 0.0)); },
                        [&](const UnitStepN& u) {
                          const bool on = u.orientation == atom::Orientation::Forward ? n >= 0 : n <= 0;
                          return cplx(on ? 1.0 : 0.0);
                        },
                        [&](const GeometricN& g) { return ipow(g.a, n); },
                        [&](const AbsGeometricN& g) { return ipow(g.a, n < 0 ? -n : n); },
                        [&](const ComplexExpN& c) { return std::exp(cplx(0.0, c.Omega0 * nd)); },
                        [&](const CosineN& c) { return cplx(std::cos(c.Omega0 * nd)); },
                        [&](const SineN& c) { return cplx(std::sin(c.Omega0 * nd)); },
                        [&](const PoleModeN& p) {
                          const long k = n - p.n0;
                          if (k < 0) return cplx(0.0);
                          return binomial(k + p.m - 1, p.m - 1) * ipow(p.p, k);
                        },
                    },
                    a);
}

cplx evaluate_sequence(const SequenceSpec& s, long n) {
  cplx sum = 0.0;
  for (const auto& t : s.terms()) sum += t.coef * evaluate_atom(t.atom, n);
  return sum;
}

std::string describe(const SequenceAtom& a) {
  using namespace seq;
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const DeltaN& d) { os << "delta[n-" << d.n0 << "]"; },
                 [&](const ConstantN&) { os << "1"; },
                 [&](const SignumN&) { os << "sgn[n]"; },
                 [&](const UnitStepN& u) { os << (u.orientation == atom::Orientation::Forward ? "u[n]" : "u[-n]"); },
                 [&](const GeometricN& g) { os << "(" << g.a << ")^n"; },
                 [&](const AbsGeometricN& g) { os << "(" << g.a << ")^|n|"; },
                 [&](const ComplexExpN& c) { os << "exp(j" << c.Omega0 << "n)"; },
                 [&](const CosineN& c) { os << "cos(" << c.Omega0 << "n)"; },
                 [&](const SineN& c) { os << "sin(" << c.Omega0 << "n)"; },
                 [&](const PoleModeN& p) {
                   os << "C(n-" << p.n0 << "+" << p.m - 1 << "," << p.m - 1 << ")(" << p.p << ")^(n-" << p.n0
                      << ")u[n-" << p.n0 << "]";
                 },
             },
             a);
  return os.str();
}

std::string describe(const SequenceSpec& s) {
  if (s.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : s.terms()) {
    if (!first) os << " + ";
    first = false;
    os << t.coef << "*" << describe(t.atom);
  }
  return os.str();
}

cplx eval_zterms(const std::vector<ZTerm>& terms, cplx w) {
  cplx sum = 0.0;
  for (const auto& t : terms) {
    cplx v = t.coef * ipow(w, t.shift);
    if (t.order > 0) {
      const cplx d = 1.0 - t.ratio * ipow(w, t.stride);
      if (d == cplx(0.0)) throw PoleError("z-domain term evaluated at a pole");
      v /= ipow(d, t.order);
    }
    sum += v;
  }
  return sum;
}

cplx eval_zspectrum(const ZSpectrumExpr& e, const DiscreteFrequency& f) {
  if (!e.roc.contains(f.sigma()))
    throw RegionError("|z| = " + std::to_string(f.r()) + " is outside the region " + e.roc.describe());
  return eval_zterms(e.clt, 1.0 / f.z_conj()) + eval_zterms(e.lt, 1.0 / f.z());
}

cplx series_coefficient(const std::vector<ZTerm>& terms, long power) {
  cplx sum = 0.0;
  for (const auto& t : terms) {
    const long d = power - t.shift;
    if (t.order == 0) {
      if (d == 0) sum += t.coef;
      continue;
    }
    if (d < 0 || d % t.stride != 0) continue;
    const long j = d / t.stride;
    sum += t.coef * binomial(j + t.order - 1, t.order - 1) * ipow(t.ratio, j);
  }
  return sum;
}

cplx sample_of(const ZSpectrumExpr& e, long n) {
  return series_coefficient(e.lt, n) + series_coefficient(e.clt, -n);
}

Roc zroc_of(const ZSpectrumExpr& e) {
  double r = -1.0;
  auto scan = [&](const std::vector<ZTerm>& v) {
    for (const auto& t : v)
      if (t.order > 0 && t.ratio != cplx(0.0))
        r = std::max(r, std::pow(std::abs(t.ratio), 1.0 / static_cast<double>(t.stride)));
  };
  scan(e.clt);
  scan(e.lt);
  return r < 0 ? Roc::entire_z_plane() : Roc::outside_circle(r);
}

ZSpectrumExpr simplify(const ZSpectrumExpr& e, double tol) {
  ZSpectrumExpr out;
  out.clt = simplify_terms(e.clt, tol);
  out.lt = simplify_terms(e.lt, tol);
  out.roc = zroc_of(out);
  return out;
}

ZSpectrumExpr gdtft_closed_form(const SequenceSpec& s) {
  using namespace seq;
  ZSpectrumExpr out;
  for (const auto& term : s.terms()) {
    std::vector<ZTerm> clt, lt;
    std::visit(overloaded{
                   [&](const DeltaN& d) {
                     if (d.n0 >= 0)
                       lt.push_back(monomial(1.0, d.n0));
                     else
                       clt.push_back(monomial(1.0, -d.n0));
                   },
                   [&](const ConstantN&) {
                     clt.push_back(pole(1.0, 1.0, 1));
                     lt.push_back(pole(1.0, 1.0, 0));
                   },
                   [&](const SignumN&) {
                     clt.push_back(pole(-1.0, 1.0, 1));
                     lt.push_back(pole(1.0, 1.0, 1));
                   },
                   [&](const UnitStepN& u) {
                     if (u.orientation == atom::Orientation::Forward) {
                       lt.push_back(pole(1.0, 1.0, 0));
                     } else {
                       clt.push_back(pole(1.0, 1.0, 1));
                       lt.push_back(monomial(1.0, 0));
                     }
                   },
                   [&](const GeometricN& g) {
                     const cplx inv = 1.0 / g.a;
                     clt.push_back(pole(inv, inv, 1));
                     lt.push_back(pole(1.0, g.a, 0));
                   },
                   [&](const AbsGeometricN& g) {
                     if (!(std::abs(g.a) < 1.0))
                       throw DomainError("a^|n| needs |a| < 1: the anticausal sum diverges for every z otherwise");
                     clt.push_back(pole(g.a, g.a, 1));
                     lt.push_back(pole(1.0, g.a, 0));
                   },
                   [&](const ComplexExpN& c) {
                     const cplx e = std::exp(cplx(0.0, c.Omega0));
                     clt.push_back(pole(std::conj(e), std::conj(e), 1));
                     lt.push_back(pole(1.0, e, 0));
                   },
                   [&](const CosineN& c) {
                     const cplx e = std::exp(cplx(0.0, c.Omega0));
                     const cplx ec = std::conj(e);
                     clt.push_back(pole(0.5 * e, e, 1));
                     clt.push_back(pole(0.5 * ec, ec, 1));
                     lt.push_back(pole(0.5, e, 0));
                     lt.push_back(pole(0.5, ec, 0));
                   },
                   [&](const SineN& c) {
                     const cplx e = std::exp(cplx(0.0, c.Omega0));
                     const cplx ec = std::conj(e);
                     const cplx h = 1.0 / cplx(0.0, 2.0);
                     clt.push_back(pole(-h * e, e, 1));
                     clt.push_back(pole(h * ec, ec, 1));
                     lt.push_back(pole(h, e, 0));
                     lt.push_back(pole(-h, ec, 0));
                   },
                   [&](const PoleModeN& p) { lt.push_back(ZTerm{1.0, p.p, p.m, p.n0, 1}); },
               },
               term.atom);
    scale(clt, term.coef);
    scale(lt, term.coef);
    append(out.clt, clt);
    append(out.lt, lt);
  }
  return finish(out);
}

SeriesValue gdtft_numeric(const SequenceFunction& x, const DiscreteFrequency& f, long n_max, double abs_tol) {
  if (n_max < 1) throw ConstraintError("n_max must be >= 1");
  const cplx w = 1.0 / f.z();
  const cplx wc = 1.0 / f.z_conj();
  cplx sum = x(0);
  cplx wp = 1.0, wcp = 1.0;
  double last_l = 0, prev_l = 0, last_c = 0, prev_c = 0;
  for (long n = 1; n <= n_max; ++n) {
    wp *= w;
    wcp *= wc;
    const cplx tl = x(n) * wp;
    const cplx tc = x(-n) * wcp;
    sum += tl + tc;
    prev_l = last_l;
    prev_c = last_c;
    last_l = std::abs(tl);
    last_c = std::abs(tc);
  }
  auto tail = [&](double last, double prev) -> double {
    if (last <= abs_tol * 1e-3) return last;
    const double q = prev > 0 ? last / prev : 1.0;
    if (!(q < 1.0)) return INFINITY;
    return last * q / (1.0 - q);
  };
  const double bound = tail(last_l, prev_l) + tail(last_c, prev_c);
  if (!std::isfinite(bound))
    throw ConvergenceError("series terms are not decaying at n_max = " + std::to_string(n_max), sum, bound);
  return {sum, bound};
}

SeriesValue gdtft_numeric(const std::vector<cplx>& values, long n_start, const DiscreteFrequency& f) {
  const cplx w = 1.0 / f.z();
  const cplx wc = 1.0 / f.z_conj();
  cplx sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const long n = n_start + static_cast<long>(i);
    sum += values[i] * (n >= 0 ? ipow(w, n) : ipow(wc, -n));
  }
  return {sum, 0.0};
}

cplx igdtft_numeric(const ZEvaluator& X, double sigma, long n, int panels, double abs_tol) {
  if (panels < 1) throw ConstraintError("panel count must be >= 1");
  constexpr long kMaxPanels = 1L << 20;
  auto trap = [&](long N) {
    cplx s = 0.0;
    const double h = 2.0 * kPi / static_cast<double>(N);
    for (long k = 0; k < N; ++k) {
      const double Om = -kPi + h * static_cast<double>(k);
      s += X(Om, sigma) * std::exp(cplx(0.0, Om * static_cast<double>(n)));
    }
    return s / static_cast<double>(N);
  };
  long N = panels;
  cplx prev = trap(N);
  while (true) {
    N *= 2;
    const cplx cur = trap(N);
    if (std::abs(cur - prev) < abs_tol) return cur * std::exp(sigma * std::abs(static_cast<double>(n)));
    if (N >= kMaxPanels)
      throw ConvergenceError("panel refinement did not settle", cur * std::exp(sigma * std::abs(static_cast<double>(n))),
                             std::abs(cur - prev));
    prev = cur;
  }
}

ZSpectrumExpr apply_gdtft_property(const ZSpectrumExpr& e, const ZOp& op) {
  using namespace zop;
  ZSpectrumExpr out;
  std::visit(
      overloaded{
          [&](const Delay& d) {
            if (d.m < 0) throw ConstraintError("delay must be >= 0");
            const long m = d.m;
            out.clt = shifted(e.clt, -m);
            out.lt = shifted(e.lt, m);
            for (long l = -m; l <= -1; ++l) {
              const cplx xl = sample_of(e, l);
              if (xl == cplx(0.0)) continue;
              out.clt.push_back(monomial(-xl, -l - m));
              out.lt.push_back(monomial(xl, l + m));
            }
          },
          [&](const Advance& a) {
            if (a.m < 0) throw ConstraintError("advance must be >= 0");
            const long m = a.m;
            out.clt = shifted(e.clt, m);
            out.lt = shifted(e.lt, -m);
            for (long l = 0; l <= m - 1; ++l) {
              const cplx xl = sample_of(e, l);
              if (xl == cplx(0.0)) continue;
              out.clt.push_back(monomial(xl, m - l));
              out.lt.push_back(monomial(-xl, l - m));
            }
          },
          [&](const Reverse&) {
            // The new lt half takes x[0] from the old lt half.
            const cplx x0 = sample_of(e, 0);
            out.clt = e.lt;
            out.lt = e.clt;
            if (x0 != cplx(0.0)) {
              out.clt.push_back(monomial(-x0, 0));
              out.lt.push_back(monomial(x0, 0));
            }
          },
          [&](const Expand& k) {
            if (k.k < 1) throw ConstraintError("expansion factor must be >= 1");
            for (auto part : {&e.clt, &e.lt}) {
              std::vector<ZTerm> v = *part;
              for (auto& t : v) {
                t.shift *= k.k;
                t.stride *= k.k;
              }
              (part == &e.clt ? out.clt : out.lt) = std::move(v);
            }
          },
          [&](const FirstDifference& fd) {
            const cplx xm1 = fd.x_minus1.value_or(sample_of(e, -1));
            // (1 - z*) Xc = -(1/w*) (1 - w*) Xc
            out.clt = shifted(times_one_minus_w(e.clt), -1);
            scale(out.clt, -1.0);
            if (xm1 != cplx(0.0)) out.clt.push_back(monomial(xm1, 0));
            out.lt = times_one_minus_w(e.lt);
            if (xm1 != cplx(0.0)) out.lt.push_back(monomial(-xm1, 0));
          },
          [&](const Accumulate&) {
            // Running sum from -inf: the anticausal total S = Xc(w* = 1) enters as S * G{1}.
            cplx S = 0.0;
            if (!e.clt.empty()) {
              try {
                S = eval_zterms(e.clt, 1.0);
              } catch (const PoleError&) {
                throw UnsupportedError("accumulation diverges: the anticausal sum has a pole at z = 1");
              }
            }
            // Xc / (1 - z*) = -w* Xc / (1 - w*)
            out.clt = shifted(over_one_minus_w(e.clt), 1);
            scale(out.clt, -1.0);
            out.lt = over_one_minus_w(e.lt);
            if (S != cplx(0.0)) {
              out.clt.push_back(pole(S, 1.0, 1));
              out.lt.push_back(pole(S, 1.0, 0));
            }
          },
          [&](const GeometricModulate& g) {
            if (g.a == cplx(0.0)) throw ConstraintError("modulation base must be nonzero");
            // lt: X(a z), i.e. w -> w / a; clt: Xc(z* / a), i.e. w* -> a w*.
            out.lt = e.lt;
            for (auto& t : out.lt) {
              t.coef *= ipow(g.a, -t.shift);
              t.ratio *= ipow(g.a, -t.stride);
            }
            out.clt = e.clt;
            for (auto& t : out.clt) {
              t.coef *= ipow(g.a, t.shift);
              t.ratio *= ipow(g.a, t.stride);
            }
          },
          [&](const MulNPower& p) {
            if (p.m < 0) throw ConstraintError("power must be >= 0");
            out.lt = e.lt;
            out.clt = e.clt;
            for (int i = 0; i < p.m; ++i) {
              out.lt = euler_derivative(out.lt);
              out.clt = euler_derivative(out.clt);
              scale(out.clt, -1.0);
            }
          },
      },
      op);
  return finish(out);
}

}  // namespace gft
