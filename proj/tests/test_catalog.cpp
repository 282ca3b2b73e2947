#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gft/catalog.hpp"
#include "gft/errors.hpp"
#include "gft/numeric.hpp"

using namespace gft;

namespace {

SignalSpec single(SignalAtom a, cplx coef = 1.0) {
  SignalSpec s;
  s.add(coef, std::move(a));
  return s;
}

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

// Random points strictly inside a half-plane region.
std::vector<ComplexFrequency> probe(const Roc& roc, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ds(0.1, 3.0), dw(-6.0, 6.0);
  const double lo = roc.kind() == Roc::Kind::HalfPlane ? roc.bound() : -1.0;
  std::vector<ComplexFrequency> out;
  for (int i = 0; i < n; ++i) out.emplace_back(lo + ds(rng), dw(rng));
  return out;
}

}  // namespace

TEST_CASE("constant row") {
  const SpectrumExpr e = lookup_gft(single(atom::Constant{}));
  REQUIRE(e.clt.size() == 1);
  REQUIRE(e.lt.size() == 1);
  CHECK(e.roc.kind() == Roc::Kind::HalfPlane);
  CHECK(e.roc.bound() == 0.0);
  CHECK(close(eval_spectrum(e, ComplexFrequency(1.0, 2.0)), 0.4));
  CHECK(close(eval_spectrum(e, ComplexFrequency(1.0, 0.0)), 2.0));
}

TEST_CASE("delta row") {
  const SpectrumExpr d1 = lookup_gft(single(atom::DiracDelta{1.0}));
  CHECK(d1.clt.empty());
  CHECK(d1.roc.kind() == Roc::Kind::EntirePlane);
  const ComplexFrequency f(-0.4, 1.3);
  CHECK(close(eval_spectrum(d1, f), std::exp(-f.s())));
  const SpectrumExpr d0 = lookup_gft(single(atom::DiracDelta{0.0}));
  for (double w : {-3.0, 0.0, 2.5}) CHECK(close(eval_spectrum(d0, ComplexFrequency(0.7, w)), 1.0));
}

TEST_CASE("two-sided decay row") {
  const SpectrumExpr e = lookup_gft(single(atom::AbsExp{1.0}));
  CHECK(e.roc.bound() == -1.0);
  const ComplexFrequency f(0.5, 1.0);
  CHECK(close(eval_spectrum(e, f), 1.0 / (f.s_conj() + 1.0) + 1.0 / (f.s() + 1.0)));
}

TEST_CASE("signum row") { CHECK(close(eval_spectrum(lookup_gft(single(atom::Signum{})), ComplexFrequency(1, 1)), -kJ)); }

TEST_CASE("empty spec gives the zero expression on the whole plane") {
  const SpectrumExpr e = lookup_gft(SignalSpec{});
  CHECK(e.clt.empty());
  CHECK(e.lt.empty());
  CHECK(e.roc.kind() == Roc::Kind::EntirePlane);
}

TEST_CASE("evaluation errors") {
  const SpectrumExpr e = lookup_gft(single(atom::UnitStep{}));
  CHECK_THROWS_AS(eval_spectrum(e, ComplexFrequency(-1.0, 0.0)), RegionError);
  CHECK_THROWS_AS(eval_terms(e.lt, 0.0), PoleError);
}

TEST_CASE("linearity") {
  const SignalSpec x = single(atom::Cosine{1.5});
  const SignalSpec y = single(atom::TwoSidedExp{0.4});
  const cplx a(2.0, -1.0), b(-0.5, 0.25);
  const SpectrumExpr combined = lookup_gft(a * x + b * y);
  const SpectrumExpr separate = a * lookup_gft(x) + b * lookup_gft(y);
  for (const auto& f : probe(combined.roc, 20, 1))
    CHECK(close(eval_spectrum(combined, f), eval_spectrum(separate, f)));
}

TEST_CASE("even and odd atoms") {
  const ComplexFrequency f(0.8, 1.7);
  SUBCASE("even atoms have matching halves") {
    for (const SignalAtom& a : {SignalAtom(atom::Cosine{2.0}), SignalAtom(atom::AbsExp{0.5}),
                                SignalAtom(atom::Constant{}), SignalAtom(atom::AbsPower{1.5})}) {
      const SpectrumExpr e = lookup_gft(single(a));
      CHECK(close(eval_terms(e.clt, f.s_conj()), eval_terms(e.lt, f.s_conj())));
    }
  }
  SUBCASE("odd atoms have opposite halves") {
    for (const SignalAtom& a : {SignalAtom(atom::Sine{2.0}), SignalAtom(atom::Signum{})}) {
      const SpectrumExpr e = lookup_gft(single(a));
      CHECK(close(eval_terms(e.clt, f.s_conj()), -eval_terms(e.lt, f.s_conj())));
    }
  }
}

TEST_CASE("time properties") {
  const ComplexFrequency f(0.9, -0.6);
  SUBCASE("delay of the impulse") {
    const SpectrumExpr e = apply_time_property(lookup_gft(single(atom::DiracDelta{0.0})), op::SgnDelay{1.0});
    CHECK(close(eval_spectrum(e, f), eval_spectrum(lookup_gft(single(atom::DiracDelta{1.0})), f)));
  }
  SUBCASE("reverse maps the causal step to the anticausal one") {
    const SpectrumExpr e = apply_time_property(lookup_gft(single(atom::UnitStep{})), op::Reverse{});
    CHECK(close(eval_spectrum(e, f), 1.0 / f.s_conj()));
  }
  SUBCASE("reverse twice is the identity") {
    const SpectrumExpr e = lookup_gft(single(atom::TwoSidedExp{cplx(0.3, 0.2)}) + single(atom::Sine{1.0}));
    const SpectrumExpr rr = apply_time_property(apply_time_property(e, op::Reverse{}), op::Reverse{});
    for (const auto& g : probe(e.roc, 10, 2)) CHECK(close(eval_spectrum(rr, g), eval_spectrum(e, g)));
  }
  SUBCASE("scale matches the rescaled atom") {
    const SpectrumExpr e = apply_time_property(lookup_gft(single(atom::AbsExp{1.0})), op::Scale{2.0});
    CHECK(close(eval_spectrum(e, f), eval_spectrum(lookup_gft(single(atom::AbsExp{2.0})), f)));
    CHECK_THROWS_AS(apply_time_property(e, op::Scale{0.0}), ConstraintError);
  }
  SUBCASE("first derivative of the two-sided decay") {
    const SpectrumExpr d = apply_time_property(lookup_gft(single(atom::AbsExp{1.0})), op::Derivative{1, {1.0}, {}});
    CHECK(close(eval_spectrum(d, f), 1.0 / (f.s_conj() + 1.0) - 1.0 / (f.s() + 1.0)));
  }
  SUBCASE("derivative matches quadrature for smooth atoms") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-11;
    const SignalSpec x = single(atom::Cosine{1.5});
    const SpectrumExpr d = apply_time_property(lookup_gft(x), op::Derivative{1, {1.0}, {}});
    const TimeFunction dx = [](double t) { return cplx(-1.5 * std::sin(1.5 * t)); };
    for (const auto& g : probe(d.roc, 5, 3))
      CHECK(close(eval_spectrum(d, g), gft_forward(dx, g, WeightSpec{}, cfg), 1e-7));
  }
  SUBCASE("running integral of the impulse is the step") {
    const SpectrumExpr e = apply_time_property(lookup_gft(single(atom::DiracDelta{0.0})), op::RunningIntegral{});
    CHECK(close(eval_spectrum(e, f), 1.0 / f.s()));
  }
}

TEST_CASE("modulation properties") {
  const ComplexFrequency f(1.3, 0.4);
  SUBCASE("two-sided damping of the constant") {
    const SpectrumExpr e = apply_modulation_property(lookup_gft(single(atom::Constant{})), op::ExpAbs{1.0});
    CHECK(close(eval_spectrum(e, f), eval_spectrum(lookup_gft(single(atom::AbsExp{1.0})), f)));
  }
  SUBCASE("multiplying the step by t") {
    const SpectrumExpr e = apply_modulation_property(lookup_gft(single(atom::UnitStep{})), op::MulPower{1});
    CHECK(close(eval_spectrum(e, f), 1.0 / (f.s() * f.s())));
  }
  SUBCASE("exponential shift of the step moves the region") {
    const SpectrumExpr e = apply_modulation_property(lookup_gft(single(atom::UnitStep{})), op::ExpTwoSided{-1.0});
    CHECK(e.roc.bound() == 1.0);
    CHECK(close(eval_spectrum(e, ComplexFrequency(2.0, 0.5)), 1.0 / (cplx(2.0, 0.5) - 1.0)));
  }
}

TEST_CASE("weighted spectra") {
  // |t|^p e^{-sigma|t|} weighting of e^{-|t|}, checked against quadrature.
  const SignalSpec x = single(atom::AbsExp{1.0});
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-11;
  for (double p : {0.5, 1.0, 2.0}) {
    const SpectrumExpr e = lookup_gft(x, p);
    const ComplexFrequency f(0.5, 1.0);
    CHECK(close(eval_spectrum(e, f), gft_forward(x, f, WeightSpec{p, 1.0}, cfg), 1e-8));
  }
  const SpectrumExpr ht = lookup_gft(single(atom::InversePower{1.0}), 1.0);
  CHECK(close(ft_limit_symbolic(ht, 2.0).regular, cplx(0.0, -1.0), 1e-12));
  CHECK_THROWS_AS(lookup_gft(single(atom::InversePower{2.0}), 0.5), ConstraintError);
}

TEST_CASE("symbolic Fourier limit") {
  SUBCASE("constant carries a 2 pi impulse") {
    const FtLimit lim = ft_limit_symbolic(lookup_gft(single(atom::Constant{})), 0.0);
    REQUIRE(lim.atoms.size() == 1);
    CHECK(lim.atoms[0].omega0 == 0.0);
    CHECK(close(lim.atoms[0].weight, 2 * kPi));
    CHECK(std::abs(lim.regular) < 1e-15);
  }
  SUBCASE("constant away from the origin is zero") {
    const FtLimit lim = ft_limit_symbolic(lookup_gft(single(atom::Constant{})), 1.0);
    CHECK(std::abs(lim.regular) < 1e-15);
  }
  SUBCASE("decaying atom has a finite limit") {
    const FtLimit lim = ft_limit_symbolic(lookup_gft(single(atom::AbsExp{1.0})), 1.0);
    CHECK(lim.is_finite());
    CHECK(close(lim.regular, 1.0));
  }
  SUBCASE("step splits into pi impulse plus 1/(j omega)") {
    const FtLimit lim = ft_limit_symbolic(lookup_gft(single(atom::UnitStep{})), 2.0);
    REQUIRE(lim.atoms.size() == 1);
    CHECK(close(lim.atoms[0].weight, kPi));
    CHECK(close(lim.regular, 1.0 / (kJ * 2.0)));
  }
  SUBCASE("unmatched axis pole diverges") {
    CHECK_THROWS_AS(ft_limit_symbolic(lookup_gft(single(atom::Power{1.0})), 0.0), DivergenceError);
  }
}

TEST_CASE("describe is deterministic") {
  const SpectrumExpr e = lookup_gft(single(atom::AbsExp{1.0}));
  CHECK(describe(e) == describe(lookup_gft(single(atom::AbsExp{1.0}))));
  CHECK_FALSE(describe(e).empty());
}
