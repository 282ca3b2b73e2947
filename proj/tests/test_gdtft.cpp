#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gft/errors.hpp"
#include "gft/gdtft.hpp"
#include "gft/serialize.hpp"

using namespace gft;

namespace {

SequenceSpec single(SequenceAtom a, cplx coef = 1.0) {
  SequenceSpec s;
  s.add(coef, std::move(a));
  return s;
}

const double kLn2 = std::log(2.0);

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

std::vector<DiscreteFrequency> probe(const ZSpectrumExpr& e, int n, unsigned seed) {
  const Roc roc = zroc_of(e);
  const double lo = roc.kind() == Roc::Kind::OutsideCircle ? std::max(0.0, std::log(roc.bound())) : 0.0;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ds(0.3, 1.2), dw(-kPi, kPi);
  std::vector<DiscreteFrequency> out;
  for (int i = 0; i < n; ++i) out.emplace_back(lo + ds(rng), dw(rng));
  return out;
}

// Direct two-sided sum of a sequence transformed by `f` at the given point.
cplx direct(const SequenceFunction& x, const DiscreteFrequency& f) { return gdtft_numeric(x, f, 400, 1e-15).value; }

}  // namespace

TEST_CASE("closed forms") {
  SUBCASE("causal step") {
    const ZSpectrumExpr e = gdtft_closed_form(single(seq::UnitStepN{}));
    CHECK(zroc_of(e).bound() == doctest::Approx(1.0));
    const DiscreteFrequency f(0.4, 0.9);
    CHECK(close(eval_zspectrum(e, f), 1.0 / (1.0 - 1.0 / f.z())));
    CHECK(close(eval_zspectrum(e, DiscreteFrequency(kLn2, 0.0)), 2.0));
  }
  SUBCASE("delayed impulse") {
    const ZSpectrumExpr e = gdtft_closed_form(single(seq::DeltaN{2}));
    CHECK(zroc_of(e).kind() == Roc::Kind::EntireZPlane);
    const DiscreteFrequency f(-0.3, 1.1);
    CHECK(close(eval_zspectrum(e, f), std::pow(f.z(), -2)));
    CHECK(close(eval_zspectrum(gdtft_closed_form(single(seq::DeltaN{0})), f), 1.0));
  }
  SUBCASE("two-sided geometric decay") {
    const ZSpectrumExpr e = gdtft_closed_form(single(seq::AbsGeometricN{0.5}));
    CHECK(close(eval_zspectrum(e, DiscreteFrequency(kLn2, 0.0)), 5.0 / 3.0));
    CHECK_THROWS_AS(gdtft_closed_form(single(seq::AbsGeometricN{1.0})), DomainError);
  }
  SUBCASE("outside the region") {
    const ZSpectrumExpr e = gdtft_closed_form(single(seq::UnitStepN{}));
    CHECK_THROWS_AS(eval_zspectrum(e, DiscreteFrequency(-0.1, 0.0)), RegionError);
  }
}

TEST_CASE("closed forms agree with direct sums") {
  const std::vector<SequenceAtom> rows = {seq::DeltaN{-2},
                                          seq::ConstantN{},
                                          seq::SignumN{},
                                          seq::UnitStepN{atom::Orientation::Reversed},
                                          seq::GeometricN{cplx(0.5, 0.5)},
                                          seq::AbsGeometricN{-0.7},
                                          seq::ComplexExpN{2.0},
                                          seq::CosineN{0.3},
                                          seq::SineN{2.5},
                                          seq::PoleModeN{cplx(0.4, -0.3), 3, 2}};
  for (const auto& a : rows) {
    const SequenceSpec s = single(a, cplx(1.0, -0.5));
    const ZSpectrumExpr e = gdtft_closed_form(s);
    const SequenceFunction x = [&](long n) { return evaluate_sequence(s, n); };
    for (const auto& f : probe(e, 10, 1)) CHECK(close(eval_zspectrum(e, f), direct(x, f), 1e-10));
    for (long n = -6; n <= 6; ++n) CHECK(close(sample_of(e, n), x(n)));
  }
}

TEST_CASE("direct sums") {
  const DiscreteFrequency z2(kLn2, 0.0);
  CHECK(close(gdtft_numeric([](long n) { return cplx(n == 0 ? 1.0 : 0.0); }, DiscreteFrequency(0.3, 1.0), 10).value,
              1.0));
  CHECK(close(gdtft_numeric([](long n) { return cplx(n >= 0 ? 1.0 : 0.0); }, z2, 200).value, 2.0));
  CHECK(close(gdtft_numeric([](long n) { return cplx(std::pow(0.5, std::abs(n))); }, z2, 200).value, 5.0 / 3.0));
  CHECK_THROWS_AS(gdtft_numeric([](long n) { return cplx(n >= 0 ? std::pow(3.0, n) : 0.0); }, z2, 50),
                  ConvergenceError);
  const std::vector<cplx> finite = {1.0, 2.0, 3.0};
  const DiscreteFrequency f(0.2, 0.4);
  CHECK(close(gdtft_numeric(finite, -1, f).value, 1.0 / f.z_conj() + 2.0 + 3.0 / f.z()));
}

TEST_CASE("numeric inverse") {
  const ZSpectrumExpr d2 = gdtft_closed_form(single(seq::DeltaN{2}));
  const ZEvaluator X = [&](double W, double s) { return eval_zspectrum(d2, DiscreteFrequency(s, W)); };
  CHECK(std::abs(igdtft_numeric(X, 0.0, 2) - 1.0) < 1e-12);
  CHECK(std::abs(igdtft_numeric(X, 0.0, 1)) < 1e-12);
  const ZSpectrumExpr u = gdtft_closed_form(single(seq::UnitStepN{}));
  const ZEvaluator U = [&](double W, double s) { return eval_zspectrum(u, DiscreteFrequency(s, W)); };
  CHECK(std::abs(igdtft_numeric(U, 0.1, 3) - 1.0) < 1e-6);
  const ZSpectrumExpr c = gdtft_closed_form(single(seq::CosineN{1.0}));
  const ZEvaluator C = [&](double W, double s) { return eval_zspectrum(c, DiscreteFrequency(s, W)); };
  CHECK(std::abs(igdtft_numeric(C, 0.1, 0) - 1.0) < 1e-6);
}

TEST_CASE("properties against direct sums") {
  SequenceSpec s;
  s.add(1.0, seq::AbsGeometricN{0.6}).add(cplx(0.5, 0.2), seq::UnitStepN{}).add(2.0, seq::DeltaN{-1});
  const ZSpectrumExpr e = gdtft_closed_form(s);
  const SequenceFunction x = [&](long n) { return evaluate_sequence(s, n); };

  auto check = [&](const ZOp& op, const SequenceFunction& y) {
    const ZSpectrumExpr t = apply_gdtft_property(e, op);
    for (const auto& f : probe(t, 10, 5)) CHECK(close(eval_zspectrum(t, f), direct(y, f), 1e-10));
  };
  SUBCASE("delay") { check(zop::Delay{3}, [&](long n) { return x(n - 3); }); }
  SUBCASE("advance") { check(zop::Advance{2}, [&](long n) { return x(n + 2); }); }
  SUBCASE("reverse") { check(zop::Reverse{}, [&](long n) { return x(-n); }); }
  SUBCASE("expand") {
    check(zop::Expand{2}, [&](long n) { return n % 2 == 0 ? x(n / 2) : cplx(0.0); });
  }
  SUBCASE("first difference") { check(zop::FirstDifference{}, [&](long n) { return x(n) - x(n - 1); }); }
  SUBCASE("geometric modulation") {
    const cplx a(0.9, 0.1);
    check(zop::GeometricModulate{a}, [&](long n) { return std::pow(a, -n) * x(n); });
  }
  SUBCASE("multiplication by n and n squared") {
    check(zop::MulNPower{1}, [&](long n) { return static_cast<double>(n) * x(n); });
    check(zop::MulNPower{2}, [&](long n) { return static_cast<double>(n * n) * x(n); });
  }
}

TEST_CASE("accumulation") {
  SUBCASE("impulse accumulates to the step") {
    const ZSpectrumExpr e = apply_gdtft_property(gdtft_closed_form(single(seq::DeltaN{0})), zop::Accumulate{});
    const ZSpectrumExpr u = gdtft_closed_form(single(seq::UnitStepN{}));
    for (const auto& f : probe(u, 10, 7)) CHECK(close(eval_zspectrum(e, f), eval_zspectrum(u, f)));
  }
  SUBCASE("running sum of a summable causal sequence") {
    const SequenceSpec s = single(seq::PoleModeN{0.5, 1, 1});
    const ZSpectrumExpr e = apply_gdtft_property(gdtft_closed_form(s), zop::Accumulate{});
    const SequenceFunction y = [&](long n) {
      cplx acc = 0.0;
      for (long k = -50; k <= n; ++k) acc += evaluate_sequence(s, k);
      return acc;
    };
    for (const auto& f : probe(e, 5, 8)) CHECK(close(eval_zspectrum(e, f), direct(y, f), 1e-10));
  }
  SUBCASE("difference then accumulate returns the sequence") {
    const SequenceSpec s = single(seq::AbsGeometricN{0.4});
    const ZSpectrumExpr e = gdtft_closed_form(s);
    const ZSpectrumExpr back =
        apply_gdtft_property(apply_gdtft_property(e, zop::FirstDifference{}), zop::Accumulate{});
    for (const auto& f : probe(back, 10, 9)) CHECK(close(eval_zspectrum(back, f), eval_zspectrum(e, f), 1e-10));
  }
}

TEST_CASE("reverse and expand on catalog rows") {
  const DiscreteFrequency f(0.5, 0.8);
  const ZSpectrumExpr r = apply_gdtft_property(gdtft_closed_form(single(seq::UnitStepN{})), zop::Reverse{});
  CHECK(close(eval_zspectrum(r, f), 1.0 / (1.0 - 1.0 / f.z_conj())));
  const ZSpectrumExpr x = apply_gdtft_property(gdtft_closed_form(single(seq::DeltaN{1})), zop::Expand{2});
  CHECK(close(eval_zspectrum(x, f), std::pow(f.z(), -2)));
}

TEST_CASE("simplify keeps values") {
  SequenceSpec s;
  s.add(1.0, seq::UnitStepN{}).add(1.0, seq::UnitStepN{atom::Orientation::Reversed}).add(-1.0, seq::ConstantN{});
  const ZSpectrumExpr e = gdtft_closed_form(s);
  const ZSpectrumExpr t = simplify(e);
  for (const auto& f : probe(e, 5, 3)) CHECK(close(eval_zspectrum(t, f), eval_zspectrum(e, f)));
}

TEST_CASE("sequence JSON") {
  SequenceSpec s;
  s.add(cplx(1, 2), seq::CosineN{0.5}).add(0.5, seq::PoleModeN{cplx(0.2, 0.1), 2, 3}).add(1.0, seq::DeltaN{-4});
  const SequenceSpec back = parse_sequence_spec(to_json(s));
  for (long n = -6; n <= 6; ++n) CHECK(close(evaluate_sequence(back, n), evaluate_sequence(s, n)));
  CHECK_THROWS_AS(parse_sequence_spec(R"({"terms":[{"coef":1,"atom":{"kind":"d_delta","n0":1.5}}]})"), ParseError);
}
