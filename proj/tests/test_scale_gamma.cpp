#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gft/errors.hpp"
#include "gft/quadrature.hpp"
#include "gft/scale_gamma.hpp"
#include "gft/special.hpp"

using namespace gft;

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

cplx step(double t) { return t >= 0.0 ? 1.0 : 0.0; }
cplx decay(double t) { return std::exp(-t); }

double laplace_pdf(double y) { return 0.5 * std::exp(-std::abs(y)); }
double cauchy_pdf(double y) { return 1.0 / (kPi * (1.0 + y * y)); }

}  // namespace

TEST_CASE("gamma function") {
  CHECK(close(gamma_fn(5.0), 24.0, 1e-13));
  CHECK(close(gamma_fn(0.5), std::sqrt(kPi), 1e-13));
  // |Gamma(1/2 + jy)|^2 = pi / cosh(pi y)
  const cplx g = gamma_fn(cplx(0.5, 1.3));
  CHECK(std::abs(std::norm(g) - kPi / std::cosh(kPi * 1.3)) < 1e-12);
  for (double s = 1.05; s <= 5.0; s += 0.25) CHECK(close(gamma_fn(s), (s - 1.0) * gamma_fn(s - 1.0), 1e-10));
  CHECK(close(gamma_fn(-0.5), -2.0 * std::sqrt(kPi), 1e-12));
  CHECK_THROWS_AS(gamma_fn(0.0), PoleError);
  CHECK_THROWS_AS(gamma_fn(-2.0), PoleError);
}

TEST_CASE("incomplete gamma") {
  CHECK(close(incomplete_gamma(GammaKind::Lower, 1.0, 1.0), 1.0 - std::exp(-1.0), 1e-13));
  CHECK(std::abs(incomplete_gamma(GammaKind::Upper, -1.0, 1.0) - 0.148495506775922) < 1e-12);
  CHECK(close(incomplete_gamma(GammaKind::Lower, 0.5, 1.0) + incomplete_gamma(GammaKind::Upper, 0.5, 1.0),
              std::sqrt(kPi), 1e-12));
  for (cplx s : {cplx(0.5), cplx(1.0), cplx(2.5), cplx(1.0, 1.0)})
    for (double x : {0.5, 1.0, 3.0})
      CHECK(close(incomplete_gamma(GammaKind::Lower, s, x) + incomplete_gamma(GammaKind::Upper, s, x), gamma_fn(s),
                  1e-10));
  SUBCASE("upper piece against direct quadrature") {
    for (cplx s : {cplx(-2.5, 0.5), cplx(0.3, -2.0), cplx(4.0)}) {
      const auto q = integrate_half_line([&](double u) { return std::exp(-(1.0 + u)) * std::pow(1.0 + u, s - 1.0); },
                                         QuadratureConfig{});
      CHECK(close(incomplete_gamma(GammaKind::Upper, s, 1.0), q.value, 1e-9));
    }
  }
  CHECK_THROWS_AS(incomplete_gamma(GammaKind::Lower, -0.5, 1.0), RegionError);
  CHECK_THROWS_AS(incomplete_gamma(GammaKind::Lower, 0.0, 1.0), RegionError);
}

TEST_CASE("generalized gamma") {
  CHECK(close(generalized_gamma(1.0), 2.0, 1e-15));
  CHECK(generalized_gamma(2.0) == cplx(0.0));
  CHECK(close(generalized_gamma(3.0), 4.0, 1e-14));
  CHECK(generalized_gamma(-2.0) == cplx(0.0));
  CHECK_THROWS_AS(generalized_gamma(-1.0), PoleError);
  CHECK_THROWS_AS(generalized_gamma(-3.0), PoleError);
  const cplx s(0.7, 0.4);
  CHECK(close(generalized_gamma(s), (std::exp(cplx(0, kPi) * (s - 1.0)) + 1.0) * gamma_fn(s), 1e-13));
}

TEST_CASE("zeta") {
  CHECK(close(zeta(2.0), kPi * kPi / 6.0, 1e-13));
  CHECK(close(zeta(4.0), std::pow(kPi, 4) / 90.0, 1e-13));
}

TEST_CASE("bilateral realization of the gamma function") {
  QuadratureConfig cfg;
  for (double s : {0.5, 1.0, 2.0}) {
    const auto q = integrate([&](double t) { return cplx(std::exp(-std::exp(-t) - s * t)); }, -6.0, 80.0, cfg);
    CHECK(close(q.value, gamma_fn(s + 1.0) / s, 1e-6));
  }
}

TEST_CASE("scale transform catalog") {
  SUBCASE("step") {
    const FstValue v = fst_forward(fst::Step{}, ComplexFrequency(2.0, 0.0));
    CHECK(close(v.lower, 0.5, 1e-15));
    CHECK(close(v.upper, 0.5, 1e-15));
    CHECK(close(v.total(), 1.0, 1e-15));
  }
  SUBCASE("delayed impulse") {
    const ComplexFrequency f(1.5, 0.7);
    const FstValue v = fst_forward(fst::Delta{0.5}, f);
    CHECK(close(v.lower, std::pow(0.5, f.s() - 1.0), 1e-14));
    CHECK(v.upper == cplx(0.0));
  }
  SUBCASE("decaying exponential matches incomplete gamma pieces") {
    const FstValue v = fst_forward(fst::ExpDecay{1.0}, ComplexFrequency(1.0, 0.0));
    CHECK(std::abs(v.total() - 0.780616) < 1e-6);
    for (const ComplexFrequency& f : {ComplexFrequency(1.0, 0.0), ComplexFrequency(2.0, 0.0), ComplexFrequency(1.0, 1.0)}) {
      const FstValue q = fst_forward(decay, f);
      CHECK(close(fst_forward(fst::ExpDecay{1.0}, f).total(), q.total(), 1e-8));
      CHECK(close(q.lower, incomplete_gamma(GammaKind::Lower, f.s(), 1.0), 1e-8));
      CHECK(close(q.upper, incomplete_gamma(GammaKind::Upper, -std::conj(f.s()), 1.0), 1e-8));
    }
  }
  SUBCASE("catalog rows agree with quadrature") {
    const ComplexFrequency f(2.5, 0.3);
    const auto agree = [&](const FstAtom& a, const TimeFunction& y) {
      const FstValue c = fst_forward(a, f), q = fst_forward(y, f);
      CHECK(close(c.lower, q.lower, 1e-8));
      CHECK(close(c.upper, q.upper, 1e-8));
    };
    agree(fst::ExpDecay{2.0}, [](double t) { return cplx(std::exp(-2.0 * t)); });
    agree(fst::Step{}, step);
    agree(fst::Power{cplx(0.5, 0.2)}, [](double t) { return std::pow(cplx(t), cplx(0.5, 0.2)); });
    agree(fst::BoseEinstein{}, [](double t) { return cplx(1.0 / std::expm1(t)); });
  }
  SUBCASE("divergent pieces raise region errors") {
    CHECK_THROWS_AS(fst_forward(fst::Step{}, ComplexFrequency(-0.5, 0.0)), RegionError);
    CHECK_THROWS_AS(fst_forward(fst::BoseEinstein{}, ComplexFrequency(0.5, 0.0)), RegionError);
  }
}

TEST_CASE("partial Mellin transforms") {
  const auto e = mellin_partial(decay, 1.0, 1.0);
  CHECK(close(e.lower, 1.0 - std::exp(-1.0), 1e-10));
  CHECK(close(e.upper, std::exp(-1.0), 1e-10));
  const auto full = mellin_partial(decay, 3.0, 1.0);
  CHECK(close(full.lower + full.upper, 2.0, 1e-10));
  CHECK(close(mellin_lower(decay, 3.0, 40.0), 2.0, 1e-10));
  CHECK(close(mellin_lower(step, 2.0, 1.0), 0.5, 1e-12));
  CHECK_THROWS_AS(mellin_partial(step, 2.0, 1.0), RegionError);

  SUBCASE("log derivative") {
    const auto q = integrate([](double t) { return cplx(t > 0.0 ? std::log(t) * t : 0.0); }, 0.0, 1.0,
                             QuadratureConfig{});
    CHECK(std::abs(q.value + 0.25) < 1e-8);
    const double h = 1e-4;
    const cplx fd = (mellin_lower(step, 2.0 + h, 1.0) - mellin_lower(step, 2.0 - h, 1.0)) / (2 * h);
    CHECK(std::abs(fd + 0.25) < 1e-7);
  }
}

TEST_CASE("inverse scale transform") {
  const MellinPair u = fst_catalog(fst::Step{});
  for (double tau : {0.25, 0.5, 2.0, 4.0}) CHECK(std::abs(ifst_numeric(u.lower, u.upper, 1.0, tau) - 1.0) < 1e-4);
  const MellinPair e = fst_catalog(fst::ExpDecay{1.0});
  CHECK(std::abs(ifst_numeric(e.lower, e.upper, 1.0, 2.0) - std::exp(-2.0)) < 1e-4);
  CHECK(std::abs(ifst_numeric(e.lower, e.upper, 1.0, 0.5) - std::exp(-0.5)) < 1e-4);
  const auto zero = [](cplx) { return cplx(0.0); };
  CHECK(std::abs(ifst_numeric(zero, zero, 1.0, 3.0)) == 0.0);
}

TEST_CASE("scale transform properties") {
  const ComplexFrequency f(2.5, 0.5);
  SUBCASE("multiplication by t") {
    const MellinPair p = fst_apply_property(fst_catalog(fst::Step{}), fop::MulPower{1.0});
    const FstValue v = evaluate(p, f);
    CHECK(close(v.total(), 1.0 / (f.s() + 1.0) + 1.0 / (std::conj(f.s()) - 1.0), 1e-13));
    CHECK(close(v.total(), fst_forward(fst::Power{1.0}, f).total(), 1e-13));
  }
  SUBCASE("unit scale is the identity") {
    const MellinPair base = fst_catalog(fst::ExpDecay{1.0});
    const FstValue v = evaluate(fst_apply_property(base, fop::Scale{1.0, decay}), f);
    const FstValue w = evaluate(base, f);
    CHECK(close(v.lower, w.lower, 1e-13));
    CHECK(close(v.upper, w.upper, 1e-13));
  }
  SUBCASE("scaling by two") {
    const FstValue v = evaluate(fst_apply_property(fst_catalog(fst::ExpDecay{1.0}), fop::Scale{2.0, decay}), f);
    const FstValue q = fst_forward([](double t) { return cplx(std::exp(-2.0 * t)); }, f);
    CHECK(close(v.total(), q.total(), 1e-8));
  }
  SUBCASE("derivative") {
    const MellinPair d = fst_apply_property(fst_catalog(fst::ExpDecay{1.0}), fop::Derivative{1, std::exp(-1.0), {}});
    const FstValue q = fst_forward([](double t) { return cplx(-std::exp(-t)); }, f);
    CHECK(close(evaluate(d, f).total(), q.total(), 1e-8));
  }
  SUBCASE("missing boundary value") {
    CHECK_THROWS_AS(fst_apply_property(fst_catalog(fst::ExpDecay{1.0}), fop::Derivative{1, {}, {}}), ConstraintError);
  }
}

TEST_CASE("damped moment generating function") {
  CHECK(close(mgf_eval(laplace_pdf, ComplexFrequency(0.5, 0.0)), 2.0 / 3.0, 1e-10));
  CHECK(close(mgf_eval([](double y) { return std::exp(-y * y / 2) / std::sqrt(2 * kPi); }, ComplexFrequency(1e-9, 0.0)),
              1.0, 1e-8));
  const cplx c = mgf_eval(cauchy_pdf, ComplexFrequency(1.0, 0.0));
  CHECK(std::isfinite(c.real()));
  CHECK(c.real() > 0.0);
  CHECK(c.real() < 1.0);
  CHECK_THROWS_AS(validate_pdf([](double y) { return 2.0 * laplace_pdf(y); }), ValidationError);
  CHECK_THROWS_AS(validate_pdf([](double y) { return y > 0 ? -laplace_pdf(y) : 3.0 * laplace_pdf(y); }),
                  ValidationError);
  CHECK_NOTHROW(validate_pdf(laplace_pdf));
}

TEST_CASE("series of half-line moments") {
  const HalfLineMoments m = half_line_moments(laplace_pdf, 4);
  REQUIRE(m.positive.size() == 5);
  for (int k = 0; k <= 4; ++k) {
    CHECK(std::abs(m.positive[k] - 0.5 * std::tgamma(k + 1.0)) < 1e-10);
    CHECK(std::abs(m.negative[k] - (k % 2 ? -1.0 : 1.0) * m.positive[k]) < 1e-10);
  }
  CHECK(mgf_series_check(laplace_pdf, 0.1, 6, 1e-6).passed);
  CHECK(mgf_series_check(laplace_pdf, 0.2, 12, 1e-6).passed);
}

// Six terms leave a truncation error near |s|^7, about 1e-5 at radius 0.2, so this
// configuration cannot meet a 1e-6 tolerance. Kept as an expected failure.
TEST_CASE("six-term series at radius 0.2" * doctest::should_fail()) {
  const MgfSeriesReport r = mgf_series_check(laplace_pdf, 0.2, 6, 1e-6);
  CHECK(r.max_error < 1e-6);
}

TEST_CASE("damped Cauchy moments") {
  for (int m : {1, 3, 5}) CHECK(cauchy_damped_moment(m, 1.0).value == 0.0);
  const MomentReport two = cauchy_damped_moment(2, 1.0);
  CHECK(two.converged);
  const auto q = integrate_half_line([](double y) { return cplx(std::exp(-y) / (1.0 + y * y)); }, QuadratureConfig{});
  CHECK(std::abs(two.value - 2.0 / kPi * (1.0 - q.value.real())) < 1e-8);
  CHECK(std::abs(two.value - 0.24100) < 1e-5);
  CHECK(std::abs(cauchy_damped_moment(0, 1e-4).value - 1.0) < 1e-2);
  CHECK(cauchy_damped_moment(0, 1e-4).value < 1.0);
}
