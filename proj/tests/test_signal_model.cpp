#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gft/errors.hpp"
#include "gft/serialize.hpp"
#include "gft/signal_model.hpp"

using namespace gft;

TEST_CASE("pointwise evaluation of atoms") {
  CHECK(evaluate_atom(atom::Signum{}, -3.0) == cplx(-1.0));
  CHECK(evaluate_atom(atom::Signum{}, 0.0) == cplx(0.0));
  CHECK(evaluate_atom(atom::UnitStep{atom::Orientation::Forward}, 0.0) == cplx(1.0));
  CHECK(evaluate_atom(atom::UnitStep{atom::Orientation::Reversed}, 0.5) == cplx(0.0));
  CHECK(std::abs(evaluate_atom(atom::AbsExp{1.0}, 2.0) - std::exp(-2.0)) < 1e-15);
  CHECK(std::abs(evaluate_atom(atom::Cosine{2.0}, 0.3) - std::cos(0.6)) < 1e-15);
  CHECK(std::abs(evaluate_atom(atom::ComplexExp{1.0}, 0.5) - std::exp(kJ * 0.5)) < 1e-15);
}

TEST_CASE("evaluation at singular points is a domain error") {
  CHECK_THROWS_AS(evaluate_atom(atom::DiracDelta{1.0}, 1.0), DomainError);
  CHECK_THROWS_AS(evaluate_atom(atom::InversePower{1.0}, 0.0), DomainError);
  CHECK(evaluate_atom(atom::DiracDelta{1.0}, 0.5) == cplx(0.0));
}

TEST_CASE("atom constraints") {
  SignalSpec s;
  CHECK_THROWS_AS(s.add(1.0, atom::Power{-1.0}), ConstraintError);
  CHECK_THROWS_AS(s.add(1.0, atom::AbsPower{-2.0}), ConstraintError);
  CHECK_THROWS_AS(s.add(1.0, atom::InversePower{0.5}), ConstraintError);
  CHECK_THROWS_AS(s.add(cplx(NAN, 0.0), atom::Constant{}), ConstraintError);
  CHECK_NOTHROW(s.add(1.0, atom::Power{-0.5}));
}

TEST_CASE("frequency points") {
  const ComplexFrequency f(1.5, -2.0);
  CHECK(f.s() == cplx(1.5, -2.0));
  CHECK(f.s_conj() == cplx(1.5, 2.0));
  const DiscreteFrequency d(std::log(2.0), 0.0);
  CHECK(std::abs(d.z() - 2.0) < 1e-15);
  CHECK(std::abs(d.r() - 2.0) < 1e-15);
}

TEST_CASE("regions of convergence") {
  CHECK(Roc::entire_plane().contains(-100.0));
  CHECK(Roc::half_plane(1.0).contains(1.5));
  CHECK_FALSE(Roc::half_plane(1.0).contains(1.0));
  CHECK(Roc::half_plane(-1.0).intersect(Roc::half_plane(2.0)).bound() == 2.0);
  CHECK_THROWS_AS(Roc::half_plane(INFINITY), ConstraintError);
}

TEST_CASE("normalization merges and orders terms") {
  SignalSpec a;
  a.add(1.0, atom::Cosine{1.0}).add(2.0, atom::Sine{2.0}).add(-1.0, atom::Cosine{1.0});
  SignalSpec b;
  b.add(2.0, atom::Sine{2.0});
  CHECK(equivalent(a, b));
  CHECK(normalize(a).terms().size() == 1);
  CHECK_FALSE(equivalent(a, SignalSpec{}));
}

TEST_CASE("reflection is an involution") {
  SignalSpec s;
  s.add(1.0, atom::UnitStep{}).add(0.5, atom::TwoSidedExp{0.3}).add(2.0, atom::DiracDelta{1.5});
  const SignalSpec rr = reflect(reflect(s));
  CHECK(equivalent(rr, s));
  for (double t : {-2.0, -0.5, 0.7, 3.0})
    CHECK(std::abs(evaluate_regular(reflect(s), t) - evaluate_regular(s, -t)) < 1e-14);
}

TEST_CASE("periodic extension repeats one period") {
  const PeriodicSignal p(2.0, [](double t) { return cplx(t); });
  CHECK(std::abs(p(0.5) - 0.5) < 1e-15);
  CHECK(std::abs(p(2.5) - 0.5) < 1e-15);
  CHECK(std::abs(p(-1.5) - 0.5) < 1e-15);
  CHECK_THROWS_AS(PeriodicSignal(0.0, [](double) { return cplx(1.0); }), ConstraintError);
}

TEST_CASE("sampled signals interpolate on their grid") {
  const SampledSignal s(0.0, 0.5, {0.0, 1.0, 2.0});
  CHECK(s.t_end() == doctest::Approx(1.0));
  CHECK(std::abs(s(0.5) - 1.0) < 1e-15);
  CHECK(std::abs(s(5.0)) == 0.0);
}

TEST_CASE("signal spec JSON") {
  SUBCASE("delta at the origin") {
    const SignalSpec s = parse_signal_spec(R"({"terms":[{"coef":[1,0],"atom":{"kind":"delta","t0":0}}]})");
    REQUIRE(s.terms().size() == 1);
    CHECK(std::get<atom::DiracDelta>(s.terms()[0].atom).t0 == 0.0);
  }
  SUBCASE("empty term list") { CHECK(parse_signal_spec(R"({"terms":[]})").empty()); }
  SUBCASE("scaled two-sided decay") {
    const SignalSpec s = parse_signal_spec(R"({"terms":[{"coef":[2,0],"atom":{"kind":"abs_exp","a":[1,0]}}]})");
    CHECK(std::abs(evaluate_signal(s, 1.0) - 2.0 * std::exp(-1.0)) < 1e-15);
  }
  SUBCASE("round trip") {
    SignalSpec s;
    s.add(cplx(1, -2), atom::Cosine{3.0}).add(0.5, atom::UnitStep{atom::Orientation::Reversed});
    atom::Gated g;
    g.k = 1;
    g.rate = cplx(-1.0, 0.5);
    g.osc = atom::Oscillation::Sin;
    g.omega = 2.0;
    g.t0 = 1.0;
    s.add(3.0, g);
    CHECK(equivalent(parse_signal_spec(to_json(s)), s));
  }
  SUBCASE("malformed JSON reports a position") {
    try {
      parse_signal_spec(R"({"terms":[)");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position() > 0);
    }
  }
  SUBCASE("schema errors") {
    CHECK_THROWS_AS(parse_signal_spec(R"({"terms":[{"coef":1,"atom":{"kind":"nope"}}]})"), ParseError);
    CHECK_THROWS_AS(parse_signal_spec(R"({"terms":[{"coef":1,"atom":{"kind":"delta"}}]})"), ParseError);
    CHECK_THROWS_AS(parse_signal_spec(R"([1,2])"), ParseError);
    CHECK_THROWS_AS(parse_signal_spec(R"({"terms":[{"coef":1,"atom":{"kind":"pow","m":-1}}]})"), ConstraintError);
  }
}
