#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gft/errors.hpp"
#include "gft/ivp.hpp"

using namespace gft;

namespace {

SignalSpec single(SignalAtom a, cplx coef = 1.0) {
  SignalSpec s;
  s.add(coef, std::move(a));
  return s;
}

std::vector<double> grid(double lo, double hi, double step, std::vector<double> avoid = {}) {
  std::vector<double> g;
  for (double t = lo; t <= hi + 1e-12; t += step) {
    bool ok = true;
    for (double a : avoid) ok = ok && std::abs(t - a) > 0.05;
    if (ok) g.push_back(t);
  }
  return g;
}

atom::Gated delayed_sine(double t0, int side) {
  atom::Gated g;
  g.rate = 0.0;
  g.osc = atom::Oscillation::Sin;
  g.omega = 1.0;
  g.t0 = t0;
  g.side = side;
  return g;
}

}  // namespace

TEST_CASE("free oscillator") {
  const OdeProblem p{{1.0, 0.0, 4.0}, {}, {1.0, 0.0}};
  const SignalSpec x = solve_ode_gft(p);
  CHECK(equivalent(x, single(atom::Cosine{2.0})));
  CHECK(verify_solution(x, p, grid(-3, 3, 0.1, {0.0})) < 1e-5);
  CHECK(equivalent(solve_ode_gft(OdeProblem{{1.0, 0.0, 1.0}, {}, {0.0, 1.0}}), single(atom::Sine{1.0})));
}

TEST_CASE("impulse forcing on either side of the origin") {
  SUBCASE("right") {
    const OdeProblem p{{1.0, 0.0, 1.0}, single(atom::DiracDelta{1.0}), {0.0, 0.0}};
    const SignalSpec x = solve_ode_gft(p);
    CHECK(equivalent(x, single(delayed_sine(1.0, 1))));
    CHECK(verify_solution(x, p, grid(-3, 3, 0.05, {1.0})) < 1e-5);
  }
  SUBCASE("left") {
    const OdeProblem p{{1.0, 0.0, 1.0}, single(atom::DiracDelta{-1.0}), {0.0, 0.0}};
    CHECK(equivalent(solve_ode_gft(p), single(delayed_sine(-1.0, -1), -1.0)));
  }
}

TEST_CASE("first-order decay on both half-lines") {
  const OdeProblem p{{1.0, 1.0}, {}, {1.0}};
  const SignalSpec x = solve_ode_gft(p);
  for (double t : {-2.0, -0.5, 0.5, 2.0}) CHECK(std::abs(evaluate_regular(x, t) - std::exp(-t)) < 1e-13);
}

TEST_CASE("zero data gives the zero signal") {
  CHECK(solve_ode_gft(OdeProblem{{1.0, 0.0, 1.0}, {}, {0.0, 0.0}}).empty());
}

TEST_CASE("transform routes agree") {
  SignalSpec mixed;
  mixed.add(1.0, atom::Cosine{3.0}).add(2.0, atom::DiracDelta{0.5});
  const std::vector<OdeProblem> problems = {
      {{1.0, 0.0, 4.0}, {}, {1.0, 0.0}},
      {{1.0, 0.0, 1.0}, single(atom::DiracDelta{1.0}), {0.0, 0.0}},
      {{1.0, 0.4, 2.0}, mixed, {1.0, 0.0}},
      {{1.0, 2.0, 3.0, 1.0}, single(atom::AbsExp{2.0}), {0.5, -1.0, 0.25}},
      {{1.0, 1.0}, {}, {1.0}},
  };
  for (const auto& p : problems) CHECK(equivalent(solve_ode_gft(p), solve_ode_ft(p)));
}

TEST_CASE("strict policy refuses growing half-line modes") {
  const OdeProblem decaying{{1.0, 1.0}, {}, {1.0}};
  CHECK_THROWS_AS(solve_ode_ft(decaying, FtPolicy::Strict), UnsupportedError);
  const OdeProblem oscillating{{1.0, 0.0, 4.0}, {}, {1.0, 0.0}};
  CHECK_NOTHROW(solve_ode_ft(oscillating, FtPolicy::Strict));
}

TEST_CASE("branches meet the initial conditions at the origin") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int it = 0; it < 10; ++it) {
    const OdeProblem p{{1.0, U(rng), 2.0 + U(rng)}, single(atom::Cosine{1.0 + U(rng)}, U(rng)), {U(rng), U(rng)}};
    const SignalSpec x = solve_ode_gft(p);
    const double h = 1e-6;
    const cplx left = evaluate_regular(x, -h), right = evaluate_regular(x, h);
    CHECK(std::abs(left - p.initial_conditions[0]) < 1e-5);
    CHECK(std::abs(right - p.initial_conditions[0]) < 1e-5);
    const cplx dleft = (evaluate_regular(x, -h) - evaluate_regular(x, -2 * h)) / h;
    const cplx dright = (evaluate_regular(x, 2 * h) - evaluate_regular(x, h)) / h;
    CHECK(std::abs(dleft - p.initial_conditions[1]) < 1e-4);
    CHECK(std::abs(dright - p.initial_conditions[1]) < 1e-4);
    CHECK(verify_solution(x, p, grid(-2, 2, 0.1, {0.0})) < 1e-5);
  }
}

TEST_CASE("residual check detects a wrong candidate") {
  const OdeProblem p{{1.0, 0.0, 4.0}, {}, {1.0, 0.0}};
  CHECK(verify_solution(single(atom::Sine{1.0}), p, grid(-3, 3, 0.1)) > 1.0);
  const OdeProblem fifth{{1.0, 0.0, 0.0, 0.0, 0.0, 1.0}, {}, {0, 0, 0, 0, 0}};
  CHECK_THROWS_AS(verify_solution(SignalSpec{}, fifth, {0.5}), ConstraintError);
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(solve_ode_gft(OdeProblem{{0.0, 0.0}, {}, {1.0}}), DegenerateError);
  CHECK_THROWS_AS(solve_ode_gft(OdeProblem{{0.0, 1.0}, {}, {1.0}}), ConstraintError);
  CHECK_THROWS_AS(solve_ode_gft(OdeProblem{{1.0, 0.0, 1.0}, {}, {1.0}}), ConstraintError);
}

TEST_CASE("difference equations") {
  SequenceSpec impulse;
  impulse.add(1.0, seq::DeltaN{0});
  SUBCASE("impulse response") {
    const auto s = solve_difference(DifferenceProblem{{1.0, -0.5}, impulse, {0.0}}, 10);
    for (int n = 0; n < 10; ++n) CHECK(std::abs(s.samples[n] - std::pow(0.5, n)) < 1e-15);
    for (long n = 0; n < 10; ++n) CHECK(std::abs(evaluate_sequence(s.closed_form, n) - std::pow(0.5, n)) < 1e-15);
  }
  SUBCASE("initial condition only") {
    const auto s = solve_difference(DifferenceProblem{{1.0, -0.5}, {}, {2.0}}, 10);
    for (int n = 0; n < 10; ++n) CHECK(std::abs(s.samples[n] - std::pow(0.5, n)) < 1e-15);
  }
  SUBCASE("no recursion") {
    const auto s = solve_difference(DifferenceProblem{{1.0}, impulse, {}}, 4);
    CHECK(s.samples[0] == cplx(1.0));
    CHECK(std::abs(s.samples[3]) == 0.0);
  }
  SUBCASE("repeated pole and oscillatory forcing") {
    SequenceSpec f;
    f.add(1.0, seq::CosineN{0.7}).add(0.5, seq::UnitStepN{});
    const DifferenceProblem p{{1.0, -1.2, 0.36}, f, {0.3, -0.2}};
    const auto closed = solve_difference(p, 65).samples;
    const auto direct = recurse_difference(p, 65);
    for (int n = 0; n < 65; ++n) CHECK(std::abs(closed[n] - direct[n]) < 1e-11);
  }
  SUBCASE("random stable instances match the recursion") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int it = 0; it < 100; ++it) {
      const int K = 1 + it % 4;
      std::vector<cplx> b{1.0};
      std::vector<double> poles;
      for (int k = 0; k < K; ++k) {
        // Keep poles apart; near-coincident pairs lose digits to cancellation between their residues.
        double q = 0.9 * U(rng);
        while (std::any_of(poles.begin(), poles.end(), [&](double o) { return std::abs(o - q) < 0.05; }))
          q = 0.9 * U(rng);
        poles.push_back(q);
        std::vector<cplx> nb(b.size() + 1, 0.0);
        for (std::size_t i = 0; i < b.size(); ++i) {
          nb[i] += b[i];
          nb[i + 1] -= q * b[i];
        }
        b = nb;
      }
      std::vector<cplx> ic;
      for (int k = 0; k < K; ++k) ic.push_back(U(rng));
      SequenceSpec f;
      f.add(U(rng), seq::DeltaN{0});
      const DifferenceProblem dp{b, f, ic};
      const auto a = solve_difference(dp, 65).samples;
      const auto r = recurse_difference(dp, 65);
      for (int n = 0; n < 65; ++n) worst = std::max(worst, std::abs(a[n] - r[n]));
    }
    CHECK(worst < 1e-12);
  }
  SUBCASE("nearly coincident poles keep ten digits") {
    std::vector<cplx> b{1.0, -(0.832918 + 0.834461), 0.832918 * 0.834461};
    const DifferenceProblem dp{b, impulse, {0.4, -0.3}};
    const auto a = solve_difference(dp, 65).samples;
    const auto r = recurse_difference(dp, 65);
    for (int n = 0; n < 65; ++n) CHECK(std::abs(a[n] - r[n]) < 1e-10);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(solve_difference(DifferenceProblem{{0.0, 1.0}, impulse, {0.0}}), DegenerateError);
    CHECK_THROWS_AS(solve_difference(DifferenceProblem{{1.0, 0.5}, impulse, {}}), ConstraintError);
  }
}
