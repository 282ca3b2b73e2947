// Command-line front end: transform sweeps, solvers and catalog queries as CSV/JSON.

#include <unistd.h>

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "gft/catalog.hpp"
#include "gft/errors.hpp"
#include "gft/gdtft.hpp"
#include "gft/ivp.hpp"
#include "gft/numeric.hpp"
#include "gft/scale_gamma.hpp"
#include "gft/serialize.hpp"
#include "gft/special.hpp"

namespace {

using gft::cplx;
using nlohmann::json;

constexpr int kExitRegion = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitUsage = 64;
constexpr int kExitOther = 1;

std::string number(double v, bool force_point) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, r.ptr);
  if (force_point && s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

/// Rows of numbers; grid columns print as given, value columns always carry a decimal point.
class Table {
 public:
  Table(std::vector<std::string> columns, std::size_t grid_columns)
      : columns_(std::move(columns)), grid_columns_(grid_columns) {}

  void add(std::vector<double> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os, const std::string& format) const {
    if (format == "json") {
      json rows = json::array();
      for (const auto& r : rows_) rows.push_back(r);
      os << json{{"columns", columns_}, {"rows", rows}}.dump(2) << "\n";
      return;
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << "\n";
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << number(r[i], i >= grid_columns_);
      os << "\n";
    }
  }

 private:
  std::vector<std::string> columns_;
  std::size_t grid_columns_;
  std::vector<std::vector<double>> rows_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--spec", "cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(fileno(stderr)); }

void diagnose(const std::string& kind, const std::string& msg) {
  if (use_color())
    std::cerr << "\x1b[31m" << kind << ":\x1b[0m " << msg << "\n";
  else
    std::cerr << kind << ": " << msg << "\n";
}

struct Common {
  std::string spec_path;
  std::vector<double> sigma;
  std::vector<double> omega;
  double tol = 1e-8;
  double p = 0.0;
  double q = 1.0;
  bool p_set = false;
  std::string format = "csv";
  int ladder = 5;

  gft::QuadratureConfig quadrature() const {
    gft::QuadratureConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = std::min(1e-12, tol);
    return cfg;
  }
};

void add_format(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_grid(CLI::App* sub, Common& c, const char* omega_name = "--omega") {
  sub->add_option("--sigma", c.sigma, "Damping values (comma separated)")->delimiter(',')->required();
  sub->add_option(omega_name, c.omega, "Frequency values (comma separated)")->delimiter(',')->required();
}

void check_grid(const std::vector<double>& v, const char* name) {
  if (v.empty()) throw CLI::ValidationError(name, "grid must not be empty");
  for (double x : v)
    if (!std::isfinite(x)) throw CLI::ValidationError(name, "grid values must be finite");
}

gft::SignalSpec load_signal(const Common& c) { return gft::parse_signal_spec(read_file(c.spec_path)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Fourier transform toolkit"};
  app.require_subcommand(1);
  Common c;
  std::function<void()> action;

  // catalog
  auto* catalog = app.add_subcommand("catalog", "Closed-form spectrum of a signal spec");
  catalog->add_option("--spec", c.spec_path, "Signal-spec JSON file")->required();
  catalog->add_option("--p", c.p, "Weight exponent |t|^p")->each([&](const std::string&) { c.p_set = true; });
  add_format(catalog, c);
  catalog->callback([&] {
    action = [&] {
      const auto expr = gft::lookup_gft(load_signal(c), c.p_set ? std::optional<double>(c.p) : std::nullopt);
      if (c.format == "json") {
        auto terms = [](const std::vector<gft::SpectrumTerm>& v) {
          json out = json::array();
          for (const auto& t : v)
            out.push_back({{"coef", {t.coef.real(), t.coef.imag()}},
                           {"center", {t.center.real(), t.center.imag()}},
                           {"p", t.p},
                           {"delay", t.delay},
                           {"kind", t.kind == gft::SpectrumTerm::Kind::Log ? "log" : "power"}});
          return out;
        };
        std::cout << json{{"clt", terms(expr.clt)}, {"lt", terms(expr.lt)}, {"roc", expr.roc.describe()}}.dump(2)
                  << "\n";
      } else {
        std::cout << gft::describe(expr) << "\n";
      }
    };
  });

  // gft
  bool numeric = false;
  auto* gft_cmd = app.add_subcommand("gft", "Evaluate the transform on a (sigma, omega) grid");
  gft_cmd->add_option("--spec", c.spec_path, "Signal-spec JSON file")->required();
  add_grid(gft_cmd, c);
  gft_cmd->add_option("--tol", c.tol, "Relative quadrature tolerance");
  gft_cmd->add_option("--p", c.p, "Weight exponent |t|^p")->each([&](const std::string&) { c.p_set = true; });
  gft_cmd->add_option("--q", c.q, "Damping exponent exp(-sigma |t|^q)");
  gft_cmd->add_flag("--numeric", numeric, "Use quadrature instead of the closed form");
  add_format(gft_cmd, c);
  gft_cmd->callback([&] {
    action = [&] {
      check_grid(c.sigma, "--sigma");
      check_grid(c.omega, "--omega");
      const auto spec = load_signal(c);
      const gft::WeightSpec w{c.p, c.q};
      w.validate();
      const bool closed = !numeric && c.q == 1.0;
      std::optional<gft::SpectrumExpr> expr;
      if (closed) expr = gft::lookup_gft(spec, c.p_set ? std::optional<double>(c.p) : std::nullopt);
      Table t({"sigma", "omega", "re", "im"}, 2);
      for (double s : c.sigma)
        for (double o : c.omega) {
          const gft::ComplexFrequency f(s, o);
          const cplx v = expr ? gft::eval_spectrum(*expr, f) : gft::gft_forward(spec, f, w, c.quadrature());
          t.add({s, o, v.real(), v.imag()});
        }
      t.print(std::cout, c.format);
    };
  });

  // igft
  std::vector<double> times;
  auto* igft_cmd = app.add_subcommand("igft", "Reconstruct x(t) from the closed-form spectrum");
  igft_cmd->add_option("--spec", c.spec_path, "Signal-spec JSON file")->required();
  igft_cmd->add_option("--sigma", c.sigma, "Damping of the synthesis line")->delimiter(',')->required();
  igft_cmd->add_option("--t", times, "Time points")->delimiter(',')->required();
  igft_cmd->add_option("--tol", c.tol, "Relative quadrature tolerance");
  add_format(igft_cmd, c);
  igft_cmd->callback([&] {
    action = [&] {
      check_grid(c.sigma, "--sigma");
      check_grid(times, "--t");
      const auto expr = gft::lookup_gft(load_signal(c));
      auto X = [&](double s, double o) { return gft::eval_spectrum(expr, gft::ComplexFrequency(s, o)); };
      Table t({"sigma", "t", "re", "im"}, 2);
      for (double s : c.sigma)
        for (double tt : times) {
          const cplx v = gft::igft_reconstruct(X, s, tt, c.quadrature());
          t.add({s, tt, v.real(), v.imag()});
        }
      t.print(std::cout, c.format);
    };
  });

  // ft-limit
  auto* ftl = app.add_subcommand("ft-limit", "sigma -> 0 limit of the spectrum");
  ftl->add_option("--spec", c.spec_path, "Signal-spec JSON file")->required();
  ftl->add_option("--omega", c.omega, "Frequencies")->delimiter(',')->required();
  ftl->add_option("--ladder", c.ladder, "Extrapolation depth (numeric mode)");
  ftl->add_option("--tol", c.tol, "Relative quadrature tolerance");
  ftl->add_option("--p", c.p, "Weight exponent |t|^p")->each([&](const std::string&) { c.p_set = true; });
  ftl->add_flag("--numeric", numeric, "Extrapolate a sigma ladder of quadratures");
  add_format(ftl, c);
  ftl->callback([&] {
    action = [&] {
      check_grid(c.omega, "--omega");
      const auto spec = load_signal(c);
      Table t({"sigma", "omega", "re", "im"}, 2);
      if (numeric) {
        gft::LadderConfig lc;
        lc.depth = c.ladder;
        for (double o : c.omega) {
          const cplx v = gft::ft_limit_numeric(spec, o, lc, c.quadrature(), gft::WeightSpec{c.p, 1.0});
          t.add({0.0, o, v.real(), v.imag()});
        }
      } else {
        const auto expr = gft::lookup_gft(spec, c.p_set ? std::optional<double>(c.p) : std::nullopt);
        for (double o : c.omega) {
          const gft::FtLimit lim = gft::ft_limit_symbolic(expr, o);
          t.add({0.0, o, lim.regular.real(), lim.regular.imag()});
          for (const auto& a : lim.atoms)
            std::cerr << "note: delta atom " << a.weight << " * delta(omega - " << a.omega0 << ")\n";
        }
      }
      t.print(std::cout, c.format);
    };
  });

  // periodic
  double period = 1.0;
  auto* per = app.add_subcommand("periodic", "Transform of the periodic extension of one period");
  per->add_option("--spec", c.spec_path, "Signal-spec JSON file for one period")->required();
  per->add_option("--period", period, "Period T")->required();
  add_grid(per, c);
  per->add_option("--tol", c.tol, "Relative quadrature tolerance");
  add_format(per, c);
  per->callback([&] {
    action = [&] {
      check_grid(c.sigma, "--sigma");
      check_grid(c.omega, "--omega");
      const gft::PeriodicSignal px(period, load_signal(c));
      Table t({"sigma", "omega", "re", "im"}, 2);
      for (double s : c.sigma)
        for (double o : c.omega) {
          const cplx v = gft::periodic_gft(px, gft::ComplexFrequency(s, o), c.quadrature());
          t.add({s, o, v.real(), v.imag()});
        }
      t.print(std::cout, c.format);
    };
  });

  // gdtft
  long n_max = 0;
  auto* gd = app.add_subcommand("gdtft", "Discrete transform on a (sigma, Omega) grid");
  gd->add_option("--spec", c.spec_path, "Sequence-spec JSON file")->required();
  add_grid(gd, c, "--Omega,--omega");
  gd->add_option("--nmax", n_max, "Use direct sums up to |n| = nmax instead of the closed form");
  add_format(gd, c);
  gd->callback([&] {
    action = [&] {
      check_grid(c.sigma, "--sigma");
      check_grid(c.omega, "--Omega");
      const auto spec = gft::parse_sequence_spec(read_file(c.spec_path));
      const auto expr = gft::gdtft_closed_form(spec);
      Table t({"sigma", "Omega", "re", "im"}, 2);
      for (double s : c.sigma)
        for (double o : c.omega) {
          const gft::DiscreteFrequency f(s, o);
          const cplx v = n_max > 0 ? gft::gdtft_numeric([&](long n) { return gft::evaluate_sequence(spec, n); }, f,
                                                        n_max, c.tol)
                                         .value
                                   : gft::eval_zspectrum(expr, f);
          t.add({s, o, v.real(), v.imag()});
        }
      t.print(std::cout, c.format);
    };
  });

  // igdtft
  std::vector<long> ns;
  auto* igd = app.add_subcommand("igdtft", "Recover samples from the closed-form discrete spectrum");
  igd->add_option("--spec", c.spec_path, "Sequence-spec JSON file")->required();
  igd->add_option("--sigma", c.sigma, "Damping")->delimiter(',')->required();
  igd->add_option("--n", ns, "Sample indices")->delimiter(',')->required();
  igd->add_option("--tol", c.tol, "Absolute tolerance of the panel refinement");
  add_format(igd, c);
  igd->callback([&] {
    action = [&] {
      check_grid(c.sigma, "--sigma");
      const auto expr = gft::gdtft_closed_form(gft::parse_sequence_spec(read_file(c.spec_path)));
      auto X = [&](double o, double s) { return gft::eval_zspectrum(expr, gft::DiscreteFrequency(s, o)); };
      Table t({"sigma", "n", "re", "im"}, 2);
      for (double s : c.sigma)
        for (long n : ns) {
          const cplx v = gft::igdtft_numeric(X, s, n, 64, c.tol);
          t.add({s, static_cast<double>(n), v.real(), v.imag()});
        }
      t.print(std::cout, c.format);
    };
  });

  // ivp
  int order = 0;
  std::vector<double> coeffs, ics;
  std::string forcing_path;
  bool ft_route = false, strict = false;
  auto* ivp = app.add_subcommand("ivp", "Solve sum a_k x^(k) = forcing with conditions at t = 0");
  ivp->add_option("--order", order, "Order M")->required();
  ivp->add_option("--coeffs", coeffs, "a_M,...,a_0")->delimiter(',')->required();
  ivp->add_option("--ic", ics, "x(0),x'(0),...")->delimiter(',')->required();
  ivp->add_option("--forcing", forcing_path, "Signal-spec JSON file of the forcing");
  ivp->add_flag("--ft", ft_route, "Use the s = j omega route");
  ivp->add_flag("--strict", strict, "With --ft, refuse modes without a half-line Fourier transform");
  ivp->callback([&] {
    action = [&] {
      if (static_cast<int>(coeffs.size()) != order + 1)
        throw CLI::ValidationError("--coeffs", "expected order + 1 coefficients");
      gft::OdeProblem p;
      p.coefficients.assign(coeffs.begin(), coeffs.end());
      p.initial_conditions.assign(ics.begin(), ics.end());
      if (!forcing_path.empty()) p.forcing = gft::parse_signal_spec(read_file(forcing_path));
      const gft::SignalSpec sol =
          ft_route ? gft::solve_ode_ft(p, strict ? gft::FtPolicy::Strict : gft::FtPolicy::Permissive)
                   : gft::solve_ode_gft(p);
      std::cout << gft::to_json(sol) << "\n";
    };
  });

  // diffeq
  int samples = 16;
  auto* de = app.add_subcommand("diffeq", "Solve sum b_k x[n-k] = f[n] with x[-1..-K] given");
  de->add_option("--coeffs", coeffs, "b_0,...,b_K")->delimiter(',')->required();
  de->add_option("--ic", ics, "x[-1],...,x[-K]")->delimiter(',');
  de->add_option("--forcing", forcing_path, "Sequence-spec JSON file of the forcing");
  de->add_option("--samples", samples, "Number of samples to print")->check(CLI::NonNegativeNumber);
  add_format(de, c);
  de->callback([&] {
    action = [&] {
      gft::DifferenceProblem p;
      p.coefficients.assign(coeffs.begin(), coeffs.end());
      p.initial_conditions.assign(ics.begin(), ics.end());
      if (!forcing_path.empty()) p.forcing = gft::parse_sequence_spec(read_file(forcing_path));
      const auto sol = gft::solve_difference(p, samples);
      if (c.format == "json") {
        json out = json::parse(gft::to_json(sol.closed_form));
        json xs = json::array();
        for (const auto& v : sol.samples) xs.push_back({v.real(), v.imag()});
        out["samples"] = xs;
        std::cout << out.dump(2) << "\n";
      } else {
        Table t({"n", "re", "im"}, 1);
        for (std::size_t n = 0; n < sol.samples.size(); ++n)
          t.add({static_cast<double>(n), sol.samples[n].real(), sol.samples[n].imag()});
        t.print(std::cout, c.format);
      }
    };
  });

  // fst
  std::string atom_name;
  double atom_param = 1.0;
  auto* fst_cmd = app.add_subcommand("fst", "Scale transform of a catalog atom on (0, inf)");
  fst_cmd->add_option("--atom", atom_name, "step | exp | delta | power | bose")
      ->required()
      ->check(CLI::IsMember({"step", "exp", "delta", "power", "bose"}));
  fst_cmd->add_option("--a", atom_param, "Decay rate (exp), exponent (power) or location (delta)");
  add_grid(fst_cmd, c);
  add_format(fst_cmd, c);
  fst_cmd->callback([&] {
    action = [&] {
      check_grid(c.sigma, "--sigma");
      check_grid(c.omega, "--omega");
      gft::FstAtom a = gft::fst::Step{};
      if (atom_name == "exp") a = gft::fst::ExpDecay{atom_param};
      if (atom_name == "delta") a = gft::fst::Delta{atom_param};
      if (atom_name == "power") a = gft::fst::Power{atom_param};
      if (atom_name == "bose") a = gft::fst::BoseEinstein{};
      Table t({"sigma", "omega", "re", "im"}, 2);
      for (double s : c.sigma)
        for (double o : c.omega) {
          const cplx v = gft::fst_forward(a, gft::ComplexFrequency(s, o)).total();
          t.add({s, o, v.real(), v.imag()});
        }
      t.print(std::cout, c.format);
    };
  });

  // gamma
  std::vector<double> s_arg;
  std::string gamma_kind = "generalized";
  double gamma_x = 1.0;
  auto* gam = app.add_subcommand("gamma", "Generalized, complete or incomplete gamma function");
  gam->add_option("--s", s_arg, "s as RE or RE,IM")->delimiter(',')->required()->expected(1, 2);
  gam->add_option("--kind", gamma_kind, "generalized | full | lower | upper")
      ->check(CLI::IsMember({"generalized", "full", "lower", "upper"}));
  gam->add_option("--x", gamma_x, "Split point of the incomplete functions");
  add_format(gam, c);
  gam->callback([&] {
    action = [&] {
      const cplx s(s_arg.at(0), s_arg.size() > 1 ? s_arg[1] : 0.0);
      cplx v;
      if (gamma_kind == "generalized")
        v = gft::generalized_gamma(s);
      else if (gamma_kind == "full")
        v = gft::gamma_fn(s);
      else
        v = gft::incomplete_gamma(gamma_kind == "lower" ? gft::GammaKind::Lower : gft::GammaKind::Upper, s, gamma_x);
      Table t({"re", "im"}, 0);
      t.add({v.real(), v.imag()});
      t.print(std::cout, c.format);
    };
  });

  // moments
  std::vector<int> orders;
  auto* mom = app.add_subcommand("moments", "Damped Cauchy moments");
  mom->add_option("--m", orders, "Moment orders")->delimiter(',')->required();
  mom->add_option("--sigma", c.sigma, "Damping values")->delimiter(',')->required();
  mom->add_option("--tol", c.tol, "Relative quadrature tolerance");
  add_format(mom, c);
  mom->callback([&] {
    action = [&] {
      check_grid(c.sigma, "--sigma");
      Table t({"m", "sigma", "value", "converged"}, 2);
      for (int m : orders)
        for (double s : c.sigma) {
          const auto r = gft::cauchy_damped_moment(m, s, c.quadrature());
          t.add({static_cast<double>(m), s, r.value, r.converged ? 1.0 : 0.0});
        }
      t.print(std::cout, c.format);
    };
  });

  // cwt
  std::vector<double> scales, shifts;
  auto* cwt = app.add_subcommand("cwt", "Damped wavelet coefficients (Mexican hat)");
  cwt->add_option("--spec", c.spec_path, "Signal-spec JSON file")->required();
  cwt->add_option("--sigma", c.sigma, "Damping")->delimiter(',')->required();
  cwt->add_option("--a", scales, "Scales")->delimiter(',')->required();
  cwt->add_option("--b", shifts, "Shifts")->delimiter(',')->required();
  add_format(cwt, c);
  cwt->callback([&] {
    action = [&] {
      check_grid(c.sigma, "--sigma");
      const auto spec = load_signal(c);
      const auto psi = gft::mexican_hat();
      auto x = [&](double t) { return gft::evaluate_regular(spec, t); };
      Table t({"sigma", "a", "b", "re", "im"}, 3);
      for (double s : c.sigma)
        for (double a : scales)
          for (double b : shifts) {
            const cplx v = gft::damped_cwt(x, s, a, b, psi, c.quadrature());
            t.add({s, a, b, v.real(), v.imag()});
          }
      t.print(std::cout, c.format);
    };
  });

  // fct
  auto* fct = app.add_subcommand("fct", "Damped Fourier cosine transform of the causal part");
  fct->add_option("--spec", c.spec_path, "Signal-spec JSON file")->required();
  add_grid(fct, c);
  fct->add_option("--tol", c.tol, "Relative quadrature tolerance");
  add_format(fct, c);
  fct->callback([&] {
    action = [&] {
      check_grid(c.sigma, "--sigma");
      check_grid(c.omega, "--omega");
      const auto spec = load_signal(c);
      auto x = [&](double t) { return gft::evaluate_regular(spec, t); };
      Table t({"sigma", "omega", "re", "im"}, 2);
      for (double s : c.sigma)
        for (double o : c.omega) {
          const cplx v = gft::damped_fct(x, s, o, c.quadrature());
          t.add({s, o, v.real(), v.imag()});
        }
      t.print(std::cout, c.format);
    };
  });

  // md2
  std::vector<double> omega2;
  auto* md2 = app.add_subcommand("md2", "Two-dimensional transform of the separable product x(t1) x(t2)");
  md2->add_option("--spec", c.spec_path, "Signal-spec JSON file")->required();
  md2->add_option("--sigma", c.sigma, "Damping")->delimiter(',')->required();
  md2->add_option("--omega1", c.omega, "First frequency")->delimiter(',')->required();
  md2->add_option("--omega2", omega2, "Second frequency")->delimiter(',')->required();
  md2->add_option("--tol", c.tol, "Relative quadrature tolerance");
  add_format(md2, c);
  md2->callback([&] {
    action = [&] {
      check_grid(c.sigma, "--sigma");
      const auto spec = load_signal(c);
      auto g = [&](double t1, double t2) { return gft::evaluate_regular(spec, t1) * gft::evaluate_regular(spec, t2); };
      Table t({"sigma", "omega1", "omega2", "re", "im"}, 3);
      for (double s : c.sigma)
        for (double o1 : c.omega)
          for (double o2 : omega2) {
            const cplx v = gft::md_gft_2d(g, s, o1, o2, c.quadrature());
            t.add({s, o1, o2, v.real(), v.imag()});
          }
      t.print(std::cout, c.format);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    diagnose("usage", e.what());
    return kExitUsage;
  }

  try {
    if (action) action();
  } catch (const CLI::Error& e) {
    diagnose("usage", e.what());
    return kExitUsage;
  } catch (const gft::RegionError& e) {
    diagnose("region", e.what());
    return kExitRegion;
  } catch (const gft::ConvergenceError& e) {
    diagnose("convergence", e.what());
    return kExitConvergence;
  } catch (const gft::DivergenceError& e) {
    diagnose("convergence", e.what());
    return kExitConvergence;
  } catch (const gft::ParseError& e) {
    diagnose("usage", std::string(e.what()) + " (byte " + std::to_string(e.position()) + ")");
    return kExitUsage;
  } catch (const gft::ConstraintError& e) {
    diagnose("usage", e.what());
    return kExitUsage;
  } catch (const gft::Error& e) {
    diagnose("error", e.what());
    return kExitOther;
  }
  return 0;
}
