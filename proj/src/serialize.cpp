#include "gft/serialize.hpp"

#include <json.hpp>

#include "gft/errors.hpp"

namespace gft {

namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

cplx complex_of(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ParseError(where + ": expected a number or [re, im]");
}

json json_of(cplx z) { return json::array({z.real(), z.imag()}); }

const json& field(const json& obj, const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + name + "'");
  return *it;
}

double number(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_number()) throw ParseError(where + ": field '" + name + "' must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* name, double fallback, const std::string& where) {
  return obj.contains(name) ? number(obj, name, where) : fallback;
}

long integer(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_number_integer()) throw ParseError(where + ": field '" + name + "' must be an integer");
  return v.get<long>();
}

atom::Orientation orientation_of(const json& obj, const std::string& where) {
  if (!obj.contains("orientation")) return atom::Orientation::Forward;
  const json& v = obj["orientation"];
  if (v == "forward") return atom::Orientation::Forward;
  if (v == "reversed") return atom::Orientation::Reversed;
  throw ParseError(where + ": orientation must be \"forward\" or \"reversed\"");
}

const char* orientation_name(atom::Orientation o) {
  return o == atom::Orientation::Forward ? "forward" : "reversed";
}

template <class Add>
void for_each_term(const json& doc, Add add) {
  if (!doc.is_object()) throw ParseError("top level must be an object");
  const json& terms = field(doc, "terms", "document");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "term " + std::to_string(i);
    const json& t = terms[i];
    if (!t.is_object()) throw ParseError(where + ": must be an object");
    const cplx coef = complex_of(field(t, "coef", where), where + " coef");
    const json& a = field(t, "atom", where);
    if (!a.is_object()) throw ParseError(where + ": atom must be an object");
    const json& kind = field(a, "kind", where);
    if (!kind.is_string()) throw ParseError(where + ": atom kind must be a string");
    add(coef, kind.get<std::string>(), a, where);
  }
}

SignalAtom signal_atom(const std::string& kind, const json& a, const std::string& where) {
  using namespace atom;
  if (kind == "delta") return DiracDelta{number(a, "t0", where)};
  if (kind == "const") return Constant{};
  if (kind == "sgn") return Signum{};
  if (kind == "step") return UnitStep{orientation_of(a, where)};
  if (kind == "exp") return TwoSidedExp{complex_of(field(a, "a", where), where)};
  if (kind == "abs_exp") return AbsExp{complex_of(field(a, "a", where), where)};
  if (kind == "cexp") return ComplexExp{number(a, "omega0", where)};
  if (kind == "cos") return Cosine{number(a, "omega0", where)};
  if (kind == "sin") return Sine{number(a, "omega0", where)};
  if (kind == "pow") return Power{number(a, "m", where)};
  if (kind == "abs_pow") return AbsPower{number(a, "m", where)};
  if (kind == "inv_pow") return InversePower{number(a, "m", where)};
  if (kind == "gated") {
    Gated g;
    g.k = static_cast<int>(integer(a, "k", where));
    g.rate = complex_of(field(a, "rate", where), where);
    const std::string osc = a.value("osc", "none");
    if (osc == "none")
      g.osc = Oscillation::None;
    else if (osc == "cos")
      g.osc = Oscillation::Cos;
    else if (osc == "sin")
      g.osc = Oscillation::Sin;
    else
      throw ParseError(where + ": osc must be none, cos or sin");
    g.omega = number_or(a, "omega", 0.0, where);
    g.t0 = number_or(a, "t0", 0.0, where);
    g.side = a.contains("side") ? static_cast<int>(integer(a, "side", where)) : 1;
    return g;
  }
  throw ParseError(where + ": unknown atom kind '" + kind + "'");
}

json signal_atom_json(const SignalAtom& a) {
  using namespace atom;
  return std::visit(
      overloaded{
          [](const DiracDelta& d) { return json{{"kind", "delta"}, {"t0", d.t0}}; },
          [](const Constant&) { return json{{"kind", "const"}}; },
          [](const Signum&) { return json{{"kind", "sgn"}}; },
          [](const UnitStep& u) { return json{{"kind", "step"}, {"orientation", orientation_name(u.orientation)}}; },
          [](const TwoSidedExp& e) { return json{{"kind", "exp"}, {"a", json_of(e.a)}}; },
          [](const AbsExp& e) { return json{{"kind", "abs_exp"}, {"a", json_of(e.a)}}; },
          [](const ComplexExp& c) { return json{{"kind", "cexp"}, {"omega0", c.omega0}}; },
          [](const Cosine& c) { return json{{"kind", "cos"}, {"omega0", c.omega0}}; },
          [](const Sine& c) { return json{{"kind", "sin"}, {"omega0", c.omega0}}; },
          [](const Power& p) { return json{{"kind", "pow"}, {"m", p.m}}; },
          [](const AbsPower& p) { return json{{"kind", "abs_pow"}, {"m", p.m}}; },
          [](const InversePower& p) { return json{{"kind", "inv_pow"}, {"m", p.m}}; },
          [](const Gated& g) {
            const char* osc = g.osc == Oscillation::Cos ? "cos" : (g.osc == Oscillation::Sin ? "sin" : "none");
            return json{{"kind", "gated"}, {"k", g.k},         {"rate", json_of(g.rate)}, {"osc", osc},
                        {"omega", g.omega}, {"t0", g.t0}, {"side", g.side}};
          },
      },
      a);
}

SequenceAtom sequence_atom(const std::string& kind, const json& a, const std::string& where) {
  using namespace seq;
  if (kind == "d_delta") return DeltaN{integer(a, "n0", where)};
  if (kind == "d_const") return ConstantN{};
  if (kind == "d_sgn") return SignumN{};
  if (kind == "d_step") return UnitStepN{orientation_of(a, where)};
  if (kind == "d_geom") return GeometricN{complex_of(field(a, "a", where), where)};
  if (kind == "d_abs_geom") return AbsGeometricN{complex_of(field(a, "a", where), where)};
  if (kind == "d_cexp") return ComplexExpN{number(a, "Omega0", where)};
  if (kind == "d_cos") return CosineN{number(a, "Omega0", where)};
  if (kind == "d_sin") return SineN{number(a, "Omega0", where)};
  if (kind == "d_pole_mode")
    return PoleModeN{complex_of(field(a, "p", where), where), static_cast<int>(integer(a, "m", where)),
                     a.contains("n0") ? integer(a, "n0", where) : 0};
  throw ParseError(where + ": unknown sequence atom kind '" + kind + "'");
}

json sequence_atom_json(const SequenceAtom& a) {
  using namespace seq;
  return std::visit(
      overloaded{
          [](const DeltaN& d) { return json{{"kind", "d_delta"}, {"n0", d.n0}}; },
          [](const ConstantN&) { return json{{"kind", "d_const"}}; },
          [](const SignumN&) { return json{{"kind", "d_sgn"}}; },
          [](const UnitStepN& u) {
            return json{{"kind", "d_step"}, {"orientation", orientation_name(u.orientation)}};
          },
          [](const GeometricN& g) { return json{{"kind", "d_geom"}, {"a", json_of(g.a)}}; },
          [](const AbsGeometricN& g) { return json{{"kind", "d_abs_geom"}, {"a", json_of(g.a)}}; },
          [](const ComplexExpN& c) { return json{{"kind", "d_cexp"}, {"Omega0", c.Omega0}}; },
          [](const CosineN& c) { return json{{"kind", "d_cos"}, {"Omega0", c.Omega0}}; },
          [](const SineN& c) { return json{{"kind", "d_sin"}, {"Omega0", c.Omega0}}; },
          [](const PoleModeN& p) { return json{{"kind", "d_pole_mode"}, {"p", json_of(p.p)}, {"m", p.m}, {"n0", p.n0}}; },
      },
      a);
}

}  // namespace

SignalSpec parse_signal_spec(const std::string& text) {
  const json doc = parse_document(text);
  SignalSpec spec;
  for_each_term(doc, [&](cplx coef, const std::string& kind, const json& a, const std::string& where) {
    spec.add(coef, signal_atom(kind, a, where));
  });
  return spec;
}

std::string to_json(const SignalSpec& spec, int indent) {
  json terms = json::array();
  for (const auto& t : spec.terms()) terms.push_back({{"coef", json_of(t.coef)}, {"atom", signal_atom_json(t.atom)}});
  return json{{"terms", terms}}.dump(indent);
}

SequenceSpec parse_sequence_spec(const std::string& text) {
  const json doc = parse_document(text);
  SequenceSpec spec;
  for_each_term(doc, [&](cplx coef, const std::string& kind, const json& a, const std::string& where) {
    spec.add(coef, sequence_atom(kind, a, where));
  });
  return spec;
}

std::string to_json(const SequenceSpec& spec, int indent) {
  json terms = json::array();
  for (const auto& t : spec.terms())
    terms.push_back({{"coef", json_of(t.coef)}, {"atom", sequence_atom_json(t.atom)}});
  return json{{"terms", terms}}.dump(indent);
}

}  // namespace gft
