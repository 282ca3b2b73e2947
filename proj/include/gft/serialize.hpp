#pragma once

#include <string>

#include "gft/gdtft.hpp"
#include "gft/signal_model.hpp"

namespace gft {

/// Parses `{"terms":[{"coef":[re,im],"atom":{"kind":...}}]}`.
/// Kinds: delta, const, sgn, step, exp, abs_exp, cexp, cos, sin, pow, abs_pow,
/// inv_pow and gated. Malformed JSON raises ParseError with the byte offset;
/// unknown kinds and missing fields raise ParseError; out-of-range parameters
/// raise ConstraintError.
SignalSpec parse_signal_spec(const std::string& text);
std::string to_json(const SignalSpec& spec, int indent = 2);

/// Same layout with d_-prefixed kinds: d_delta, d_const, d_sgn, d_step,
/// d_geom, d_abs_geom, d_cexp, d_cos, d_sin, d_pole_mode.
SequenceSpec parse_sequence_spec(const std::string& text);
std::string to_json(const SequenceSpec& spec, int indent = 2);

}  // namespace gft
