#pragma once

#include <string>

#include "qfta/arith.hpp"
#include "qfta/ir.hpp"
#include "qfta/simulator.hpp"

namespace qfta {

/// JSON circuit form. Normative field names: gate ("H"|"X"|"PHASE"), k,
/// inverse, target, controls [{q, polarity "pos"|"neg"}], repeat_until
/// {flag, expect, max_iters, body}. A format_version field is always
/// present; circuits carry their register map when exported from a builder.
std::string to_json(const Program& program);
std::string to_json(const ArithCircuit& circuit);

Program program_from_json(const std::string& text);

/// QASM 2.0-compatible text over {h, x, cx, ccx, cp}: negative controls are
/// X-sandwiched, three-or-more-control gates expand through an and-ladder on
/// appended ancilla qubits. Hybrid loops cannot be expressed; they raise
/// UnsupportedExport.
std::string to_qasm(const Program& program);
std::string to_qasm(const ArithCircuit& circuit);

/// Debug dump of amplitudes as [re, im] pairs.
std::string to_json(const StateVector& state);

}  // namespace qfta
