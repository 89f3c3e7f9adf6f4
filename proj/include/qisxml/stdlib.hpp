#pragma once

// The builtin gate and circuit libraries. Both are kept as QIS-XML text and
// parsed on first use.

#include <string_view>

#include "qisxml/document_set.hpp"
#include "qisxml/model.hpp"

namespace qisxml {

inline constexpr std::string_view kBuiltinGatesUri = "builtin:stdlib-gates.xml";
inline constexpr std::string_view kBuiltinCircuitsUri = "builtin:stdlib-circuits.xml";

std::string_view builtin_gates_xml();
std::string_view builtin_circuits_xml();

const GateLibrary& builtin_gates();
const CircuitLibrary& builtin_circuits();

/// Adds both builtin libraries to the builtin tier of `set`.
void add_builtins(DocumentSet& set);

}  // namespace qisxml
