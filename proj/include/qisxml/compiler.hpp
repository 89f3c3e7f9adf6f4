#pragma once

// Translation of programs into QCL source. Circuits are expanded inline, one
// fresh qureg per operation.
//
// Supported gates: H, I, X, Y, Z, S, T, SHIFT, SWAP, C-NOT, C-Z, C-S, C-T,
// TOFFOLI, FREDKIN. Any other gate raises UnsupportedGate.

#include <string>

#include "qisxml/document_set.hpp"

namespace qisxml {

inline constexpr const char* kCompilerVersion = "1.0";

/// Throws ValidationFailed, UnsupportedGate, SubProgramUnsupported,
/// FixedValueMapUnsupported, UnboundParameter.
std::string compile_qcl(const Program& program, const DocumentSet& set);

/// "register0001" for counter 1.
std::string fresh_register_name(int counter);

}  // namespace qisxml
