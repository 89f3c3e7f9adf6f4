#pragma once

// Ripple-carry adder generator: one circuit of 3N qubits built from Toffoli
// and C-NOT gates, one operation per step.
//
// Qubit layout for bit i (0-based): InputA at 3i+1, InputB at 3i+2 and an
// ancilla at 3i+3. The sum of bit i is left on 3i+2, the carry out on 3N.

#include <string>

#include "qisxml/model.hpp"

namespace qisxml {

inline constexpr const char* kGenAdderLibraryId = "genadder";
inline constexpr const char* kGenAdderVersion = "2007.01";

/// Library "genadder" holding a circuit identified as "adder<numBits>".
/// Throws BadWidth when numBits < 1.
CircuitLibrary generate_adder(int numBits);

/// Identifier given to the generated circuit, e.g. "adder2".
std::string adder_circuit_id(int numBits);

}  // namespace qisxml
