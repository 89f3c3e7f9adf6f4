#include "qisxml/genadder.hpp"

#include "qisxml/error.hpp"

namespace qisxml {

namespace {

// Bits are zero-based here; qubit numbers in the model are 1-based.
class AdderBuilder {
  public:
    explicit AdderBuilder(Circuit& circuit) : circuit_(circuit) {}

    void note(std::string text) { pending_ = std::move(text); }

    // No-op when the control is below zero (the carry-in of bit 0).
    void cnot(int control, int target) {
        if (control < 0) return;
        emit("C-NOT", {control, target});
    }

    void c2not(int ctrl1, int ctrl2, int target) {
        if (ctrl1 < 0 || ctrl2 < 0) return;
        emit("TOFFOLI", {ctrl1, ctrl2, target});
    }

    void bit_gates(int numBits, int bit) {
        note("sum bit " + std::to_string(bit));
        c2not(bit * 3, bit * 3 + 1, bit * 3 + 2);
        cnot(bit * 3, bit * 3 + 1);
        c2not(bit * 3 - 1, bit * 3 + 1, bit * 3 + 2);

        if (numBits > 1) bit_gates(numBits - 1, bit + 1);

        if (numBits > 1 || bit > 0) note("finish bit " + std::to_string(bit));
        if (numBits > 1) {
            c2not(bit * 3 - 1, bit * 3 + 1, bit * 3 + 2);
            c2not(bit * 3, bit * 3 + 1, bit * 3 + 2);
            cnot(bit * 3, bit * 3 + 2);
        }
        cnot(bit * 3 - 1, bit * 3 + 1);
    }

  private:
    void emit(const char* gate, std::initializer_list<int> qubits) {
        Operation op;
        int input = 1;
        for (int q : qubits) op.maps.push_back(Map{q + 1, input++, std::nullopt});
        op.target = GateRef{Reference{gate}};
        Step step;
        step.operations.push_back(std::move(op));
        step.note = std::move(pending_);
        pending_.clear();
        circuit_.steps.push_back(std::move(step));
    }

    Circuit& circuit_;
    std::string pending_;
};

}  // namespace

std::string adder_circuit_id(int numBits) { return "adder" + std::to_string(numBits); }

CircuitLibrary generate_adder(int numBits) {
    if (numBits < 1) {
        throw Error(ErrorKind::BadWidth, "Number of bits must be positive: " + std::to_string(numBits));
    }
    Circuit circuit;
    circuit.identification = Identification{adder_circuit_id(numBits), std::nullopt, std::nullopt};
    circuit.size = numBits * 3;
    for (int i = 0; i < numBits; ++i) {
        circuit.inputLabels.push_back({i * 3 + 1, "InputA" + std::to_string(i)});
        circuit.inputLabels.push_back({i * 3 + 2, "InputB" + std::to_string(i)});
        circuit.inputLabels.push_back({i * 3 + 3, "Ancillary" + std::to_string(i)});
    }
    // Sum i sits on InputB i, which is qubit 3i+2.
    for (int i = 0; i < numBits; ++i) circuit.outputLabels.push_back({i * 3 + 2, "Sum" + std::to_string(i)});
    circuit.outputLabels.push_back({numBits * 3, "CarryOut"});

    AdderBuilder(circuit).bit_gates(numBits, 0);

    CircuitLibrary library;
    library.identification = Identification{kGenAdderLibraryId, std::nullopt, std::nullopt};
    library.circuits.push_back(std::move(circuit));
    return library;
}

}  // namespace qisxml
