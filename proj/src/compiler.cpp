#include "qisxml/compiler.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "qisxml/error.hpp"
#include "qisxml/semantics.hpp"
#include "qisxml/validation.hpp"
#include "qisxml/xml_io.hpp"

namespace qisxml {

std::string fresh_register_name(int counter) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "register%04d", counter);
    return buf;
}

namespace {

std::string join_indices(const std::string& base, const std::vector<int>& zero_based) {
    std::string s;
    for (std::size_t k = 0; k < zero_based.size(); ++k) {
        if (k) s += '&';
        s += base + "[" + std::to_string(zero_based[k]) + "]";
    }
    return s;
}

class QclEmitter {
  public:
    QclEmitter(const Program& program, const DocumentSet& set) : program_(program), set_(set) {}

    std::string run() {
        out_ << "// =====\n";
        out_ << "// QIS-XML QCL Compiler v" << kCompilerVersion << "\n";
        out_ << "// Program " << program_.identification.id;
        if (program_.name) out_ << " (" << *program_.name << ")";
        out_ << "\n// =====\n\n";
        out_ << "int i;\nint value;\n";
        out_ << "// Allocate program memory\n";
        out_ << "qureg memory[" << program_.memory.size << "];\n";

        if (program_.memory.prepare) {
            out_ << "\n";
            prepare(*program_.memory.prepare, "memory", nullptr);
        }
        for (const auto& reg : program_.globalRegisters) {
            if (!reg.prepare) continue;
            const auto indices = resolve_register(reg, program_.memory.size, program_.globalRegisters);
            const std::string name = alias(indices);
            prepare(*reg.prepare, name, &indices);
        }

        const auto& actions = program_.actions;
        std::size_t trailing = actions.size();
        while (trailing > 0 && std::holds_alternative<Measure>(actions[trailing - 1])) --trailing;
        for (std::size_t a = 0; a < trailing; ++a) {
            out_ << "\n";
            if (const auto* ex = std::get_if<Execute>(&actions[a])) {
                execute(*ex);
            } else {
                out_ << "// MEASURE\n";
                for (int q : resolve_register(std::get<Measure>(actions[a]).reg, program_.memory.size,
                                              program_.globalRegisters)) {
                    out_ << "measure memory[" << q - 1 << "],value;\n";
                }
            }
        }

        out_ << "\n// MEASUREMENT\n";
        std::vector<int> targets = effective_measure_targets(program_);
        std::sort(targets.begin(), targets.end());
        for (std::size_t k = 0; k < targets.size();) {
            std::size_t end = k;
            while (end + 1 < targets.size() && targets[end + 1] == targets[end] + 1) ++end;
            out_ << "for i=" << targets[k] - 1 << " to " << targets[end] - 1 << " {\n";
            out_ << "    measure memory[i],value;\n";
            out_ << "    print i,\"=\",value;\n";
            out_ << "}\n";
            k = end + 1;
        }
        return out_.str();
    }

  private:
    std::string fresh() { return fresh_register_name(++counter_); }

    // Declares a qureg over 1-based memory `indices`.
    std::string alias(const std::vector<int>& indices) {
        const std::string name = fresh();
        bool whole = static_cast<int>(indices.size()) == program_.memory.size;
        for (std::size_t k = 0; whole && k < indices.size(); ++k) whole = indices[k] == static_cast<int>(k) + 1;
        if (whole) {
            out_ << "qureg " << name << " = memory;\n";
            return name;
        }
        std::vector<int> zero_based;
        std::string listed;
        for (int q : indices) {
            zero_based.push_back(q - 1);
            listed += (listed.empty() ? "" : ",") + std::to_string(q - 1);
        }
        out_ << "// Partial register: memory qubits " << listed << " (0-based)\n";
        out_ << "qureg " << name << " = " << join_indices("memory", zero_based) << ";\n";
        return name;
    }

    // `indices` non-null: QubitSet indices are 1-based register positions.
    void prepare(const Prepare& p, const std::string& reg, const std::vector<int>* indices) {
        out_ << "// PREPARE\n";
        for (const auto& set : p.sets) {
            const Complex v = evaluate(set.value, {});
            int bit = -1;
            if (std::abs(v.imag()) <= kTolerance) {
                if (std::abs(v.real()) <= kTolerance) bit = 0;
                else if (std::abs(v.real() - 1.0) <= kTolerance) bit = 1;
            }
            if (bit < 0) throw Error(ErrorKind::NonBasisPrepare, "prepare value is not 0 or 1");
            for (int idx : set.qubitIndexes) {
                if (indices && (idx < 1 || idx > static_cast<int>(indices->size()))) {
                    throw Error(ErrorKind::IndexOutOfMemory, "prepare index " + std::to_string(idx));
                }
                const std::string target = reg + "[" + std::to_string(idx - 1) + "]";
                out_ << "measure " << target << ",value;\n";
                out_ << "if value != " << bit << " { X(" << target << "); }\n";
            }
        }
    }

    void execute(const Execute& ex) {
        const Circuit* circuit = nullptr;
        std::string label;
        if (const auto* c = std::get_if<Circuit>(&ex.target)) {
            circuit = c;
            label = c->identification ? c->identification->id : "(inline)";
        } else if (const auto* cr = std::get_if<CircuitRef>(&ex.target)) {
            circuit = set_.resolve_circuit(cr->ref).entity;
            label = cr->ref.id;
        } else {
            throw Error(ErrorKind::SubProgramUnsupported,
                        "Execute targets program '" + std::get<ProgramRef>(ex.target).ref.id + "'");
        }
        const auto indices = resolve_register(ex.reg, program_.memory.size, program_.globalRegisters);
        const std::string base = alias(indices);
        if (ex.reg.prepare) prepare(*ex.reg.prepare, base, nullptr);
        std::vector<int> lines(indices.size());
        for (std::size_t k = 0; k < lines.size(); ++k) lines[k] = static_cast<int>(k);
        out_ << "\n// CIRCUIT " << label << "\n";
        circuit_body(*circuit, base, lines, false, 1);
    }

    // lines[j]: 0-based index into `base` driven by circuit qubit j+1.
    void circuit_body(const Circuit& c, const std::string& base, const std::vector<int>& lines, bool reverse,
                      int depth) {
        if (depth > 16) throw Error(ErrorKind::NestedCircuitDepthExceeded, "circuit references nest too deep");
        auto emit_step = [&](std::size_t s) {
            out_ << "// STEP " << s + 1 << "\n";
            const auto& ops = c.steps[s].operations;
            for (std::size_t o = 0; o < ops.size(); ++o) {
                const std::size_t k = reverse ? ops.size() - 1 - o : o;
                out_ << "// OPERATION " << k + 1 << "\n";
                operation(ops[k], c, base, lines, reverse, depth);
            }
            out_ << "\n";
        };
        if (!reverse) {
            for (std::size_t s = 0; s < c.steps.size(); ++s) emit_step(s);
        } else {
            for (std::size_t s = c.steps.size(); s-- > 0;) emit_step(s);
        }
    }

    void operation(const Operation& op, const Circuit& c, const std::string& base, const std::vector<int>& lines,
                   bool reverse, int depth) {
        const Gate* gate = nullptr;
        const Circuit* inner = nullptr;
        if (const auto* g = std::get_if<Gate>(&op.target)) gate = g;
        else if (const auto* gr = std::get_if<GateRef>(&op.target)) gate = set_.resolve_gate(gr->ref).entity;
        else inner = set_.resolve_circuit(std::get<CircuitRef>(op.target).ref).entity;
        const int inputs = gate ? gate->size() : inner->size;
        std::vector<int> by_input(static_cast<std::size_t>(inputs), -1);
        for (const auto& m : op.maps) {
            if (m.fixedValue) {
                throw Error(ErrorKind::FixedValueMapUnsupported,
                            "map to input " + std::to_string(m.input) + " has a fixed value");
            }
            if (m.input < 1 || m.input > inputs || !m.qubit || *m.qubit < 1 || *m.qubit > c.size) {
                throw Error(ErrorKind::DimensionMismatch, "map outside gate or circuit range");
            }
            by_input[m.input - 1] = lines[*m.qubit - 1];
        }
        for (int line : by_input) {
            if (line < 0) throw Error(ErrorKind::DimensionMismatch, "gate input left unmapped");
        }
        const bool adjoint = op.reverse != reverse;
        if (inner) {
            out_ << "// CIRCUIT " << inner->identification.value_or(Identification{"(unidentified)"}).id << "\n";
            circuit_body(*inner, base, by_input, adjoint, depth + 1);
            return;
        }
        const std::string r = fresh();
        out_ << "qureg " << r << " = " << join_indices(base, by_input) << ";\n";
        out_ << gate_statement(*gate, op, r, adjoint);
    }

    std::string gate_statement(const Gate& gate, const Operation& op, const std::string& r, bool adjoint) const {
        const std::string& id = gate.identification.id;
        const std::string bang = adjoint ? "!" : "";
        auto q = [&](int k) { return r + "[" + std::to_string(k) + "]"; };
        if (id == "I") return "// I(" + q(0) + ") has no effect\n";
        if (id == "H" || id == "X" || id == "Y" || id == "Z" || id == "S" || id == "T") {
            return bang + id + "(" + q(0) + ");\n";
        }
        if (id == "C-NOT") return "CNot(" + q(1) + "," + q(0) + ");\n";
        if (id == "TOFFOLI") return "CNot(" + q(2) + ", " + q(0) + " & " + q(1) + ");\n";
        if (id == "SWAP") return "Swap(" + q(0) + "," + q(1) + ");\n";
        if (id == "FREDKIN") {
            return "CNot(" + q(1) + "," + q(2) + ");\n" + "CNot(" + q(2) + ", " + q(0) + " & " + q(1) + ");\n" +
                   "CNot(" + q(1) + "," + q(2) + ");\n";
        }
        if (id == "C-Z" || id == "C-S" || id == "C-T") {
            const char* angle = id == "C-Z" ? "pi" : id == "C-S" ? "pi/2" : "pi/4";
            return bang + "CPhase(" + angle + ", " + q(0) + " & " + q(1) + ");\n";
        }
        if (id == "SHIFT") {
            const Bindings b = bindings_of(op, {});
            const auto it = b.find("theta");
            if (it == b.end()) throw Error(ErrorKind::UnboundParameter, "SHIFT needs a value for theta");
            return bang + "V(2*pi*" + format_double(it->second) + ", " + q(0) + ");\n";
        }
        throw Error(ErrorKind::UnsupportedGate, "gate '" + id + "' has no QCL encoding");
    }

    const Program& program_;
    const DocumentSet& set_;
    std::ostringstream out_;
    int counter_ = 0;
};

}  // namespace

std::string compile_qcl(const Program& program, const DocumentSet& set) {
    for (const auto& f : validate_program(program, set)) {
        if (f.severity == Severity::Error) throw Error(ErrorKind::ValidationFailed, f.code + ": " + f.message);
    }
    return QclEmitter(program, set).run();
}

}  // namespace qisxml
