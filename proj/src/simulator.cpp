#include "qisxml/simulator.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qisxml/error.hpp"
#include "qisxml/semantics.hpp"
#include "qisxml/validation.hpp"

namespace qisxml {

namespace {

constexpr double kNegligible = 1e-12;

}  // namespace

StateVector::StateVector(int qubits) : qubits_(qubits) {
    if (qubits < 1 || qubits > kMaxMemoryQubits) {
        throw Error(ErrorKind::MemoryTooLarge, std::to_string(qubits) + " qubit(s) requested, supported range is 1.." +
                                                   std::to_string(kMaxMemoryQubits));
    }
    amplitudes_.assign(std::size_t{1} << qubits, Complex{});
    amplitudes_[0] = 1.0;
}

StateVector StateVector::basis(int qubits, std::uint64_t index) {
    StateVector s(qubits);
    s.amplitudes_.at(index) = 1.0;
    if (index != 0) s.amplitudes_[0] = 0.0;
    return s;
}

double StateVector::norm_squared() const noexcept {
    double total = 0.0;
    for (const auto& a : amplitudes_) total += std::norm(a);
    return total;
}

std::uint64_t StateVector::mask(int qubit) const {
    if (qubit < 1 || qubit > qubits_) {
        throw Error(ErrorKind::IndexOutOfMemory,
                    "qubit " + std::to_string(qubit) + " outside memory of size " + std::to_string(qubits_));
    }
    return std::uint64_t{1} << (qubits_ - qubit);
}

double StateVector::probability_one(int qubit) const {
    const auto m = mask(qubit);
    double p = 0.0;
    for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
        if (k & m) p += std::norm(amplitudes_[k]);
    }
    return p;
}

double StateVector::collapse(int qubit, int bit) {
    const auto m = mask(qubit);
    double p = 0.0;
    for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
        if (((k & m) != 0) == (bit != 0)) p += std::norm(amplitudes_[k]);
    }
    const double scale = p > 0.0 ? 1.0 / std::sqrt(p) : 0.0;
    for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
        if (((k & m) != 0) == (bit != 0)) amplitudes_[k] *= scale;
        else amplitudes_[k] = 0.0;
    }
    return p;
}

double SampleRng::next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

void apply_gate(StateVector& state, const CMatrix& matrix, std::span<const int> targets) {
    const std::size_t k = targets.size();
    const std::size_t local = std::size_t{1} << k;
    if (matrix.rows() != local || matrix.cols() != local) {
        throw Error(ErrorKind::DimensionMismatch, std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                                                      " matrix applied to " + std::to_string(k) + " target(s)");
    }
    std::vector<std::uint64_t> masks(k);
    std::uint64_t all = 0;
    for (std::size_t i = 0; i < k; ++i) {
        masks[i] = state.mask(targets[i]);
        if (all & masks[i]) {
            throw Error(ErrorKind::DuplicateTarget, "qubit " + std::to_string(targets[i]) + " targeted twice");
        }
        all |= masks[i];
    }
    // offsets[l]: memory bits set for local index l; input 1 is the MSB of l.
    std::vector<std::uint64_t> offsets(local, 0);
    for (std::size_t l = 0; l < local; ++l) {
        for (std::size_t i = 0; i < k; ++i) {
            if (l & (std::size_t{1} << (k - 1 - i))) offsets[l] |= masks[i];
        }
    }
    auto& amps = state.amplitudes();
    std::vector<Complex> in(local), out(local);
    for (std::uint64_t base = 0; base < amps.size(); ++base) {
        if (base & all) continue;
        for (std::size_t l = 0; l < local; ++l) in[l] = amps[base | offsets[l]];
        for (std::size_t r = 0; r < local; ++r) {
            Complex sum{};
            for (std::size_t c = 0; c < local; ++c) sum += matrix(r, c) * in[c];
            out[r] = sum;
        }
        for (std::size_t l = 0; l < local; ++l) amps[base | offsets[l]] = out[l];
    }
}

namespace {

void run_circuit(StateVector& state, const Circuit& circuit, std::span<const int> qubitMap, const DocumentSet& set,
                 const Bindings& bindings, bool reverse, int depth) {
    if (depth > kMaxCircuitDepth) {
        throw Error(ErrorKind::NestedCircuitDepthExceeded,
                    "circuit references nest deeper than " + std::to_string(kMaxCircuitDepth));
    }
    if (static_cast<int>(qubitMap.size()) != circuit.size) {
        throw Error(ErrorKind::SizeMismatch, "circuit of size " + std::to_string(circuit.size) + " driven by " +
                                                 std::to_string(qubitMap.size()) + " qubit(s)");
    }
    auto run_op = [&](const Operation& op) {
        const Gate* gate = nullptr;
        const Circuit* inner = nullptr;
        if (const auto* g = std::get_if<Gate>(&op.target)) gate = g;
        else if (const auto* gr = std::get_if<GateRef>(&op.target)) gate = set.resolve_gate(gr->ref).entity;
        else inner = set.resolve_circuit(std::get<CircuitRef>(op.target).ref).entity;
        const int inputs = gate ? gate->size() : inner->size;
        std::vector<int> targets(static_cast<std::size_t>(inputs), 0);
        for (const auto& m : op.maps) {
            if (m.fixedValue) {
                throw Error(ErrorKind::FixedValueMapUnsupported,
                            "map to input " + std::to_string(m.input) + " has a fixed value");
            }
            if (m.input < 1 || m.input > inputs) {
                throw Error(ErrorKind::DimensionMismatch, "map input " + std::to_string(m.input) + " outside 1.." +
                                                              std::to_string(inputs));
            }
            if (!m.qubit || *m.qubit < 1 || *m.qubit > circuit.size) {
                throw Error(ErrorKind::IndexOutOfMemory, "map qubit " + std::to_string(m.qubit.value_or(0)) +
                                                             " outside circuit of size " + std::to_string(circuit.size));
            }
            if (targets[m.input - 1] != 0) {
                throw Error(ErrorKind::DuplicateTarget, "input " + std::to_string(m.input) + " mapped twice");
            }
            targets[m.input - 1] = qubitMap[*m.qubit - 1];
        }
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (targets[i] == 0) {
                throw Error(ErrorKind::DimensionMismatch, "input " + std::to_string(i + 1) + " is not mapped");
            }
        }
        const bool adjoint = op.reverse != reverse;
        if (gate) {
            apply_gate(state, realize_gate(*gate, bindings_of(op, bindings), adjoint), targets);
        } else {
            run_circuit(state, *inner, targets, set, bindings, adjoint, depth + 1);
        }
    };
    if (!reverse) {
        for (const auto& step : circuit.steps) {
            for (const auto& op : step.operations) run_op(op);
        }
    } else {
        for (auto s = circuit.steps.rbegin(); s != circuit.steps.rend(); ++s) {
            for (auto op = s->operations.rbegin(); op != s->operations.rend(); ++op) run_op(*op);
        }
    }
}

}  // namespace

void apply_circuit(StateVector& state, const Circuit& circuit, std::span<const int> qubitMap, const DocumentSet& set,
                   const Bindings& bindings, bool reverse) {
    run_circuit(state, circuit, qubitMap, set, bindings, reverse, 1);
}

CMatrix circuit_unitary(const Circuit& circuit, const DocumentSet& set, const Bindings& bindings) {
    if (circuit.size < 1 || circuit.size > kMaxUnitaryQubits) {
        throw Error(ErrorKind::MemoryTooLarge, "circuit_unitary supports 1.." + std::to_string(kMaxUnitaryQubits) +
                                                   " qubits, got " + std::to_string(circuit.size));
    }
    std::vector<int> identity_map(static_cast<std::size_t>(circuit.size));
    for (int q = 0; q < circuit.size; ++q) identity_map[q] = q + 1;
    const std::size_t dim = std::size_t{1} << circuit.size;
    CMatrix u(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        StateVector s = StateVector::basis(circuit.size, col);
        apply_circuit(s, circuit, identity_map, set, bindings);
        for (std::size_t row = 0; row < dim; ++row) u(row, col) = s.amplitudes()[row];
    }
    return u;
}

namespace {

struct Branch {
    double weight = 1.0;
    StateVector state;
    std::map<int, int> record;
};

class Runner {
  public:
    Runner(const Program& program, const DocumentSet& set, const RunOptions& options)
        : program_(program), set_(set), options_(options), rng_(options.seed) {
        branches_.push_back(Branch{1.0, StateVector(program.memory.size), {}});
    }

    RunResult run() {
        const auto& actions = program_.actions;
        std::size_t trailing = actions.size();
        if (options_.mode == RunMode::Distribution) {
            while (trailing > 0 && std::holds_alternative<Measure>(actions[trailing - 1])) --trailing;
        }
        if (program_.memory.prepare) prepare(*program_.memory.prepare, nullptr);
        for (const auto& reg : program_.globalRegisters) {
            if (reg.prepare) {
                const auto indices = resolve_register(reg, program_.memory.size, program_.globalRegisters);
                prepare(*reg.prepare, &indices);
            }
        }
        for (std::size_t a = 0; a < trailing; ++a) {
            if (const auto* ex = std::get_if<Execute>(&actions[a])) {
                execute(*ex);
            } else {
                for (int q : registers(std::get<Measure>(actions[a]).reg)) measure(q, true);
            }
        }

        std::vector<int> targets = effective_measure_targets(program_);
        if (options_.measureAll) targets = all_qubits();
        std::sort(targets.begin(), targets.end());

        if (options_.mode == RunMode::Sample) {
            Branch& b = branches_.front();
            if (program_.measures().empty() || options_.measureAll) {
                for (int q : targets) measure(q, true);
            }
            MeasurementRecord rec;
            rec.seed = options_.seed;
            for (int q : targets) rec.bits.push_back({q, b.record.at(q)});
            return rec;
        }
        return distribution(targets, trailing);
    }

  private:
    std::vector<int> all_qubits() const {
        std::vector<int> out;
        for (int q = 1; q <= program_.memory.size; ++q) out.push_back(q);
        return out;
    }

    std::vector<int> registers(const Register& reg) const {
        return resolve_register(reg, program_.memory.size, program_.globalRegisters);
    }

    // Collapses `qubit` in every branch, splitting branches in distribution
    // mode when both outcomes are possible.
    void measure(int qubit, bool record) {
        if (options_.mode == RunMode::Sample) {
            Branch& b = branches_.front();
            const double p1 = b.state.probability_one(qubit);
            const int bit = rng_.next() < p1 ? 1 : 0;
            b.state.collapse(qubit, bit);
            if (record) b.record[qubit] = bit;
            return;
        }
        std::vector<Branch> next;
        for (auto& b : branches_) {
            const double p1 = b.state.probability_one(qubit);
            if (p1 > kNegligible && 1.0 - p1 > kNegligible) {
                Branch zero = b;
                zero.state.collapse(qubit, 0);
                zero.weight *= 1.0 - p1;
                if (record) zero.record[qubit] = 0;
                next.push_back(std::move(zero));
                b.state.collapse(qubit, 1);
                b.weight *= p1;
                if (record) b.record[qubit] = 1;
            } else {
                const int bit = p1 > 0.5 ? 1 : 0;
                b.state.collapse(qubit, bit);
                if (record) b.record[qubit] = bit;
            }
            next.push_back(std::move(b));
        }
        if (next.size() > options_.branchLimit) {
            throw Error(ErrorKind::BranchLimitExceeded,
                        "more than " + std::to_string(options_.branchLimit) + " measurement branches");
        }
        branches_ = std::move(next);
    }

    // Measure-then-set: the qubit ends in the requested basis state.
    void set_qubit(int qubit, int value) {
        measure(qubit, false);
        static const CMatrix x = [] {
            CMatrix m(2, 2);
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            return m;
        }();
        const int target[] = {qubit};
        for (auto& b : branches_) {
            const int bit = b.state.probability_one(qubit) > 0.5 ? 1 : 0;
            if (bit != value) apply_gate(b.state, x, target);
        }
    }

    // `indices` maps register positions to memory qubits; null means the
    // prepare addresses memory directly.
    void prepare(const Prepare& p, const std::vector<int>* indices) {
        for (const auto& set : p.sets) {
            const Complex v = evaluate(set.value, {});
            int bit = -1;
            if (std::abs(v.imag()) <= kTolerance) {
                if (std::abs(v.real()) <= kTolerance) bit = 0;
                else if (std::abs(v.real() - 1.0) <= kTolerance) bit = 1;
            }
            if (bit < 0) {
                throw Error(ErrorKind::NonBasisPrepare, "prepare value (" + std::to_string(v.real()) + "," +
                                                            std::to_string(v.imag()) + ") is not 0 or 1");
            }
            for (int idx : set.qubitIndexes) {
                int q = idx;
                if (indices) {
                    if (idx < 1 || idx > static_cast<int>(indices->size())) {
                        throw Error(ErrorKind::IndexOutOfMemory, "prepare index " + std::to_string(idx) +
                                                                     " outside register of size " +
                                                                     std::to_string(indices->size()));
                    }
                    q = (*indices)[idx - 1];
                }
                set_qubit(q, bit);
            }
        }
    }

    void execute(const Execute& ex) {
        const auto indices = registers(ex.reg);
        if (ex.reg.prepare) prepare(*ex.reg.prepare, &indices);
        const Circuit* circuit = nullptr;
        if (const auto* c = std::get_if<Circuit>(&ex.target)) circuit = c;
        else if (const auto* cr = std::get_if<CircuitRef>(&ex.target)) circuit = set_.resolve_circuit(cr->ref).entity;
        else {
            throw Error(ErrorKind::SubProgramUnsupported,
                        "Execute targets program '" + std::get<ProgramRef>(ex.target).ref.id + "'");
        }
        for (auto& b : branches_) apply_circuit(b.state, *circuit, indices, set_);
    }

    Distribution distribution(const std::vector<int>& targets, std::size_t trailing) {
        // Qubits read from the final amplitudes; the rest come from records
        // of earlier measurements.
        std::set<int> live;
        if (options_.measureAll || program_.measures().empty()) {
            live.insert(targets.begin(), targets.end());
        } else {
            for (std::size_t a = trailing; a < program_.actions.size(); ++a) {
                for (int q : registers(std::get<Measure>(program_.actions[a]).reg)) live.insert(q);
            }
        }
        std::map<std::vector<int>, double> totals;
        for (const auto& b : branches_) {
            std::map<std::uint64_t, double> marginal;
            std::uint64_t live_mask = 0;
            for (int q : live) live_mask |= b.state.mask(q);
            const auto& amps = b.state.amplitudes();
            for (std::uint64_t k = 0; k < amps.size(); ++k) {
                const double p = std::norm(amps[k]);
                if (p > 0.0) marginal[k & live_mask] += p;
            }
            for (const auto& [key, p] : marginal) {
                std::vector<int> bits;
                for (int q : targets) {
                    if (live.contains(q)) bits.push_back((key & b.state.mask(q)) ? 1 : 0);
                    else bits.push_back(b.record.at(q));
                }
                totals[bits] += b.weight * p;
            }
        }
        Distribution d;
        d.qubits = targets;
        for (const auto& [bits, p] : totals) {
            if (p > kNegligible) d.outcomes.push_back({bits, p});
        }
        return d;
    }

    const Program& program_;
    const DocumentSet& set_;
    RunOptions options_;
    SampleRng rng_;
    std::vector<Branch> branches_;
};

}  // namespace

RunResult run_program(const Program& program, const DocumentSet& set, const RunOptions& options) {
    if (program.memory.size > kMaxMemoryQubits) {
        throw Error(ErrorKind::MemoryTooLarge, "memory of " + std::to_string(program.memory.size) +
                                                   " qubits exceeds " + std::to_string(kMaxMemoryQubits));
    }
    if (options.validate) {
        for (const auto& f : validate_program(program, set)) {
            if (f.severity == Severity::Error) {
                throw Error(ErrorKind::ValidationFailed, f.code + ": " + f.message);
            }
        }
    }
    return Runner(program, set, options).run();
}

}  // namespace qisxml
