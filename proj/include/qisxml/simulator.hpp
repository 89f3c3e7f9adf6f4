#pragma once

// Dense state-vector execution of programs and circuits.
//
// Memory qubit 1 is the most significant bit of the basis index, and gate
// input 1 is the most significant bit of the gate's local index.

#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "qisxml/document_set.hpp"
#include "qisxml/matrix.hpp"
#include "qisxml/symexpr.hpp"

namespace qisxml {

inline constexpr int kMaxMemoryQubits = 24;
inline constexpr int kMaxUnitaryQubits = 10;
inline constexpr int kMaxCircuitDepth = 16;

class StateVector {
  public:
    /// |0...0> over `qubits` qubits. Throws MemoryTooLarge above 24.
    explicit StateVector(int qubits);
    static StateVector basis(int qubits, std::uint64_t index);

    int qubits() const noexcept { return qubits_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }
    const std::vector<Complex>& amplitudes() const noexcept { return amplitudes_; }
    std::vector<Complex>& amplitudes() noexcept { return amplitudes_; }
    Complex amplitude(std::uint64_t index) const { return amplitudes_.at(index); }

    double norm_squared() const noexcept;
    /// Probability that 1-based `qubit` reads 1.
    double probability_one(int qubit) const;
    /// Projects `qubit` onto `bit` and renormalizes. Returns the probability
    /// of that outcome before projection.
    double collapse(int qubit, int bit);
    /// Bit mask of 1-based `qubit` within a basis index.
    std::uint64_t mask(int qubit) const;

  private:
    int qubits_;
    std::vector<Complex> amplitudes_;
};

/// Applies a 2^k matrix to the ordered 1-based `targets`; targets[i] feeds
/// gate input i+1. Throws DimensionMismatch, DuplicateTarget, IndexOutOfMemory.
void apply_gate(StateVector& state, const CMatrix& matrix, std::span<const int> targets);

/// Runs every step of `circuit` on `state`. qubitMap[j] is the memory qubit
/// that circuit qubit j+1 drives. Throws FixedValueMapUnsupported,
/// NestedCircuitDepthExceeded, NotFound and realization errors.
void apply_circuit(StateVector& state, const Circuit& circuit, std::span<const int> qubitMap, const DocumentSet& set,
                   const Bindings& bindings = {}, bool reverse = false);

/// Product of the step matrices, later steps on the left. `bindings` supply
/// parameter values not bound by the operations themselves.
CMatrix circuit_unitary(const Circuit& circuit, const DocumentSet& set, const Bindings& bindings = {});

enum class RunMode { Sample, Distribution };

struct RunOptions {
    std::uint64_t seed = 0;
    RunMode mode = RunMode::Sample;
    /// Report every memory qubit instead of the measured registers.
    bool measureAll = false;
    /// Refuse programs whose reachable entities have validation ERRORs.
    bool validate = true;
    /// Distribution mode: maximum number of measurement branches kept.
    std::size_t branchLimit = 1 << 12;
};

struct MeasuredBit {
    int qubit;  // 1-based memory index
    int bit;
    bool operator==(const MeasuredBit&) const = default;
};

struct MeasurementRecord {
    /// Ascending memory index.
    std::vector<MeasuredBit> bits;
    std::uint64_t seed = 0;
};

struct Outcome {
    /// Bits in the order of Distribution::qubits.
    std::vector<int> bits;
    double probability = 0.0;
};

struct Distribution {
    std::vector<int> qubits;  // ascending, 1-based
    /// Sorted by basis index, first qubit most significant; zero-probability
    /// outcomes omitted.
    std::vector<Outcome> outcomes;
};

using RunResult = std::variant<MeasurementRecord, Distribution>;

/// Throws ValidationFailed, UnboundParameter, FixedValueMapUnsupported,
/// SubProgramUnsupported, MemoryTooLarge, NonBasisPrepare,
/// BranchLimitExceeded.
RunResult run_program(const Program& program, const DocumentSet& set, const RunOptions& options = {});

/// Deterministic generator for sample mode: mt19937_64 mapped to [0, 1)
/// with 53-bit resolution.
class SampleRng {
  public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}
    double next();

  private:
    std::mt19937_64 engine_;
};

}  // namespace qisxml
