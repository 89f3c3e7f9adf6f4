#pragma once

// In-memory representation of QIS-XML entities. Every type is a plain value:
// copyable, comparable, immutable once built. All indices are 1-based, as in
// the XML.

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qisxml {

struct SymbolicEntry {
    std::string syntax;
    std::string expression;

    bool operator==(const SymbolicEntry&) const = default;
};

/// A complex number with an optional numeric part (@r / @i) and any number of
/// symbolic renderings. A missing @r or @i reads as zero when the other is
/// present.
struct ComplexValue {
    std::optional<double> re;
    std::optional<double> im;
    std::vector<SymbolicEntry> symbolic;

    bool has_numeric() const noexcept { return re.has_value() || im.has_value(); }
    std::complex<double> numeric() const noexcept { return {re.value_or(0.0), im.value_or(0.0)}; }

    static ComplexValue real(double r) { return ComplexValue{r, std::nullopt, {}}; }
    static ComplexValue imag(double i) { return ComplexValue{std::nullopt, i, {}}; }

    bool operator==(const ComplexValue&) const = default;
};

struct MatrixCell {
    int row = 1;
    int col = 1;
    ComplexValue value;

    bool operator==(const MatrixCell&) const = default;
};

/// Square transformation over 2^size basis states. Unlisted cells are zero.
struct UnitaryTransformation {
    int size = 1;
    std::optional<ComplexValue> multiplier;
    std::vector<MatrixCell> cells;

    std::size_t dimension() const noexcept { return std::size_t{1} << size; }

    bool operator==(const UnitaryTransformation&) const = default;
};

struct QubitState {
    ComplexValue zero;
    ComplexValue one;
    std::optional<int> index;

    bool operator==(const QubitState&) const = default;
};

struct Identification {
    std::string id;
    std::optional<std::string> agency;
    std::optional<std::string> version;

    bool operator==(const Identification&) const = default;
};

struct Reference {
    std::string id;
    std::optional<std::string> libraryId;
    std::optional<std::string> agencyId;
    std::optional<std::string> version;
    std::optional<std::string> uri;

    bool operator==(const Reference&) const = default;
};

struct Parameter {
    std::string name;
    std::optional<std::string> description;

    bool operator==(const Parameter&) const = default;
};

enum class TargetGlyph { Box, Oplus, SwapCross, Dot };

/// Drawing hint for controlled gates: which inputs are control dots and how
/// the remaining inputs are drawn.
struct RenderHint {
    std::vector<int> controlInputs;
    TargetGlyph targetGlyph = TargetGlyph::Box;
    std::optional<std::string> label;

    bool operator==(const RenderHint&) const = default;
};

struct Gate {
    Identification identification;
    std::string name;
    std::optional<std::string> nickname;
    std::optional<std::string> description;
    std::vector<Parameter> parameters;
    UnitaryTransformation transformation;
    std::optional<RenderHint> renderHint;

    int size() const noexcept { return transformation.size; }
    /// Nickname if present, otherwise the identifier.
    const std::string& short_name() const noexcept { return nickname ? *nickname : identification.id; }

    bool operator==(const Gate&) const = default;
};

/// Binds a circuit qubit (or a fixed bit) to a gate input.
struct Map {
    std::optional<int> qubit;
    int input = 1;
    std::optional<int> fixedValue;

    bool operator==(const Map&) const = default;
};

struct ParameterBinding {
    std::string name;
    double value = 0.0;

    bool operator==(const ParameterBinding&) const = default;
};

struct GateRef {
    Reference ref;
    bool operator==(const GateRef&) const = default;
};

struct CircuitRef {
    Reference ref;
    bool operator==(const CircuitRef&) const = default;
};

struct ProgramRef {
    Reference ref;
    bool operator==(const ProgramRef&) const = default;
};

using OperationTarget = std::variant<Gate, GateRef, CircuitRef>;

struct Operation {
    std::vector<Map> maps;
    OperationTarget target;
    bool reverse = false;
    std::vector<ParameterBinding> parameterBindings;

    bool operator==(const Operation&) const = default;
};

struct Step {
    std::vector<Operation> operations;
    /// Comment emitted before the step (e.g. "sum bit 0"); empty when none.
    std::string note;

    bool operator==(const Step&) const = default;
};

struct QubitLabel {
    int qubit = 1;
    std::string name;

    bool operator==(const QubitLabel&) const = default;
};

struct Circuit {
    std::optional<Identification> identification;
    int size = 1;
    std::optional<std::string> name;
    std::optional<std::string> description;
    std::vector<QubitLabel> inputLabels;
    std::vector<QubitLabel> outputLabels;
    std::vector<Step> steps;

    std::size_t operation_count() const noexcept;

    bool operator==(const Circuit&) const = default;
};

struct QubitIndex {
    int value = 1;
    bool operator==(const QubitIndex&) const = default;
};

struct QubitRange {
    int start = 1;
    int end = 1;
    bool operator==(const QubitRange&) const = default;
};

/// One addressing clause of a register, kept in document order.
using RegisterSelector = std::variant<QubitIndex, QubitRange, Reference>;

struct QubitSet {
    std::vector<int> qubitIndexes;
    ComplexValue value;

    bool operator==(const QubitSet&) const = default;
};

struct Prepare {
    std::vector<QubitSet> sets;
    bool operator==(const Prepare&) const = default;
};

struct Register {
    std::optional<Identification> identification;
    int size = 1;
    std::vector<RegisterSelector> selectors;
    std::optional<Prepare> prepare;

    bool operator==(const Register&) const = default;
};

struct Memory {
    int size = 1;
    std::optional<Identification> identification;
    std::optional<std::string> name;
    std::optional<Prepare> prepare;
    std::vector<QubitState> qubits;

    bool operator==(const Memory&) const = default;
};

using ExecuteTarget = std::variant<Circuit, CircuitRef, ProgramRef>;

struct Execute {
    Register reg;
    ExecuteTarget target;

    bool operator==(const Execute&) const = default;
};

struct Measure {
    Register reg;
    bool operator==(const Measure&) const = default;
};

/// Executes and measures interleave; their relative order is significant.
using ProgramAction = std::variant<Execute, Measure>;

struct Program {
    Identification identification;
    std::optional<std::string> name;
    Memory memory;
    std::vector<Register> globalRegisters;
    std::vector<ProgramAction> actions;

    std::vector<const Execute*> executes() const;
    std::vector<const Measure*> measures() const;

    bool operator==(const Program&) const = default;
};

struct GateLibrary {
    std::optional<Identification> identification;
    std::vector<Gate> gates;
    bool operator==(const GateLibrary&) const = default;
};

struct CircuitLibrary {
    std::optional<Identification> identification;
    std::vector<Circuit> circuits;
    bool operator==(const CircuitLibrary&) const = default;
};

struct ProgramLibrary {
    std::optional<Identification> identification;
    std::vector<Program> programs;
    bool operator==(const ProgramLibrary&) const = default;
};

struct Instance {
    std::optional<Identification> identification;
    std::vector<GateLibrary> gateLibraries;
    std::vector<CircuitLibrary> circuitLibraries;
    std::vector<ProgramLibrary> programLibraries;
    bool operator==(const Instance&) const = default;
};

using Document = std::variant<Instance, GateLibrary, CircuitLibrary, ProgramLibrary>;

}  // namespace qisxml
