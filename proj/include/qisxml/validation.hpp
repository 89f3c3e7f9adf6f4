#pragma once

// Semantic checks over a DocumentSet. Problems are reported as findings, not
// thrown.

#include <optional>
#include <string>
#include <vector>

#include "qisxml/document_set.hpp"

namespace qisxml {

namespace codes {
inline constexpr const char* kQubitNormalization = "QUBIT_NORMALIZATION";
inline constexpr const char* kCellOutOfRange = "CELL_OUT_OF_RANGE";
inline constexpr const char* kMapQubitOutOfRange = "MAP_QUBIT_OUT_OF_RANGE";
inline constexpr const char* kMapInputOutOfRange = "MAP_INPUT_OUT_OF_RANGE";
inline constexpr const char* kDuplicateMapping = "DUPLICATE_MAPPING";
inline constexpr const char* kUnmappedQubits = "UNMAPPED_QUBITS";
inline constexpr const char* kDanglingReference = "DANGLING_REFERENCE";
inline constexpr const char* kRegisterSizeMismatch = "REGISTER_SIZE_MISMATCH";
inline constexpr const char* kIndexOutOfBounds = "INDEX_OUT_OF_BOUNDS";
inline constexpr const char* kNotUnitary = "NOT_UNITARY";
inline constexpr const char* kBadCellExpression = "BAD_CELL_EXPRESSION";
}  // namespace codes

enum class Severity { Error, Warning };

struct Location {
    std::string document;
    std::string library;
    /// "gate", "circuit" or "program".
    std::string entityKind;
    std::string entity;
    /// Position of the entity among entities of its kind in the document.
    std::size_t entityIndex = 0;
    /// Program part such as "Memory", "Register 1", "Execute 2".
    std::string part;
    std::optional<int> step;       // 1-based
    std::optional<int> operation;  // 1-based
    std::optional<int> map;        // 0-based, as printed in reports

    bool operator==(const Location&) const = default;
};

struct Finding {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    Location location;

    bool operator==(const Finding&) const = default;
};

struct ValidateOptions {
    bool strictUnitary = false;
    /// Builtin documents are skipped unless set.
    bool includeBuiltins = false;
};

/// Findings ordered by document, entity, step, operation.
std::vector<Finding> validate(const DocumentSet& set, const ValidateOptions& options = {});

/// Findings for one program and every gate and circuit it reaches.
std::vector<Finding> validate_program(const Program& program, const DocumentSet& set,
                                      const ValidateOptions& options = {});

std::size_t count(const std::vector<Finding>& findings, Severity severity);

/// Plain-text report: each entity with findings is listed with its structure
/// (steps and operations for circuits) and the findings in place.
std::string report_text(const DocumentSet& set, const std::vector<Finding>& findings);

/// "[1=1,4=3]" style map list used by reports.
std::string format_maps(const Operation& op);

}  // namespace qisxml
