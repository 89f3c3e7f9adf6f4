#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qisxml {

enum class ErrorKind {
    // matrix / realization
    NonSquare,
    DimensionMismatch,
    UnboundParameter,
    CellOutOfRange,
    ExpressionError,
    // symbolic expressions
    SyntaxError,
    DomainError,
    // registers
    SizeMismatch,
    IndexOutOfMemory,
    DanglingReference,
    ReferenceCycle,
    // xml-io
    XmlSyntax,
    UnknownNamespace,
    UnknownElement,
    BadAttribute,
    InvalidContent,
    IoError,
    DuplicateId,
    NotFound,
    Ambiguous,
    // generators / backends
    BadWidth,
    ValidationFailed,
    FixedValueMapUnsupported,
    SubProgramUnsupported,
    MemoryTooLarge,
    NonBasisPrepare,
    BranchLimitExceeded,
    DuplicateTarget,
    NestedCircuitDepthExceeded,
    UnsupportedGate,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// The message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

  private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace qisxml
