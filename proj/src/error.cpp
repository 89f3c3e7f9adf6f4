#include "qisxml/error.hpp"

namespace qisxml {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NonSquare: return "NonSquare";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::UnboundParameter: return "UnboundParameter";
        case ErrorKind::CellOutOfRange: return "CellOutOfRange";
        case ErrorKind::ExpressionError: return "ExpressionError";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::SizeMismatch: return "SizeMismatch";
        case ErrorKind::IndexOutOfMemory: return "IndexOutOfMemory";
        case ErrorKind::DanglingReference: return "DanglingReference";
        case ErrorKind::ReferenceCycle: return "ReferenceCycle";
        case ErrorKind::XmlSyntax: return "XmlSyntax";
        case ErrorKind::UnknownNamespace: return "UnknownNamespace";
        case ErrorKind::UnknownElement: return "UnknownElement";
        case ErrorKind::BadAttribute: return "BadAttribute";
        case ErrorKind::InvalidContent: return "InvalidContent";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::NotFound: return "NotFound";
        case ErrorKind::Ambiguous: return "Ambiguous";
        case ErrorKind::BadWidth: return "BadWidth";
        case ErrorKind::ValidationFailed: return "ValidationFailed";
        case ErrorKind::FixedValueMapUnsupported: return "FixedValueMapUnsupported";
        case ErrorKind::SubProgramUnsupported: return "SubProgramUnsupported";
        case ErrorKind::MemoryTooLarge: return "MemoryTooLarge";
        case ErrorKind::NonBasisPrepare: return "NonBasisPrepare";
        case ErrorKind::BranchLimitExceeded: return "BranchLimitExceeded";
        case ErrorKind::DuplicateTarget: return "DuplicateTarget";
        case ErrorKind::NestedCircuitDepthExceeded: return "NestedCircuitDepthExceeded";
        case ErrorKind::UnsupportedGate: return "UnsupportedGate";
    }
    return "Unknown";
}

}  // namespace qisxml
