#pragma once

// Reading and writing QIS-XML documents.
//
// Input accepts both the prototype form (unqualified <QIS>, <Gate>, <Circuit>
// roots with attribute-style <Identification id="..."/>) and the modular form
// (namespaced GateLibrary / CircuitLibrary / ProgramLibrary / Instance roots
// with element-style <r:Identification><r:ID>...</r:ID>). Output is always
// the modular form.

#include <string>
#include <string_view>
#include <variant>

#include "qisxml/model.hpp"

namespace qisxml {

namespace ns {
inline constexpr std::string_view kInstance = "qis:instance:1_0";
inline constexpr std::string_view kGate = "qis:gate:1_0";
inline constexpr std::string_view kCircuit = "qis:circuit:1_0";
inline constexpr std::string_view kProgram = "qis:program:1_0";
inline constexpr std::string_view kReusable = "qis:reusable:1_0";
inline constexpr std::string_view kXsi = "http://www.w3.org/2001/XMLSchema-instance";
}  // namespace ns

/// Throws XmlSyntax, UnknownNamespace, UnknownElement, BadAttribute,
/// InvalidContent. `source` prefixes error locations.
Document parse_document(std::string_view bytes, const std::string& source = {});

/// Element snippets that are not documents on their own: a bare
/// <Transformation> or <p:Register>. Any document root is accepted as well.
using Fragment = std::variant<Document, UnitaryTransformation, Register>;
Fragment parse_fragment(std::string_view bytes, const std::string& source = {});

/// UTF-8 text with XML declaration, tab indentation and i/g/c/p/r prefixes.
std::string serialize(const Document& document);
std::string serialize(const GateLibrary& library);
std::string serialize(const CircuitLibrary& library);
std::string serialize(const ProgramLibrary& library);
std::string serialize(const Instance& instance);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

}  // namespace qisxml
