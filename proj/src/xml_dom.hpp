#pragma once

// Minimal namespace-aware DOM on top of expat, private to the xml-io module.

#include <string>
#include <string_view>
#include <vector>

namespace qisxml::detail {

struct XmlAttribute {
    std::string ns;
    std::string local;
    std::string value;
};

struct XmlNode {
    enum class Kind { Element, Text, Comment };

    Kind kind = Kind::Element;
    std::string ns;
    std::string local;
    std::vector<XmlAttribute> attributes;
    std::vector<XmlNode> children;
    std::string text;  // Text and Comment nodes
    int line = 0;
    int column = 0;

    bool is_element() const noexcept { return kind == Kind::Element; }
};

/// Parses a complete document and returns its root element. Throws
/// Error{XmlSyntax} carrying line and column.
XmlNode parse_xml(std::string_view bytes, const std::string& source);

}  // namespace qisxml::detail
