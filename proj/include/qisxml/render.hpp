#pragma once

// SVG diagrams of circuits and gates, and HTML reports.

#include <string>
#include <vector>

#include "qisxml/document_set.hpp"
#include "qisxml/validation.hpp"

namespace qisxml {

struct Layout {
    double wireSpacing = 40;
    double columnWidth = 60;
    double gateBox = 32;
    double margin = 20;
    /// Room reserved for input/output wire labels when a circuit has any.
    double labelWidth = 80;
    std::string font = "sans-serif";
};

/// One <line class="wire"> per qubit and one <g class="column"> per step.
/// Referenced circuits are drawn as a single box. Throws DanglingReference.
std::string render_circuit_svg(const Circuit& circuit, const DocumentSet& set, const Layout& layout = {});

std::string render_gate_svg(const Gate& gate, const Layout& layout = {});

struct ReportOptions {
    bool includeBuiltins = false;
};

/// Gate catalogue with matrices, followed by circuit summaries.
std::string report_html(const DocumentSet& set, const ReportOptions& options = {});

/// HTML form of report_text with a "N errors, M warnings" summary.
std::string report_validation_html(const DocumentSet& set, const std::vector<Finding>& findings);

/// Display text of a matrix entry: the html (else odf, else first) symbolic
/// form when present, otherwise the number.
std::string display_value(const ComplexValue& value);

}  // namespace qisxml
