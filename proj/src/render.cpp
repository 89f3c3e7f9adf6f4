#include "qisxml/render.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "qisxml/error.hpp"
#include "qisxml/xml_io.hpp"

namespace qisxml {

namespace {

std::string esc(std::string_view s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string num(double v) { return format_double(v); }

constexpr double kDotRadius = 5;
constexpr double kOplusRadius = 12;
constexpr double kSwapArm = 8;

// What an operation draws: which circuit wires carry controls, which carry
// targets, and how targets look.
struct Drawing {
    std::vector<int> controls;
    std::vector<int> targets;
    TargetGlyph glyph = TargetGlyph::Box;
    std::string label;
    bool circuit = false;
};

class SvgCanvas {
  public:
    SvgCanvas(const Layout& layout, int wires, std::size_t columns, bool labels)
        : l_(layout), wires_(wires), labels_(labels ? layout.labelWidth : 0.0) {
        width_ = 2 * l_.margin + 2 * labels_ + l_.columnWidth * static_cast<double>(std::max<std::size_t>(columns, 1));
        height_ = 2 * l_.margin + l_.gateBox + l_.wireSpacing * (wires - 1);
    }

    double wire_y(int q) const { return l_.margin + l_.gateBox / 2 + l_.wireSpacing * (q - 1); }
    double column_x(std::size_t s) const {
        return l_.margin + labels_ + l_.columnWidth * static_cast<double>(s) + l_.columnWidth / 2;
    }
    double left() const { return l_.margin + labels_; }
    double right() const { return width_ - l_.margin - labels_; }

    void begin(std::ostringstream& out, double extra_height = 0) const {
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width_) << "\" height=\""
            << num(height_ + extra_height) << "\" viewBox=\"0 0 " << num(width_) << " " << num(height_ + extra_height)
            << "\" font-family=\"" << esc(l_.font) << "\" font-size=\"14\">\n";
        out << "<style>.wire,.link,.stub{stroke:black;stroke-width:1}.gate,.circuit{fill:white;stroke:black}"
               ".control,.dot{fill:black}.oplus circle{fill:white;stroke:black}.oplus line,.swap line{stroke:black}"
               "</style>\n";
    }

    void wires(std::ostringstream& out) const {
        for (int q = 1; q <= wires_; ++q) {
            out << "<line class=\"wire\" x1=\"" << num(left()) << "\" y1=\"" << num(wire_y(q)) << "\" x2=\""
                << num(right()) << "\" y2=\"" << num(wire_y(q)) << "\"/>\n";
        }
    }

    void draw(std::ostringstream& out, double x, const Drawing& d, bool dagger,
              const std::vector<std::pair<int, int>>& fixed) const {
        std::vector<int> all = d.controls;
        all.insert(all.end(), d.targets.begin(), d.targets.end());
        if (all.empty()) return;
        const int top = *std::min_element(all.begin(), all.end());
        const int bottom = *std::max_element(all.begin(), all.end());
        const double half = l_.gateBox / 2;
        const bool boxed = d.glyph == TargetGlyph::Box || d.circuit;
        if (!d.controls.empty() || (!boxed && d.targets.size() > 1)) {
            out << "<line class=\"link\" x1=\"" << num(x) << "\" y1=\"" << num(wire_y(top)) << "\" x2=\"" << num(x)
                << "\" y2=\"" << num(wire_y(bottom)) << "\"/>\n";
        }
        for (int q : d.controls) {
            out << "<circle class=\"control\" cx=\"" << num(x) << "\" cy=\"" << num(wire_y(q)) << "\" r=\""
                << num(kDotRadius) << "\"/>\n";
        }
        const std::string dag = dagger ? "<tspan class=\"dagger\" baseline-shift=\"super\">&#8224;</tspan>" : "";
        if (boxed) {
            const int t0 = *std::min_element(d.targets.begin(), d.targets.end());
            const int t1 = *std::max_element(d.targets.begin(), d.targets.end());
            const double y0 = wire_y(t0) - half;
            const double h = wire_y(t1) - wire_y(t0) + l_.gateBox;
            out << "<rect class=\"" << (d.circuit ? "circuit" : "gate") << "\" x=\"" << num(x - half) << "\" y=\""
                << num(y0) << "\" width=\"" << num(l_.gateBox) << "\" height=\"" << num(h) << "\"/>\n";
            out << "<text class=\"gate-label\" x=\"" << num(x) << "\" y=\"" << num(y0 + h / 2 + 5)
                << "\" text-anchor=\"middle\">" << esc(d.label) << dag << "</text>\n";
        } else {
            for (int q : d.targets) {
                const double y = wire_y(q);
                if (d.glyph == TargetGlyph::Oplus) {
                    out << "<g class=\"oplus\"><circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\""
                        << num(kOplusRadius) << "\"/><line x1=\"" << num(x - kOplusRadius) << "\" y1=\"" << num(y)
                        << "\" x2=\"" << num(x + kOplusRadius) << "\" y2=\"" << num(y) << "\"/><line x1=\"" << num(x)
                        << "\" y1=\"" << num(y - kOplusRadius) << "\" x2=\"" << num(x) << "\" y2=\""
                        << num(y + kOplusRadius) << "\"/></g>\n";
                } else if (d.glyph == TargetGlyph::SwapCross) {
                    out << "<g class=\"swap\"><line x1=\"" << num(x - kSwapArm) << "\" y1=\"" << num(y - kSwapArm)
                        << "\" x2=\"" << num(x + kSwapArm) << "\" y2=\"" << num(y + kSwapArm) << "\"/><line x1=\""
                        << num(x - kSwapArm) << "\" y1=\"" << num(y + kSwapArm) << "\" x2=\"" << num(x + kSwapArm)
                        << "\" y2=\"" << num(y - kSwapArm) << "\"/></g>\n";
                } else {
                    out << "<circle class=\"dot\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\""
                        << num(kDotRadius) << "\"/>\n";
                }
            }
            if (dagger) {
                out << "<text class=\"dagger\" x=\"" << num(x + kOplusRadius + 2) << "\" y=\""
                    << num(wire_y(d.targets.front()) - kOplusRadius) << "\">&#8224;</text>\n";
            }
        }
        // Fixed inputs hang below the drawing as labelled stubs.
        double y = wire_y(bottom) + half;
        for (const auto& [input, value] : fixed) {
            out << "<line class=\"stub\" x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x) << "\" y2=\""
                << num(y + 10) << "\"/>\n";
            out << "<text class=\"fixed\" data-input=\"" << input << "\" x=\"" << num(x + 3) << "\" y=\""
                << num(y + 20) << "\">" << value << "</text>\n";
            y += 20;
        }
    }

    void end(std::ostringstream& out) const { out << "</svg>\n"; }

    double width() const { return width_; }
    double height() const { return height_; }

  private:
    const Layout& l_;
    int wires_;
    double labels_;
    double width_;
    double height_;
};

// Splits a gate's inputs into controls and targets per its render hint.
Drawing gate_drawing(const Gate& gate, const std::map<int, int>& wire_of_input) {
    Drawing d;
    const RenderHint* hint = gate.renderHint ? &*gate.renderHint : nullptr;
    std::set<int> controls;
    if (hint) controls.insert(hint->controlInputs.begin(), hint->controlInputs.end());
    for (const auto& [input, wire] : wire_of_input) {
        (controls.contains(input) ? d.controls : d.targets).push_back(wire);
    }
    if (d.targets.empty()) {
        d.targets = d.controls;
        d.controls.clear();
    }
    d.glyph = hint ? hint->targetGlyph : TargetGlyph::Box;
    d.label = hint && hint->label ? *hint->label : gate.short_name();
    return d;
}

}  // namespace

std::string render_circuit_svg(const Circuit& circuit, const DocumentSet& set, const Layout& layout) {
    const bool labels = !circuit.inputLabels.empty() || !circuit.outputLabels.empty();
    SvgCanvas canvas(layout, circuit.size, circuit.steps.size(), labels);
    std::ostringstream out;
    canvas.begin(out);
    if (circuit.name || circuit.identification) {
        out << "<title>" << esc(circuit.name ? *circuit.name : circuit.identification->id) << "</title>\n";
    }
    canvas.wires(out);
    for (const auto& l : circuit.inputLabels) {
        out << "<text class=\"label input\" x=\"" << num(canvas.left() - 4) << "\" y=\"" << num(canvas.wire_y(l.qubit) + 5)
            << "\" text-anchor=\"end\">" << esc(l.name) << "</text>\n";
    }
    for (const auto& l : circuit.outputLabels) {
        out << "<text class=\"label output\" x=\"" << num(canvas.right() + 4) << "\" y=\""
            << num(canvas.wire_y(l.qubit) + 5) << "\">" << esc(l.name) << "</text>\n";
    }
    for (std::size_t s = 0; s < circuit.steps.size(); ++s) {
        out << "<g class=\"column\" data-step=\"" << s + 1 << "\">\n";
        const double x = canvas.column_x(s);
        for (const auto& op : circuit.steps[s].operations) {
            std::map<int, int> wire_of_input;
            std::vector<std::pair<int, int>> fixed;
            for (const auto& m : op.maps) {
                if (m.qubit) wire_of_input[m.input] = *m.qubit;
                else fixed.emplace_back(m.input, m.fixedValue.value_or(0));
            }
            Drawing d;
            if (const auto* g = std::get_if<Gate>(&op.target)) {
                d = gate_drawing(*g, wire_of_input);
            } else if (const auto* gr = std::get_if<GateRef>(&op.target)) {
                try {
                    d = gate_drawing(*set.resolve_gate(gr->ref).entity, wire_of_input);
                } catch (const Error& e) {
                    throw Error(ErrorKind::DanglingReference, "GateRef '" + gr->ref.id + "': " + e.what());
                }
            } else {
                const auto& ref = std::get<CircuitRef>(op.target).ref;
                try {
                    (void)set.resolve_circuit(ref);
                } catch (const Error& e) {
                    throw Error(ErrorKind::DanglingReference, "CircuitRef '" + ref.id + "': " + e.what());
                }
                for (const auto& [input, wire] : wire_of_input) d.targets.push_back(wire);
                d.circuit = true;
                d.label = ref.id;
            }
            canvas.draw(out, x, d, op.reverse, fixed);
        }
        out << "</g>\n";
    }
    canvas.end(out);
    return out.str();
}

std::string render_gate_svg(const Gate& gate, const Layout& layout) {
    SvgCanvas canvas(layout, gate.size(), 1, false);
    std::ostringstream out;
    canvas.begin(out, 24);
    out << "<title>" << esc(gate.name) << "</title>\n";
    canvas.wires(out);
    std::map<int, int> wire_of_input;
    for (int i = 1; i <= gate.size(); ++i) wire_of_input[i] = i;
    out << "<g class=\"column\" data-step=\"1\">\n";
    canvas.draw(out, canvas.column_x(0), gate_drawing(gate, wire_of_input), false, {});
    out << "</g>\n";
    out << "<text class=\"caption\" x=\"" << num(canvas.width() / 2) << "\" y=\"" << num(canvas.height() + 12)
        << "\" text-anchor=\"middle\">" << esc(gate.name) << "</text>\n";
    canvas.end(out);
    return out.str();
}

std::string display_value(const ComplexValue& value) {
    const SymbolicEntry* pick = nullptr;
    for (const char* syntax : {"html", "odf"}) {
        for (const auto& s : value.symbolic) {
            if (!pick && s.syntax == syntax) pick = &s;
        }
    }
    if (!pick && !value.symbolic.empty()) pick = &value.symbolic.front();
    if (pick) return pick->expression;
    const double r = value.re.value_or(0.0);
    const double i = value.im.value_or(0.0);
    auto imag = [](double v) {
        if (v == 1.0) return std::string("i");
        if (v == -1.0) return std::string("-i");
        return format_double(v) + "i";
    };
    if (i == 0.0) return format_double(r);
    if (r == 0.0) return imag(i);
    return format_double(r) + (i < 0 ? "-" : "+") + imag(std::abs(i));
}

namespace {

const char* kHtmlStyle =
    "body{font-family:sans-serif}table.matrix{border-collapse:collapse;margin:0.5em 0}"
    "table.matrix td{border:1px solid #999;padding:2px 8px;text-align:center}"
    ".error{color:#b00000;font-weight:bold}.warning{color:#a06000}.context{color:#000}";

void html_begin(std::ostringstream& out, std::string_view title) {
    out << "<!DOCTYPE html>\n<html xmlns=\"http://www.w3.org/1999/xhtml\">\n<head>\n<meta charset=\"utf-8\"/>\n<title>"
        << esc(title) << "</title>\n<style>" << kHtmlStyle << "</style>\n</head>\n<body>\n";
}

void html_end(std::ostringstream& out) { out << "</body>\n</html>\n"; }

void gate_section(std::ostringstream& out, const Gate& g) {
    const auto& t = g.transformation;
    out << "<section class=\"gate\" id=\"gate-" << esc(g.identification.id) << "\">\n";
    out << "<h2>" << esc(g.name) << "</h2>\n";
    if (g.nickname) out << "<p class=\"nickname\">" << esc(*g.nickname) << "</p>\n";
    if (g.description) out << "<p class=\"description\">" << esc(*g.description) << "</p>\n";
    std::string title = g.identification.id;
    if (!g.parameters.empty()) {
        out << "<p class=\"parameters\">Parameters:";
        title += "(";
        for (std::size_t k = 0; k < g.parameters.size(); ++k) {
            out << (k ? ", " : " ") << esc(g.parameters[k].name);
            title += (k ? "," : "") + g.parameters[k].name;
        }
        title += ")";
        out << "</p>\n";
    }
    title += " =";
    if (t.multiplier) title += " " + display_value(*t.multiplier) + " &#215;";
    out << "<p class=\"matrix-title\">" << (t.multiplier ? esc(title.substr(0, title.rfind(" &#215;"))) + " &#215;"
                                                          : esc(title))
        << "</p>\n";
    const std::size_t dim = t.dimension();
    std::map<std::pair<int, int>, const ComplexValue*> cells;
    for (const auto& c : t.cells) cells[{c.row, c.col}] = &c.value;
    out << "<table class=\"matrix\">\n";
    for (std::size_t r = 1; r <= dim; ++r) {
        out << "<tr>";
        for (std::size_t c = 1; c <= dim; ++c) {
            const auto it = cells.find({static_cast<int>(r), static_cast<int>(c)});
            out << "<td>" << (it == cells.end() ? std::string("0") : esc(display_value(*it->second))) << "</td>";
        }
        out << "</tr>\n";
    }
    out << "</table>\n</section>\n";
}

}  // namespace

std::string report_html(const DocumentSet& set, const ReportOptions& options) {
    std::ostringstream out;
    html_begin(out, "QIS-XML report");
    std::vector<const Gate*> gates;
    for (const auto& e : set.gates()) {
        if (!e.document->builtin || options.includeBuiltins) gates.push_back(e.entity);
    }
    std::vector<const Circuit*> circuits;
    for (const auto& e : set.circuits()) {
        if (!e.document->builtin || options.includeBuiltins) circuits.push_back(e.entity);
    }
    if (!gates.empty()) out << "<h1>Gates</h1>\n";
    for (const Gate* g : gates) gate_section(out, *g);
    if (!circuits.empty()) out << "<h1>Circuits</h1>\n";
    for (const Circuit* c : circuits) {
        out << "<section class=\"circuit\">\n<h2>"
            << esc(c->name.value_or(c->identification ? c->identification->id : "(unidentified circuit)")) << "</h2>\n";
        if (c->description) out << "<p class=\"description\">" << esc(*c->description) << "</p>\n";
        out << "<p>Size " << c->size << ", " << c->steps.size() << " step(s)</p>\n<ol class=\"steps\">\n";
        for (const auto& step : c->steps) {
            out << "<li>";
            for (std::size_t k = 0; k < step.operations.size(); ++k) {
                const auto& op = step.operations[k];
                std::string name;
                if (const auto* g = std::get_if<Gate>(&op.target)) name = g->short_name();
                else if (const auto* gr = std::get_if<GateRef>(&op.target)) name = gr->ref.id;
                else name = "circuit " + std::get<CircuitRef>(op.target).ref.id;
                out << (k ? "; " : "") << esc(name) << (op.reverse ? "&#8224;" : "") << " " << format_maps(op);
            }
            out << "</li>\n";
        }
        out << "</ol>\n</section>\n";
    }
    html_end(out);
    return out.str();
}

std::string report_validation_html(const DocumentSet& set, const std::vector<Finding>& findings) {
    const std::size_t errors = count(findings, Severity::Error);
    const std::size_t warnings = count(findings, Severity::Warning);
    std::ostringstream out;
    html_begin(out, "QIS-XML validation");
    out << "<p class=\"summary\">" << errors << (errors == 1 ? " error, " : " errors, ") << warnings
        << (warnings == 1 ? " warning" : " warnings") << "</p>\n";
    std::istringstream lines(report_text(set, findings));
    std::string line;
    while (std::getline(lines, line)) {
        const char* cls = line.starts_with("ERROR:") ? "error" : line.starts_with("Warning:") ? "warning" : "context";
        out << "<div class=\"" << cls << "\">" << esc(line) << "</div>\n";
    }
    html_end(out);
    return out.str();
}

}  // namespace qisxml
