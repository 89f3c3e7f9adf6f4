#include <charconv>
#include <map>
#include <set>

#include "qisxml/error.hpp"
#include "qisxml/xml_io.hpp"
#include "xml_dom.hpp"

namespace qisxml {

namespace {

using detail::XmlNode;

bool is_blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// A child element together with its location path.
struct Child {
    const XmlNode* node;
    std::string path;
};

class Reader {
  public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    Document read_root(const XmlNode& root) {
        check_namespace(root, "/" + root.local);
        const std::string path = "/" + root.local;
        const std::string& name = root.local;
        if (name == "QIS") return read_qis(root, path);
        if (name == "Instance") return read_instance(root, path);
        if (name == "GateLibrary") return read_gate_library(root, path);
        if (name == "CircuitLibrary") return read_circuit_library(root, path);
        if (name == "ProgramLibrary") return read_program_library(root, path);
        if (name == "Gate") {
            GateLibrary lib;
            lib.gates.push_back(read_gate(root, path));
            return lib;
        }
        if (name == "Circuit") {
            CircuitLibrary lib;
            lib.circuits.push_back(read_circuit(root, path));
            return lib;
        }
        if (name == "Program") {
            ProgramLibrary lib;
            lib.programs.push_back(read_program(root, path));
            return lib;
        }
        fail(ErrorKind::UnknownElement, root, "unknown root element <" + name + ">", path);
    }

    Fragment read_fragment(const XmlNode& root) {
        const std::string path = "/" + root.local;
        check_namespace(root, path);
        if (root.local == "Transformation") return read_transformation(root, path);
        if (root.local == "Register") return read_register(root, path);
        return read_root(root);
    }

  private:
    [[noreturn]] void fail(ErrorKind kind, const XmlNode& node, const std::string& message,
                           const std::string& path) const {
        std::string where = source_.empty() ? std::string() : source_ + ":";
        where += std::to_string(node.line) + ":" + std::to_string(node.column);
        throw Error(kind, where + ": " + message + " at " + path);
    }

    void check_namespace(const XmlNode& node, const std::string& path) const {
        static const std::set<std::string_view> known{"", ns::kInstance, ns::kGate, ns::kCircuit, ns::kProgram,
                                                      ns::kReusable};
        if (!known.contains(node.ns)) {
            fail(ErrorKind::UnknownNamespace, node, "unknown namespace '" + node.ns + "'", path);
        }
    }

    std::vector<Child> children(const XmlNode& node, const std::string& path) const {
        std::vector<Child> out;
        std::map<std::string, int> counts;
        for (const auto& c : node.children) {
            if (c.kind == XmlNode::Kind::Text) {
                if (!is_blank(c.text)) {
                    fail(ErrorKind::InvalidContent, node, "unexpected text '" + trim(c.text) + "'", path);
                }
                continue;
            }
            if (c.kind != XmlNode::Kind::Element) continue;
            const int k = ++counts[c.local];
            std::string child_path = path + "/" + c.local + "[" + std::to_string(k) + "]";
            check_namespace(c, child_path);
            out.push_back({&c, std::move(child_path)});
        }
        return out;
    }

    [[noreturn]] void unknown(const Child& c) const {
        fail(ErrorKind::UnknownElement, *c.node, "unexpected element <" + c.node->local + ">", c.path);
    }

    void check_attributes(const XmlNode& node, std::initializer_list<std::string_view> allowed,
                          const std::string& path) const {
        for (const auto& a : node.attributes) {
            if (a.ns == ns::kXsi) continue;
            bool ok = a.ns.empty();
            if (ok) {
                ok = false;
                for (auto name : allowed) {
                    if (name == a.local) ok = true;
                }
            }
            if (!ok) {
                fail(ErrorKind::BadAttribute, node, "attribute '" + a.local + "'='" + a.value + "' not allowed", path);
            }
        }
    }

    static const std::string* attribute(const XmlNode& node, std::string_view name) {
        for (const auto& a : node.attributes) {
            if (a.ns.empty() && a.local == name) return &a.value;
        }
        return nullptr;
    }

    int parse_int(const XmlNode& node, std::string_view name, const std::string& value, const std::string& path) const {
        const std::string t = trim(value);
        int v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
            fail(ErrorKind::BadAttribute, node, "'" + std::string(name) + "'='" + value + "' is not an integer", path);
        }
        return v;
    }

    std::optional<int> opt_int(const XmlNode& node, std::string_view name, const std::string& path) const {
        const auto* v = attribute(node, name);
        if (!v) return std::nullopt;
        return parse_int(node, name, *v, path);
    }

    int req_int(const XmlNode& node, std::string_view name, const std::string& path) const {
        const auto v = opt_int(node, name, path);
        if (!v) fail(ErrorKind::BadAttribute, node, "missing attribute '" + std::string(name) + "'", path);
        return *v;
    }

    std::optional<double> opt_double(const XmlNode& node, std::string_view name, const std::string& path) const {
        const auto* v = attribute(node, name);
        if (!v) return std::nullopt;
        std::string t = trim(*v);
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        double d = 0.0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), d);
        if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
            fail(ErrorKind::BadAttribute, node, "'" + std::string(name) + "'='" + *v + "' is not a number", path);
        }
        return d;
    }

    bool opt_bool(const XmlNode& node, std::string_view name, const std::string& path) const {
        const auto* v = attribute(node, name);
        if (!v) return false;
        const std::string t = trim(*v);
        if (t == "true" || t == "1") return true;
        if (t == "false" || t == "0") return false;
        fail(ErrorKind::BadAttribute, node, "'" + std::string(name) + "'='" + *v + "' is not a boolean", path);
    }

    std::string text_of(const XmlNode& node, const std::string& path) const {
        std::string out;
        for (const auto& c : node.children) {
            if (c.kind == XmlNode::Kind::Text) {
                out += c.text;
            } else if (c.kind == XmlNode::Kind::Element) {
                fail(ErrorKind::UnknownElement, c, "unexpected element <" + c.local + "> in text content", path);
            }
        }
        check_attributes(node, {}, path);
        return trim(out);
    }

    int int_text(const XmlNode& node, const std::string& path) const {
        return parse_int(node, node.local, text_of(node, path), path);
    }

    // --- reusable ---------------------------------------------------------

    Identification read_identification(const XmlNode& node, const std::string& path) const {
        Identification id;
        if (const auto* attr_id = attribute(node, "id")) {
            check_attributes(node, {"id", "agency", "version"}, path);
            id.id = trim(*attr_id);
            if (const auto* a = attribute(node, "agency")) id.agency = *a;
            if (const auto* v = attribute(node, "version")) id.version = *v;
            if (!children(node, path).empty()) {
                fail(ErrorKind::InvalidContent, node, "attribute-style Identification cannot have children", path);
            }
        } else {
            check_attributes(node, {}, path);
            for (const auto& c : children(node, path)) {
                const auto& n = c.node->local;
                if (n == "ID") id.id = text_of(*c.node, c.path);
                else if (n == "AgencyID") id.agency = text_of(*c.node, c.path);
                else if (n == "Version") id.version = text_of(*c.node, c.path);
                else unknown(c);
            }
        }
        if (id.id.empty()) {
            fail(ErrorKind::InvalidContent, node, "Identification requires a non-empty ID", path);
        }
        return id;
    }

    Reference read_reference(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {"id", "URI", "libraryId", "agencyId", "version"}, path);
        Reference ref;
        if (const auto* v = attribute(node, "id")) ref.id = trim(*v);
        if (const auto* v = attribute(node, "URI")) ref.uri = *v;
        if (const auto* v = attribute(node, "libraryId")) ref.libraryId = *v;
        if (const auto* v = attribute(node, "agencyId")) ref.agencyId = *v;
        if (const auto* v = attribute(node, "version")) ref.version = *v;
        for (const auto& c : children(node, path)) {
            const auto& n = c.node->local;
            if (n == "ID") ref.id = text_of(*c.node, c.path);
            else if (n == "LibraryID") ref.libraryId = text_of(*c.node, c.path);
            else if (n == "AgencyID") ref.agencyId = text_of(*c.node, c.path);
            else if (n == "Version") ref.version = text_of(*c.node, c.path);
            else unknown(c);
        }
        if (ref.id.empty()) {
            fail(ErrorKind::InvalidContent, node, "reference requires a non-empty ID", path);
        }
        return ref;
    }

    ComplexValue read_complex(const XmlNode& node, const std::string& path,
                              std::initializer_list<std::string_view> extra_attrs = {}) const {
        std::vector<std::string_view> allowed{"r", "i"};
        allowed.insert(allowed.end(), extra_attrs.begin(), extra_attrs.end());
        for (const auto& a : node.attributes) {
            if (a.ns == ns::kXsi) continue;
            if (!a.ns.empty() || std::find(allowed.begin(), allowed.end(), a.local) == allowed.end()) {
                fail(ErrorKind::BadAttribute, node, "attribute '" + a.local + "'='" + a.value + "' not allowed", path);
            }
        }
        ComplexValue v;
        v.re = opt_double(node, "r", path);
        v.im = opt_double(node, "i", path);
        for (const auto& c : children(node, path)) {
            if (c.node->local != "Symbolic") unknown(c);
            const auto* syntax = attribute(*c.node, "syntax");
            SymbolicEntry entry;
            entry.syntax = syntax ? trim(*syntax) : std::string();
            if (entry.syntax.empty()) {
                fail(ErrorKind::BadAttribute, *c.node, "Symbolic requires a non-empty 'syntax'", c.path);
            }
            std::string text;
            for (const auto& t : c.node->children) {
                if (t.kind == XmlNode::Kind::Text) text += t.text;
                else if (t.kind == XmlNode::Kind::Element) unknown({&t, c.path + "/" + t.local});
            }
            for (const auto& a : c.node->attributes) {
                if (a.ns.empty() && a.local != "syntax") {
                    fail(ErrorKind::BadAttribute, *c.node, "attribute '" + a.local + "' not allowed", c.path);
                }
            }
            entry.expression = trim(text);
            v.symbolic.push_back(std::move(entry));
        }
        return v;
    }

    QubitLabel read_label(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {"qubit", "name"}, path);
        QubitLabel label;
        label.qubit = req_int(node, "qubit", path);
        if (const auto* n = attribute(node, "name")) label.name = *n;
        for (const auto& c : children(node, path)) {
            if (c.node->local != "Name") unknown(c);
            label.name = text_of(*c.node, c.path);
        }
        return label;
    }

    // --- gates ------------------------------------------------------------

    UnitaryTransformation read_transformation(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {"size"}, path);
        UnitaryTransformation t;
        t.size = req_int(node, "size", path);
        if (t.size < 1 || t.size > 16) {
            fail(ErrorKind::BadAttribute, node, "'size'='" + std::to_string(t.size) + "' out of range", path);
        }
        for (const auto& c : children(node, path)) {
            const auto& n = c.node->local;
            if (n == "Multiplier") {
                if (t.multiplier) fail(ErrorKind::InvalidContent, *c.node, "duplicate Multiplier", c.path);
                t.multiplier = read_complex(*c.node, c.path);
                check_value_present(*c.node, *t.multiplier, c.path);
            } else if (n == "Cell") {
                MatrixCell cell;
                cell.value = read_complex(*c.node, c.path, {"row", "col"});
                cell.row = req_int(*c.node, "row", c.path);
                cell.col = req_int(*c.node, "col", c.path);
                t.cells.push_back(std::move(cell));
            } else {
                unknown(c);
            }
        }
        return t;
    }

    void check_value_present(const XmlNode& node, const ComplexValue& v, const std::string& path) const {
        if (!v.has_numeric() && v.symbolic.empty()) {
            fail(ErrorKind::InvalidContent, node, "complex value needs @r, @i or a Symbolic entry", path);
        }
    }

    RenderHint read_render(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {"glyph", "label"}, path);
        RenderHint hint;
        if (const auto* g = attribute(node, "glyph")) {
            if (*g == "box") hint.targetGlyph = TargetGlyph::Box;
            else if (*g == "oplus") hint.targetGlyph = TargetGlyph::Oplus;
            else if (*g == "swap") hint.targetGlyph = TargetGlyph::SwapCross;
            else if (*g == "dot") hint.targetGlyph = TargetGlyph::Dot;
            else fail(ErrorKind::BadAttribute, node, "'glyph'='" + *g + "' is not box|oplus|swap|dot", path);
        }
        if (const auto* l = attribute(node, "label")) hint.label = *l;
        for (const auto& c : children(node, path)) {
            if (c.node->local != "Control") unknown(c);
            check_attributes(*c.node, {"input"}, c.path);
            hint.controlInputs.push_back(req_int(*c.node, "input", c.path));
        }
        return hint;
    }

    Gate read_gate(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {}, path);
        Gate gate;
        bool has_id = false;
        bool has_name = false;
        int transformations = 0;
        for (const auto& c : children(node, path)) {
            const auto& n = c.node->local;
            if (n == "Identification") {
                gate.identification = read_identification(*c.node, c.path);
                has_id = true;
            } else if (n == "Name") {
                gate.name = text_of(*c.node, c.path);
                has_name = true;
            } else if (n == "Nickname") {
                gate.nickname = text_of(*c.node, c.path);
            } else if (n == "Description") {
                gate.description = text_of(*c.node, c.path);
            } else if (n == "Parameter") {
                gate.parameters.push_back(read_parameter(*c.node, c.path));
            } else if (n == "Transformation") {
                gate.transformation = read_transformation(*c.node, c.path);
                ++transformations;
            } else if (n == "Render") {
                gate.renderHint = read_render(*c.node, c.path);
            } else {
                unknown(c);
            }
        }
        if (!has_id) fail(ErrorKind::InvalidContent, node, "Gate requires an Identification", path);
        if (!has_name) fail(ErrorKind::InvalidContent, node, "Gate requires a Name", path);
        if (transformations != 1) {
            fail(ErrorKind::InvalidContent, node, "Gate must contain a single Transformation", path);
        }
        std::set<std::string> names;
        for (const auto& p : gate.parameters) {
            if (!names.insert(p.name).second) {
                fail(ErrorKind::InvalidContent, node, "duplicate parameter '" + p.name + "'", path);
            }
        }
        return gate;
    }

    Parameter read_parameter(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {"name"}, path);
        Parameter p;
        if (const auto* n = attribute(node, "name")) p.name = *n;
        for (const auto& c : children(node, path)) {
            if (c.node->local == "Name") p.name = text_of(*c.node, c.path);
            else if (c.node->local == "Description") p.description = text_of(*c.node, c.path);
            else unknown(c);
        }
        if (p.name.empty()) fail(ErrorKind::InvalidContent, node, "Parameter requires a Name", path);
        return p;
    }

    // --- circuits ---------------------------------------------------------

    Map read_map(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {"qubit", "input", "value"}, path);
        if (!children(node, path).empty()) fail(ErrorKind::InvalidContent, node, "Map has no children", path);
        Map m;
        m.qubit = opt_int(node, "qubit", path);
        m.input = req_int(node, "input", path);
        m.fixedValue = opt_int(node, "value", path);
        if (m.qubit.has_value() == m.fixedValue.has_value()) {
            fail(ErrorKind::BadAttribute, node, "Map needs exactly one of 'qubit' or 'value'", path);
        }
        if (m.fixedValue && *m.fixedValue != 0 && *m.fixedValue != 1) {
            fail(ErrorKind::BadAttribute, node, "'value'='" + std::to_string(*m.fixedValue) + "' must be 0 or 1", path);
        }
        return m;
    }

    Operation read_operation(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {"reverse"}, path);
        Operation op;
        op.reverse = opt_bool(node, "reverse", path);
        int targets = 0;
        for (const auto& c : children(node, path)) {
            const auto& n = c.node->local;
            if (n == "Map") {
                op.maps.push_back(read_map(*c.node, c.path));
            } else if (n == "Bind") {
                check_attributes(*c.node, {"name", "value"}, c.path);
                ParameterBinding b;
                const auto* name = attribute(*c.node, "name");
                const auto value = opt_double(*c.node, "value", c.path);
                if (!name || !value) fail(ErrorKind::BadAttribute, *c.node, "Bind needs 'name' and 'value'", c.path);
                b.name = *name;
                b.value = *value;
                op.parameterBindings.push_back(std::move(b));
            } else if (n == "GateRef") {
                op.target = GateRef{read_reference(*c.node, c.path)};
                ++targets;
            } else if (n == "CircuitRef") {
                op.target = CircuitRef{read_reference(*c.node, c.path)};
                ++targets;
            } else if (n == "Gate") {
                op.target = read_gate_slot(*c.node, c.path);
                ++targets;
            } else if (n == "Circuit") {
                op.target = read_circuit_slot(*c.node, c.path);
                ++targets;
            } else {
                unknown(c);
            }
        }
        if (targets != 1) {
            fail(ErrorKind::InvalidContent, node, "Operation needs exactly one gate or circuit target", path);
        }
        if (op.maps.empty()) fail(ErrorKind::InvalidContent, node, "Operation needs at least one Map", path);
        return op;
    }

    // Prototype operations wrap references: <Gate><GateRef id="H"/></Gate>.
    OperationTarget read_gate_slot(const XmlNode& node, const std::string& path) const {
        const auto kids = children(node, path);
        if (kids.size() == 1 && kids[0].node->local == "GateRef") {
            check_attributes(node, {}, path);
            return GateRef{read_reference(*kids[0].node, kids[0].path)};
        }
        return read_gate(node, path);
    }

    OperationTarget read_circuit_slot(const XmlNode& node, const std::string& path) const {
        const auto kids = children(node, path);
        if (kids.size() == 1 && kids[0].node->local == "CircuitRef") {
            check_attributes(node, {}, path);
            return CircuitRef{read_reference(*kids[0].node, kids[0].path)};
        }
        fail(ErrorKind::InvalidContent, node, "inline circuits inside an Operation are not supported; use CircuitRef",
             path);
    }

    Circuit read_circuit(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {"size"}, path);
        Circuit circuit;
        circuit.size = req_int(node, "size", path);
        if (circuit.size < 1) fail(ErrorKind::BadAttribute, node, "'size' must be at least 1", path);
        std::string pending_note;
        std::map<std::string, int> counts;
        for (const auto& raw : node.children) {
            if (raw.kind == XmlNode::Kind::Comment) {
                if (!pending_note.empty()) pending_note += '\n';
                pending_note += trim(raw.text);
                continue;
            }
            if (raw.kind == XmlNode::Kind::Text) {
                if (!is_blank(raw.text)) fail(ErrorKind::InvalidContent, node, "unexpected text", path);
                continue;
            }
            const Child c{&raw, path + "/" + raw.local + "[" + std::to_string(++counts[raw.local]) + "]"};
            check_namespace(raw, c.path);
            const auto& n = raw.local;
            if (n == "Identification") {
                circuit.identification = read_identification(raw, c.path);
            } else if (n == "Name") {
                circuit.name = text_of(raw, c.path);
            } else if (n == "Description") {
                circuit.description = text_of(raw, c.path);
            } else if (n == "Input") {
                circuit.inputLabels.push_back(read_label(raw, c.path));
            } else if (n == "Output") {
                circuit.outputLabels.push_back(read_label(raw, c.path));
            } else if (n == "Step") {
                check_attributes(raw, {}, c.path);
                Step step;
                step.note = std::move(pending_note);
                for (const auto& op : children(raw, c.path)) {
                    if (op.node->local != "Operation") unknown(op);
                    step.operations.push_back(read_operation(*op.node, op.path));
                }
                circuit.steps.push_back(std::move(step));
            } else {
                unknown(c);
            }
            pending_note.clear();
        }
        return circuit;
    }

    // --- programs ---------------------------------------------------------

    QubitRange read_range(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {}, path);
        std::optional<int> start, end;
        for (const auto& c : children(node, path)) {
            if (c.node->local == "StartQubit") start = int_text(*c.node, c.path);
            else if (c.node->local == "EndQubit") end = int_text(*c.node, c.path);
            else unknown(c);
        }
        if (!start || !end) fail(ErrorKind::InvalidContent, node, "QubitRange needs StartQubit and EndQubit", path);
        return {*start, *end};
    }

    Prepare read_prepare(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {}, path);
        Prepare prepare;
        for (const auto& c : children(node, path)) {
            if (c.node->local != "QubitSet") unknown(c);
            check_attributes(*c.node, {}, c.path);
            QubitSet set;
            bool has_value = false;
            for (const auto& g : children(*c.node, c.path)) {
                if (g.node->local == "QubitIndex") {
                    set.qubitIndexes.push_back(int_text(*g.node, g.path));
                } else if (g.node->local == "Value") {
                    set.value = read_complex(*g.node, g.path);
                    check_value_present(*g.node, set.value, g.path);
                    has_value = true;
                } else {
                    unknown(g);
                }
            }
            if (!has_value) fail(ErrorKind::InvalidContent, *c.node, "QubitSet needs a Value", c.path);
            prepare.sets.push_back(std::move(set));
        }
        return prepare;
    }

    Register read_register(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {"size"}, path);
        Register reg;
        reg.size = req_int(node, "size", path);
        if (reg.size < 1) fail(ErrorKind::BadAttribute, node, "'size' must be at least 1", path);
        for (const auto& c : children(node, path)) {
            const auto& n = c.node->local;
            if (n == "Identification") reg.identification = read_identification(*c.node, c.path);
            else if (n == "QubitIndex") reg.selectors.emplace_back(QubitIndex{int_text(*c.node, c.path)});
            else if (n == "QubitRange") reg.selectors.emplace_back(read_range(*c.node, c.path));
            else if (n == "RegisterReference") reg.selectors.emplace_back(read_reference(*c.node, c.path));
            else if (n == "Prepare") reg.prepare = read_prepare(*c.node, c.path);
            else unknown(c);
        }
        return reg;
    }

    QubitState read_qubit(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {"index"}, path);
        QubitState q;
        q.index = opt_int(node, "index", path);
        bool zero = false, one = false;
        for (const auto& c : children(node, path)) {
            if (c.node->local == "Zero") {
                q.zero = read_complex(*c.node, c.path);
                zero = true;
            } else if (c.node->local == "One") {
                q.one = read_complex(*c.node, c.path);
                one = true;
            } else {
                unknown(c);
            }
        }
        if (!zero || !one) fail(ErrorKind::InvalidContent, node, "Qubit needs Zero and One", path);
        return q;
    }

    Memory read_memory(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {"size"}, path);
        Memory m;
        m.size = req_int(node, "size", path);
        if (m.size < 1) fail(ErrorKind::BadAttribute, node, "'size' must be at least 1", path);
        for (const auto& c : children(node, path)) {
            const auto& n = c.node->local;
            if (n == "Identification") m.identification = read_identification(*c.node, c.path);
            else if (n == "Name") m.name = text_of(*c.node, c.path);
            else if (n == "Prepare") m.prepare = read_prepare(*c.node, c.path);
            else if (n == "Qubit") m.qubits.push_back(read_qubit(*c.node, c.path));
            else unknown(c);
        }
        return m;
    }

    Execute read_execute(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {}, path);
        std::optional<Register> reg;
        std::optional<ExecuteTarget> target;
        for (const auto& c : children(node, path)) {
            const auto& n = c.node->local;
            std::optional<ExecuteTarget> t;
            if (n == "Register") {
                reg = read_register(*c.node, c.path);
                continue;
            }
            if (n == "Circuit") t = read_circuit(*c.node, c.path);
            else if (n == "CircuitRef") t = CircuitRef{read_reference(*c.node, c.path)};
            else if (n == "ProgramRef") t = ProgramRef{read_reference(*c.node, c.path)};
            else if (n == "Program") {
                fail(ErrorKind::InvalidContent, *c.node, "inline sub-programs are not supported; use ProgramRef",
                     c.path);
            } else unknown(c);
            if (target) fail(ErrorKind::InvalidContent, *c.node, "Execute has more than one target", c.path);
            target = std::move(t);
        }
        if (!reg) fail(ErrorKind::InvalidContent, node, "Execute requires a Register", path);
        if (!target) fail(ErrorKind::InvalidContent, node, "Execute requires a Circuit, CircuitRef or ProgramRef", path);
        return Execute{std::move(*reg), std::move(*target)};
    }

    Program read_program(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {}, path);
        Program p;
        bool has_id = false, has_memory = false;
        for (const auto& c : children(node, path)) {
            const auto& n = c.node->local;
            if (n == "Identification") {
                p.identification = read_identification(*c.node, c.path);
                has_id = true;
            } else if (n == "Name") {
                p.name = text_of(*c.node, c.path);
            } else if (n == "Memory") {
                p.memory = read_memory(*c.node, c.path);
                has_memory = true;
            } else if (n == "Register") {
                p.globalRegisters.push_back(read_register(*c.node, c.path));
            } else if (n == "Execute") {
                p.actions.emplace_back(read_execute(*c.node, c.path));
            } else if (n == "Measure") {
                check_attributes(*c.node, {}, c.path);
                std::optional<Register> reg;
                for (const auto& r : children(*c.node, c.path)) {
                    if (r.node->local != "Register") unknown(r);
                    reg = read_register(*r.node, r.path);
                }
                if (!reg) fail(ErrorKind::InvalidContent, *c.node, "Measure requires a Register", c.path);
                p.actions.emplace_back(Measure{std::move(*reg)});
            } else {
                unknown(c);
            }
        }
        if (!has_id) fail(ErrorKind::InvalidContent, node, "Program requires an Identification", path);
        if (!has_memory) fail(ErrorKind::InvalidContent, node, "Program requires a Memory", path);
        return p;
    }

    // --- libraries --------------------------------------------------------

    GateLibrary read_gate_library(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {}, path);
        GateLibrary lib;
        for (const auto& c : children(node, path)) {
            if (c.node->local == "Identification") lib.identification = read_identification(*c.node, c.path);
            else if (c.node->local == "Gate") lib.gates.push_back(read_gate(*c.node, c.path));
            else unknown(c);
        }
        return lib;
    }

    CircuitLibrary read_circuit_library(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {}, path);
        CircuitLibrary lib;
        for (const auto& c : children(node, path)) {
            if (c.node->local == "Identification") lib.identification = read_identification(*c.node, c.path);
            else if (c.node->local == "Circuit") lib.circuits.push_back(read_circuit(*c.node, c.path));
            else unknown(c);
        }
        return lib;
    }

    ProgramLibrary read_program_library(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {}, path);
        ProgramLibrary lib;
        for (const auto& c : children(node, path)) {
            if (c.node->local == "Identification") lib.identification = read_identification(*c.node, c.path);
            else if (c.node->local == "Program") lib.programs.push_back(read_program(*c.node, c.path));
            else unknown(c);
        }
        return lib;
    }

    Instance read_instance(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {}, path);
        Instance inst;
        for (const auto& c : children(node, path)) {
            const auto& n = c.node->local;
            if (n == "Identification") inst.identification = read_identification(*c.node, c.path);
            else if (n == "GateLibrary") inst.gateLibraries.push_back(read_gate_library(*c.node, c.path));
            else if (n == "CircuitLibrary") inst.circuitLibraries.push_back(read_circuit_library(*c.node, c.path));
            else if (n == "ProgramLibrary") inst.programLibraries.push_back(read_program_library(*c.node, c.path));
            else unknown(c);
        }
        return inst;
    }

    // The prototype <QIS> root holds gates and circuits side by side.
    Instance read_qis(const XmlNode& node, const std::string& path) const {
        check_attributes(node, {}, path);
        GateLibrary gates;
        CircuitLibrary circuits;
        for (const auto& c : children(node, path)) {
            if (c.node->local == "Gate") gates.gates.push_back(read_gate(*c.node, c.path));
            else if (c.node->local == "Circuit") circuits.circuits.push_back(read_circuit(*c.node, c.path));
            else unknown(c);
        }
        Instance inst;
        if (!gates.gates.empty()) inst.gateLibraries.push_back(std::move(gates));
        if (!circuits.circuits.empty()) inst.circuitLibraries.push_back(std::move(circuits));
        return inst;
    }

    std::string source_;
};

}  // namespace

Document parse_document(std::string_view bytes, const std::string& source) {
    const XmlNode root = detail::parse_xml(bytes, source);
    return Reader(source).read_root(root);
}

Fragment parse_fragment(std::string_view bytes, const std::string& source) {
    const XmlNode root = detail::parse_xml(bytes, source);
    return Reader(source).read_fragment(root);
}

}  // namespace qisxml
