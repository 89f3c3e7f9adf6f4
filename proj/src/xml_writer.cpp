#include <charconv>
#include <sstream>

#include "qisxml/xml_io.hpp"

namespace qisxml {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

namespace {

std::string escape(std::string_view s, bool attribute) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"':
                if (attribute) out += "&quot;";
                else out += ch;
                break;
            default: out += ch;
        }
    }
    return out;
}

using Attrs = std::vector<std::pair<std::string, std::string>>;

class Emitter {
  public:
    std::string finish() { return out_.str(); }

    void declaration() { out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"; }

    void open(std::string_view tag, const Attrs& attrs = {}) {
        indent();
        out_ << '<' << tag;
        write_attrs(attrs);
        out_ << ">\n";
        ++depth_;
    }

    void close(std::string_view tag) {
        --depth_;
        indent();
        out_ << "</" << tag << ">\n";
    }

    void empty(std::string_view tag, const Attrs& attrs = {}) {
        indent();
        out_ << '<' << tag;
        write_attrs(attrs);
        out_ << "/>\n";
    }

    void leaf(std::string_view tag, std::string_view text, const Attrs& attrs = {}) {
        indent();
        out_ << '<' << tag;
        write_attrs(attrs);
        out_ << '>' << escape(text, false) << "</" << tag << ">\n";
    }

    // <r:Input qubit="1"><r:Name>InputA0</r:Name></r:Input> on a single line.
    void label(std::string_view tag, const QubitLabel& l) {
        indent();
        out_ << '<' << tag << " qubit=\"" << l.qubit << "\"><r:Name>" << escape(l.name, false) << "</r:Name></" << tag
             << ">\n";
    }

    void comment(std::string_view text) {
        std::string body(text);
        for (std::size_t p = body.find("--"); p != std::string::npos; p = body.find("--", p)) body.insert(p + 1, " ");
        if (!body.empty() && body.back() == '-') body += ' ';
        indent();
        out_ << "<!-- " << body << " -->\n";
    }

  private:
    void indent() {
        for (int k = 0; k < depth_; ++k) out_ << '\t';
    }

    void write_attrs(const Attrs& attrs) {
        for (const auto& [name, value] : attrs) out_ << ' ' << name << "=\"" << escape(value, true) << '"';
    }

    std::ostringstream out_;
    int depth_ = 0;
};

std::string str(int v) { return std::to_string(v); }

Attrs namespaces(std::initializer_list<char> prefixes) {
    Attrs attrs;
    for (char p : prefixes) {
        std::string_view uri;
        switch (p) {
            case 'i': uri = ns::kInstance; break;
            case 'g': uri = ns::kGate; break;
            case 'c': uri = ns::kCircuit; break;
            case 'p': uri = ns::kProgram; break;
            default: uri = ns::kReusable; break;
        }
        attrs.emplace_back(std::string("xmlns:") + p, std::string(uri));
    }
    return attrs;
}

class Writer {
  public:
    explicit Writer(Emitter& e) : e_(e) {}

    void identification(const Identification& id) {
        e_.open("r:Identification");
        e_.leaf("r:ID", id.id);
        if (id.agency) e_.leaf("r:AgencyID", *id.agency);
        if (id.version) e_.leaf("r:Version", *id.version);
        e_.close("r:Identification");
    }

    void reference(std::string_view tag, const Reference& ref) {
        Attrs attrs;
        if (ref.uri) attrs.emplace_back("URI", *ref.uri);
        e_.open(tag, attrs);
        e_.leaf("r:ID", ref.id);
        if (ref.libraryId) e_.leaf("r:LibraryID", *ref.libraryId);
        if (ref.agencyId) e_.leaf("r:AgencyID", *ref.agencyId);
        if (ref.version) e_.leaf("r:Version", *ref.version);
        e_.close(tag);
    }

    void complex(std::string_view tag, const ComplexValue& v, Attrs attrs = {}) {
        if (v.re) attrs.emplace_back("r", format_double(*v.re));
        if (v.im) attrs.emplace_back("i", format_double(*v.im));
        if (v.symbolic.empty()) {
            e_.empty(tag, attrs);
            return;
        }
        e_.open(tag, attrs);
        for (const auto& s : v.symbolic) e_.leaf("r:Symbolic", s.expression, {{"syntax", s.syntax}});
        e_.close(tag);
    }

    void gate(const Gate& g) {
        e_.open("g:Gate");
        identification(g.identification);
        e_.leaf("g:Name", g.name);
        if (g.nickname) e_.leaf("g:Nickname", *g.nickname);
        if (g.description) e_.leaf("g:Description", *g.description);
        for (const auto& p : g.parameters) {
            e_.open("g:Parameter");
            e_.leaf("g:Name", p.name);
            if (p.description) e_.leaf("g:Description", *p.description);
            e_.close("g:Parameter");
        }
        const auto& t = g.transformation;
        e_.open("g:Transformation", {{"size", str(t.size)}});
        if (t.multiplier) complex("g:Multiplier", *t.multiplier);
        for (const auto& c : t.cells) complex("g:Cell", c.value, {{"row", str(c.row)}, {"col", str(c.col)}});
        e_.close("g:Transformation");
        if (g.renderHint) {
            const auto& h = *g.renderHint;
            Attrs attrs;
            switch (h.targetGlyph) {
                case TargetGlyph::Box: attrs.emplace_back("glyph", "box"); break;
                case TargetGlyph::Oplus: attrs.emplace_back("glyph", "oplus"); break;
                case TargetGlyph::SwapCross: attrs.emplace_back("glyph", "swap"); break;
                case TargetGlyph::Dot: attrs.emplace_back("glyph", "dot"); break;
            }
            if (h.label) attrs.emplace_back("label", *h.label);
            if (h.controlInputs.empty()) {
                e_.empty("g:Render", attrs);
            } else {
                e_.open("g:Render", attrs);
                for (int input : h.controlInputs) e_.empty("g:Control", {{"input", str(input)}});
                e_.close("g:Render");
            }
        }
        e_.close("g:Gate");
    }

    void operation(const Operation& op) {
        Attrs attrs;
        if (op.reverse) attrs.emplace_back("reverse", "true");
        e_.open("c:Operation", attrs);
        for (const auto& m : op.maps) {
            Attrs ma;
            if (m.qubit) ma.emplace_back("qubit", str(*m.qubit));
            ma.emplace_back("input", str(m.input));
            if (m.fixedValue) ma.emplace_back("value", str(*m.fixedValue));
            e_.empty("c:Map", ma);
        }
        for (const auto& b : op.parameterBindings) {
            e_.empty("c:Bind", {{"name", b.name}, {"value", format_double(b.value)}});
        }
        if (const auto* g = std::get_if<GateRef>(&op.target)) reference("c:GateRef", g->ref);
        else if (const auto* c = std::get_if<CircuitRef>(&op.target)) reference("c:CircuitRef", c->ref);
        else gate(std::get<Gate>(op.target));
        e_.close("c:Operation");
    }

    void circuit(const Circuit& c) {
        e_.open("c:Circuit", {{"size", str(c.size)}});
        if (c.identification) identification(*c.identification);
        if (c.name) e_.leaf("c:Name", *c.name);
        if (c.description) e_.leaf("c:Description", *c.description);
        for (const auto& l : c.inputLabels) e_.label("r:Input", l);
        for (const auto& l : c.outputLabels) e_.label("r:Output", l);
        for (const auto& step : c.steps) {
            if (!step.note.empty()) e_.comment(step.note);
            e_.open("c:Step");
            for (const auto& op : step.operations) operation(op);
            e_.close("c:Step");
        }
        e_.close("c:Circuit");
    }

    void prepare(const Prepare& p) {
        e_.open("p:Prepare");
        for (const auto& set : p.sets) {
            e_.open("p:QubitSet");
            for (int q : set.qubitIndexes) e_.leaf("p:QubitIndex", str(q));
            complex("p:Value", set.value);
            e_.close("p:QubitSet");
        }
        e_.close("p:Prepare");
    }

    void register_(const Register& r) {
        e_.open("p:Register", {{"size", str(r.size)}});
        if (r.identification) identification(*r.identification);
        for (const auto& sel : r.selectors) {
            if (const auto* q = std::get_if<QubitIndex>(&sel)) {
                e_.leaf("p:QubitIndex", str(q->value));
            } else if (const auto* range = std::get_if<QubitRange>(&sel)) {
                e_.open("p:QubitRange");
                e_.leaf("p:StartQubit", str(range->start));
                e_.leaf("p:EndQubit", str(range->end));
                e_.close("p:QubitRange");
            } else {
                reference("p:RegisterReference", std::get<Reference>(sel));
            }
        }
        if (r.prepare) prepare(*r.prepare);
        e_.close("p:Register");
    }

    void memory(const Memory& m) {
        const bool bare = !m.identification && !m.name && !m.prepare && m.qubits.empty();
        if (bare) {
            e_.empty("p:Memory", {{"size", str(m.size)}});
            return;
        }
        e_.open("p:Memory", {{"size", str(m.size)}});
        if (m.identification) identification(*m.identification);
        if (m.name) e_.leaf("p:Name", *m.name);
        if (m.prepare) prepare(*m.prepare);
        for (const auto& q : m.qubits) {
            Attrs attrs;
            if (q.index) attrs.emplace_back("index", str(*q.index));
            e_.open("p:Qubit", attrs);
            complex("r:Zero", q.zero);
            complex("r:One", q.one);
            e_.close("p:Qubit");
        }
        e_.close("p:Memory");
    }

    void program(const Program& p) {
        e_.open("p:Program");
        identification(p.identification);
        if (p.name) e_.leaf("p:Name", *p.name);
        memory(p.memory);
        for (const auto& r : p.globalRegisters) register_(r);
        for (const auto& action : p.actions) {
            if (const auto* ex = std::get_if<Execute>(&action)) {
                e_.open("p:Execute");
                register_(ex->reg);
                if (const auto* c = std::get_if<Circuit>(&ex->target)) circuit(*c);
                else if (const auto* cr = std::get_if<CircuitRef>(&ex->target)) reference("p:CircuitRef", cr->ref);
                else reference("p:ProgramRef", std::get<ProgramRef>(ex->target).ref);
                e_.close("p:Execute");
            } else {
                e_.open("p:Measure");
                register_(std::get<Measure>(action).reg);
                e_.close("p:Measure");
            }
        }
        e_.close("p:Program");
    }

    void gate_library(const GateLibrary& lib, Attrs attrs) {
        e_.open("g:GateLibrary", attrs);
        if (lib.identification) identification(*lib.identification);
        for (const auto& g : lib.gates) gate(g);
        e_.close("g:GateLibrary");
    }

    void circuit_library(const CircuitLibrary& lib, Attrs attrs) {
        e_.open("c:CircuitLibrary", attrs);
        if (lib.identification) identification(*lib.identification);
        for (const auto& c : lib.circuits) circuit(c);
        e_.close("c:CircuitLibrary");
    }

    void program_library(const ProgramLibrary& lib, Attrs attrs) {
        e_.open("p:ProgramLibrary", attrs);
        if (lib.identification) identification(*lib.identification);
        for (const auto& p : lib.programs) program(p);
        e_.close("p:ProgramLibrary");
    }

    void instance(const Instance& inst) {
        e_.open("i:Instance", namespaces({'i', 'g', 'c', 'p', 'r'}));
        if (inst.identification) identification(*inst.identification);
        for (const auto& l : inst.gateLibraries) gate_library(l, {});
        for (const auto& l : inst.circuitLibraries) circuit_library(l, {});
        for (const auto& l : inst.programLibraries) program_library(l, {});
        e_.close("i:Instance");
    }

  private:
    Emitter& e_;
};

template <typename F>
std::string emit(F&& body) {
    Emitter e;
    e.declaration();
    Writer w(e);
    body(w);
    return e.finish();
}

}  // namespace

std::string serialize(const GateLibrary& library) {
    return emit([&](Writer& w) { w.gate_library(library, namespaces({'g', 'r'})); });
}

std::string serialize(const CircuitLibrary& library) {
    return emit([&](Writer& w) { w.circuit_library(library, namespaces({'c', 'g', 'r'})); });
}

std::string serialize(const ProgramLibrary& library) {
    return emit([&](Writer& w) { w.program_library(library, namespaces({'p', 'c', 'g', 'r'})); });
}

std::string serialize(const Instance& instance) {
    return emit([&](Writer& w) { w.instance(instance); });
}

std::string serialize(const Document& document) {
    return std::visit([](const auto& d) { return serialize(d); }, document);
}

}  // namespace qisxml
