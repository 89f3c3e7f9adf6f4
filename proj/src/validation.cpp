#include "qisxml/validation.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "qisxml/error.hpp"
#include "qisxml/semantics.hpp"

namespace qisxml {

namespace {

std::string cell_name(const MatrixCell& c) {
    return "Cell (" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

template <typename T>
std::size_t ordinal(const std::vector<Entry<T>>& entries, const T* entity) {
    std::size_t k = 0;
    const LoadedDocument* doc = nullptr;
    for (const auto& e : entries) {
        if (e.entity == entity) {
            doc = e.document;
            break;
        }
    }
    for (const auto& e : entries) {
        if (e.entity == entity) return k;
        if (e.document == doc) ++k;
    }
    return k;
}

template <typename T>
Location base_location(const Entry<T>& e, std::string_view kind, std::size_t index) {
    Location loc;
    loc.document = e.document->uri;
    loc.library = e.library ? e.library->id : std::string();
    loc.entityKind = kind;
    loc.entityIndex = index;
    if constexpr (std::is_same_v<T, Circuit>) {
        loc.entity = e.entity->identification ? e.entity->identification->id : std::string();
    } else {
        loc.entity = e.entity->identification.id;
    }
    return loc;
}

class Validator {
  public:
    Validator(const DocumentSet& set, const ValidateOptions& options) : set_(set), options_(options) {}

    std::vector<Finding> take() { return std::move(out_); }

    void gate_entry(const Entry<Gate>& e) {
        gate(*e.entity, base_location(e, "gate", ordinal(set_.gates(), e.entity)));
    }

    void circuit_entry(const Entry<Circuit>& e) {
        circuit(*e.entity, base_location(e, "circuit", ordinal(set_.circuits(), e.entity)));
    }

    void program_entry(const Entry<Program>& e) {
        program(*e.entity, base_location(e, "program", ordinal(set_.programs(), e.entity)));
    }

    // Visits a program, then each gate and circuit reachable from it once.
    void reachable(const Program& p, const Location& loc) {
        program(p, loc);
        std::vector<const Circuit*> pending;
        for (const Execute* ex : p.executes()) {
            if (const auto* c = std::get_if<Circuit>(&ex->target)) pending.push_back(c);
            if (const auto* ref = std::get_if<CircuitRef>(&ex->target)) {
                if (auto e = try_circuit(ref->ref)) {
                    pending.push_back(e->entity);
                    if (seen_circuits_.insert(e->entity).second) circuit_entry(*e);
                }
            }
        }
        while (!pending.empty()) {
            const Circuit* c = pending.back();
            pending.pop_back();
            for (const auto& step : c->steps) {
                for (const auto& op : step.operations) {
                    if (const auto* g = std::get_if<GateRef>(&op.target)) {
                        if (auto e = try_gate(g->ref); e && seen_gates_.insert(e->entity).second) gate_entry(*e);
                    } else if (const auto* r = std::get_if<CircuitRef>(&op.target)) {
                        if (auto e = try_circuit(r->ref); e && seen_circuits_.insert(e->entity).second) {
                            circuit_entry(*e);
                            pending.push_back(e->entity);
                        }
                    }
                }
            }
        }
    }

  private:
    void add(Severity severity, const char* code, std::string message, const Location& loc) {
        out_.push_back(Finding{severity, code, std::move(message), loc});
    }

    void error(const char* code, std::string message, const Location& loc) {
        add(Severity::Error, code, std::move(message), loc);
    }

    std::optional<Entry<Gate>> try_gate(const Reference& ref) const {
        try {
            return set_.resolve_gate(ref);
        } catch (const Error&) {
            return std::nullopt;
        }
    }

    std::optional<Entry<Circuit>> try_circuit(const Reference& ref) const {
        try {
            return set_.resolve_circuit(ref);
        } catch (const Error&) {
            return std::nullopt;
        }
    }

    // Returns false when the value cannot be evaluated.
    bool value_ok(const ComplexValue& v, const std::set<std::string>& params, const std::string& what,
                  const Location& loc) {
        if (v.has_numeric()) return true;
        if (v.symbolic.empty()) {
            error(codes::kBadCellExpression, what + " has no value.", loc);
            return false;
        }
        std::optional<Expr> expr;
        try {
            expr = symbolic_expression(v);
        } catch (const Error& e) {
            error(codes::kBadCellExpression, what + " has an unreadable expression: " + e.detail(), loc);
            return false;
        }
        if (!expr) {
            error(codes::kBadCellExpression, what + " has no html or odf expression.", loc);
            return false;
        }
        for (const auto& name : free_parameters(*expr)) {
            if (!params.contains(canonical_parameter_name(name))) {
                error(codes::kBadCellExpression, what + " uses undeclared parameter '" + name + "'.", loc);
                return false;
            }
        }
        return true;
    }

    void gate(const Gate& g, const Location& loc) {
        const std::size_t before = out_.size();
        std::set<std::string> params;
        for (const auto& p : g.parameters) params.insert(canonical_parameter_name(p.name));
        const long dim = static_cast<long>(g.transformation.dimension());
        if (g.transformation.multiplier) value_ok(*g.transformation.multiplier, params, "Multiplier", loc);
        for (const auto& c : g.transformation.cells) {
            if (c.row < 1 || c.col < 1 || c.row > dim || c.col > dim) {
                error(codes::kCellOutOfRange,
                      cell_name(c) + " is outside the " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix.",
                      loc);
            }
            value_ok(c.value, params, cell_name(c), loc);
        }
        if (!options_.strictUnitary || !g.parameters.empty() || out_.size() != before) return;
        try {
            const double defect = unitarity_defect(realize_matrix(g.transformation));
            if (defect > kTolerance) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.3g", defect);
                error(codes::kNotUnitary, "Transformation is not unitary (max |UU*-I| = " + std::string(buf) + ").",
                      loc);
            }
        } catch (const Error& e) {
            error(codes::kBadCellExpression, e.what(), loc);
        }
    }

    void circuit(const Circuit& c, const Location& base) {
        for (std::size_t s = 0; s < c.steps.size(); ++s) {
            Location step_loc = base;
            step_loc.step = static_cast<int>(s + 1);
            const Step& step = c.steps[s];
            std::vector<Finding> saved = std::move(out_);
            out_.clear();
            std::set<int> mapped;
            for (std::size_t o = 0; o < step.operations.size(); ++o) {
                Location op_loc = step_loc;
                op_loc.operation = static_cast<int>(o + 1);
                operation(step.operations[o], c.size, mapped, op_loc);
            }
            std::vector<Finding> step_findings = std::move(out_);
            out_ = std::move(saved);
            if (static_cast<int>(mapped.size()) < c.size) {
                add(Severity::Warning, codes::kUnmappedQubits, "Not all qubits have been mapped.", step_loc);
            }
            out_.insert(out_.end(), step_findings.begin(), step_findings.end());
        }
    }

    void operation(const Operation& op, int circuit_size, std::set<int>& mapped, const Location& loc) {
        std::optional<int> target_size;
        if (const auto* g = std::get_if<Gate>(&op.target)) {
            gate(*g, loc);
            target_size = g->size();
        } else if (const auto* gr = std::get_if<GateRef>(&op.target)) {
            if (auto e = try_gate(gr->ref)) target_size = e->entity->size();
            else error(codes::kDanglingReference, "GateRef '" + gr->ref.id + "' does not resolve.", loc);
        } else {
            const auto& cr = std::get<CircuitRef>(op.target);
            if (auto e = try_circuit(cr.ref)) target_size = e->entity->size;
            else error(codes::kDanglingReference, "CircuitRef '" + cr.ref.id + "' does not resolve.", loc);
        }
        std::set<int> inputs;
        for (std::size_t k = 0; k < op.maps.size(); ++k) {
            const Map& m = op.maps[k];
            Location map_loc = loc;
            map_loc.map = static_cast<int>(k);
            const std::string prefix = "Map " + std::to_string(k);
            if (m.qubit) {
                const int q = *m.qubit;
                if (q < 1 || q > circuit_size) {
                    error(codes::kMapQubitOutOfRange,
                          prefix + " qubit=" + std::to_string(q) + " is out of Circuit range.", map_loc);
                } else if (!mapped.insert(q).second) {
                    error(codes::kDuplicateMapping,
                          prefix + " qubit=" + std::to_string(q) + " is already mapped in this step.", map_loc);
                }
            }
            if (target_size && (m.input < 1 || m.input > *target_size)) {
                error(codes::kMapInputOutOfRange, prefix + " input=" + std::to_string(m.input) + " is out of Gate range.",
                      map_loc);
            } else if (!inputs.insert(m.input).second) {
                error(codes::kDuplicateMapping,
                      prefix + " input=" + std::to_string(m.input) + " is mapped more than once.", map_loc);
            }
        }
    }

    void indices_in(const std::vector<int>& indices, int limit, const std::string& what, const Location& loc) {
        for (int q : indices) {
            if (q < 1 || q > limit) {
                error(codes::kIndexOutOfBounds,
                      what + " index " + std::to_string(q) + " is outside 1.." + std::to_string(limit) + ".", loc);
            }
        }
    }

    void prepare(const Prepare& p, int limit, const std::string& what, const Location& loc) {
        for (const auto& set : p.sets) {
            indices_in(set.qubitIndexes, limit, what + " Prepare", loc);
            value_ok(set.value, {}, what + " Prepare value", loc);
        }
    }

    void register_(const Register& reg, const Program& p, const Location& loc) {
        try {
            (void)resolve_register(reg, p.memory.size, p.globalRegisters);
        } catch (const Error& e) {
            switch (e.kind()) {
                case ErrorKind::IndexOutOfMemory:
                    error(codes::kIndexOutOfBounds, "Register: " + e.detail() + ".", loc);
                    break;
                case ErrorKind::SizeMismatch:
                    error(codes::kRegisterSizeMismatch, "Register: " + e.detail() + ".", loc);
                    break;
                default:
                    error(codes::kDanglingReference, "Register: " + e.detail() + ".", loc);
                    break;
            }
        }
        if (reg.prepare) prepare(*reg.prepare, reg.size, "Register", loc);
    }

    void program(const Program& p, const Location& base) {
        Location mem = base;
        mem.part = "Memory";
        for (const auto& q : p.memory.qubits) {
            if (q.index) indices_in({*q.index}, p.memory.size, "Qubit", mem);
            if (!value_ok(q.zero, {}, "Qubit zero amplitude", mem) || !value_ok(q.one, {}, "Qubit one amplitude", mem)) {
                continue;
            }
            const double total = std::norm(evaluate(q.zero, {})) + std::norm(evaluate(q.one, {}));
            if (std::abs(total - 1.0) > kTolerance) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.12g", total);
                error(codes::kQubitNormalization, "Qubit total probability is " + std::string(buf) + ", not 1.", mem);
            }
        }
        if (p.memory.prepare) prepare(*p.memory.prepare, p.memory.size, "Memory", mem);
        for (std::size_t k = 0; k < p.globalRegisters.size(); ++k) {
            Location loc = base;
            loc.part = "Register " + std::to_string(k + 1);
            register_(p.globalRegisters[k], p, loc);
        }
        for (std::size_t a = 0; a < p.actions.size(); ++a) {
            Location loc = base;
            if (const auto* m = std::get_if<Measure>(&p.actions[a])) {
                loc.part = "Measure " + std::to_string(a + 1);
                register_(m->reg, p, loc);
                continue;
            }
            const auto& ex = std::get<Execute>(p.actions[a]);
            loc.part = "Execute " + std::to_string(a + 1);
            register_(ex.reg, p, loc);
            std::optional<int> size;
            if (const auto* c = std::get_if<Circuit>(&ex.target)) {
                circuit(*c, loc);
                size = c->size;
            } else if (const auto* cr = std::get_if<CircuitRef>(&ex.target)) {
                if (auto e = try_circuit(cr->ref)) size = e->entity->size;
                else error(codes::kDanglingReference, "CircuitRef '" + cr->ref.id + "' does not resolve.", loc);
            } else {
                const auto& pr = std::get<ProgramRef>(ex.target);
                try {
                    (void)set_.resolve_program(pr.ref);
                } catch (const Error&) {
                    error(codes::kDanglingReference, "ProgramRef '" + pr.ref.id + "' does not resolve.", loc);
                }
            }
            if (size && *size != ex.reg.size) {
                error(codes::kRegisterSizeMismatch,
                      "Register size " + std::to_string(ex.reg.size) + " does not match circuit size " +
                          std::to_string(*size) + ".",
                      loc);
            }
        }
    }

    const DocumentSet& set_;
    ValidateOptions options_;
    std::vector<Finding> out_;
    std::set<const Gate*> seen_gates_;
    std::set<const Circuit*> seen_circuits_;
};

template <typename T>
bool in_document(const Entry<T>& e, const LoadedDocument& d) {
    return e.document == &d;
}

}  // namespace

std::vector<Finding> validate(const DocumentSet& set, const ValidateOptions& options) {
    Validator v(set, options);
    for (const auto& doc : set.documents()) {
        if (doc.builtin && !options.includeBuiltins) continue;
        for (const auto& e : set.gates()) {
            if (in_document(e, doc)) v.gate_entry(e);
        }
        for (const auto& e : set.circuits()) {
            if (in_document(e, doc)) v.circuit_entry(e);
        }
        for (const auto& e : set.programs()) {
            if (in_document(e, doc)) v.program_entry(e);
        }
    }
    return v.take();
}

std::vector<Finding> validate_program(const Program& program, const DocumentSet& set,
                                      const ValidateOptions& options) {
    Validator v(set, options);
    Location loc;
    loc.entityKind = "program";
    loc.entity = program.identification.id;
    for (const auto& e : set.programs()) {
        if (e.entity == &program) loc = base_location(e, "program", ordinal(set.programs(), e.entity));
    }
    v.reachable(program, loc);
    return v.take();
}

std::size_t count(const std::vector<Finding>& findings, Severity severity) {
    std::size_t n = 0;
    for (const auto& f : findings) n += f.severity == severity ? 1 : 0;
    return n;
}

std::string format_maps(const Operation& op) {
    std::string s = "[";
    for (std::size_t k = 0; k < op.maps.size(); ++k) {
        const Map& m = op.maps[k];
        if (k) s += ',';
        s += m.qubit ? std::to_string(*m.qubit) : "#" + std::to_string(m.fixedValue.value_or(0));
        s += '=' + std::to_string(m.input);
    }
    return s + "]";
}

namespace {

std::string finding_line(const Finding& f) {
    std::string line = f.severity == Severity::Error ? "ERROR: " : "Warning: ";
    if (!f.location.part.empty()) line += f.location.part + ": ";
    return line + f.message + "\n";
}

std::string target_label(const Operation& op, const DocumentSet& set) {
    if (const auto* g = std::get_if<Gate>(&op.target)) return g->name + " (" + g->short_name() + ")";
    if (const auto* gr = std::get_if<GateRef>(&op.target)) {
        try {
            const Gate& g = *set.resolve_gate(gr->ref).entity;
            return g.name + " (" + g.short_name() + ")";
        } catch (const Error&) {
            return "? (" + gr->ref.id + ")";
        }
    }
    const auto& cr = std::get<CircuitRef>(op.target);
    try {
        const Circuit& c = *set.resolve_circuit(cr.ref).entity;
        return "Circuit " + c.name.value_or(cr.ref.id) + " (" + cr.ref.id + ")";
    } catch (const Error&) {
        return "? (" + cr.ref.id + ")";
    }
}

}  // namespace

std::string report_text(const DocumentSet& set, const std::vector<Finding>& findings) {
    std::ostringstream out;
    std::vector<bool> used(findings.size(), false);

    // Findings of one entity, optionally narrowed to a step/operation.
    auto select = [&](const Location& where, auto pred) {
        std::vector<const Finding*> sel;
        for (std::size_t k = 0; k < findings.size(); ++k) {
            const auto& l = findings[k].location;
            if (used[k] || l.document != where.document || l.entityKind != where.entityKind ||
                l.entityIndex != where.entityIndex || !pred(l)) {
                continue;
            }
            used[k] = true;
            sel.push_back(&findings[k]);
        }
        return sel;
    };
    auto any = [&](const Location& where) {
        for (const auto& f : findings) {
            const auto& l = f.location;
            if (l.document == where.document && l.entityKind == where.entityKind && l.entityIndex == where.entityIndex) {
                return true;
            }
        }
        return false;
    };

    for (const auto& doc : set.documents()) {
        std::size_t index = 0;
        for (const auto& e : set.gates()) {
            if (e.document != &doc) continue;
            const Location where{doc.uri, {}, "gate", {}, index++};
            if (!any(where)) continue;
            const Gate& g = *e.entity;
            out << "Gate " << g.identification.id << ", Size " << g.size() << "\n" << g.name << "\n";
            for (const auto* f : select(where, [](const Location&) { return true; })) out << finding_line(*f);
        }
        index = 0;
        for (const auto& e : set.circuits()) {
            if (e.document != &doc) continue;
            const Location where{doc.uri, {}, "circuit", {}, index++};
            if (!any(where)) continue;
            const Circuit& c = *e.entity;
            out << "Circuit " << (c.identification ? c.identification->id : std::string("(unidentified)"))
                << ", Size " << c.size << ", " << c.steps.size() << " step(s)\n";
            if (c.name) out << *c.name << "\n";
            if (c.description) out << *c.description << "\n";
            for (const auto* f : select(where, [](const Location& l) { return !l.step; })) out << finding_line(*f);
            for (std::size_t s = 0; s < c.steps.size(); ++s) {
                const int step_no = static_cast<int>(s + 1);
                const auto& step = c.steps[s];
                out << "Step " << step_no << ", " << step.operations.size() << " operation(s)\n";
                for (const auto* f : select(where, [&](const Location& l) { return l.step == step_no && !l.operation; })) {
                    out << finding_line(*f);
                }
                for (std::size_t o = 0; o < step.operations.size(); ++o) {
                    const int op_no = static_cast<int>(o + 1);
                    const auto& op = step.operations[o];
                    out << op_no << ": " << target_label(op, set) << " " << format_maps(op) << "\n";
                    for (const auto* f :
                         select(where, [&](const Location& l) { return l.step == step_no && l.operation == op_no; })) {
                        out << finding_line(*f);
                    }
                }
            }
        }
        index = 0;
        for (const auto& e : set.programs()) {
            if (e.document != &doc) continue;
            const Location where{doc.uri, {}, "program", {}, index++};
            if (!any(where)) continue;
            const Program& p = *e.entity;
            out << "Program " << p.identification.id << ", Memory " << p.memory.size << ", " << p.actions.size()
                << " action(s)\n";
            if (p.name) out << *p.name << "\n";
            for (const auto* f : select(where, [](const Location&) { return true; })) {
                std::string line = finding_line(*f);
                if (f->location.step) {
                    line.insert(line.find(": ") + 2, "Step " + std::to_string(*f->location.step) +
                                                         (f->location.operation
                                                              ? ", operation " + std::to_string(*f->location.operation)
                                                              : std::string()) +
                                                         ": ");
                }
                out << line;
            }
        }
    }
    for (std::size_t k = 0; k < findings.size(); ++k) {
        if (!used[k]) out << finding_line(findings[k]);
    }
    return out.str();
}

}  // namespace qisxml
