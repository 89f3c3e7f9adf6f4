#include "qisxml/semantics.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "qisxml/error.hpp"

namespace qisxml {

namespace {

bool evaluable_syntax(const std::string& syntax) { return syntax == "html" || syntax == "odf"; }

std::string cell_label(const MatrixCell& cell) {
    return "(" + std::to_string(cell.row) + "," + std::to_string(cell.col) + ")";
}

bool matches(const Reference& ref, const Identification& id) {
    return ref.id == id.id && (!ref.agencyId || ref.agencyId == id.agency) && (!ref.version || ref.version == id.version);
}

void resolve_into(const Register& reg, int memorySize, std::span<const Register> globals,
                  std::vector<const Register*>& active, std::vector<int>& out) {
    if (std::find(active.begin(), active.end(), &reg) != active.end()) {
        throw Error(ErrorKind::ReferenceCycle, "register references itself");
    }
    active.push_back(&reg);
    std::vector<int> indices;
    if (reg.selectors.empty()) {
        for (int q = 1; q <= reg.size; ++q) {
            indices.push_back(q);
        }
    }
    for (const auto& sel : reg.selectors) {
        if (const auto* idx = std::get_if<QubitIndex>(&sel)) {
            indices.push_back(idx->value);
        } else if (const auto* range = std::get_if<QubitRange>(&sel)) {
            const int step = range->end >= range->start ? 1 : -1;
            for (int q = range->start;; q += step) {
                indices.push_back(q);
                if (q == range->end) break;
            }
        } else {
            const auto& ref = std::get<Reference>(sel);
            const Register* target = nullptr;
            for (const auto& g : globals) {
                if (g.identification && matches(ref, *g.identification)) {
                    target = &g;
                    break;
                }
            }
            if (target == nullptr) {
                throw Error(ErrorKind::DanglingReference, "register " + ref.id);
            }
            resolve_into(*target, memorySize, globals, active, indices);
        }
    }
    if (static_cast<int>(indices.size()) != reg.size) {
        throw Error(ErrorKind::SizeMismatch, "register of size " + std::to_string(reg.size) + " addresses " +
                                                 std::to_string(indices.size()) + " qubit(s)");
    }
    for (int q : indices) {
        if (q < 1 || q > memorySize) {
            throw Error(ErrorKind::IndexOutOfMemory,
                        "qubit " + std::to_string(q) + " outside memory of size " + std::to_string(memorySize));
        }
    }
    out.insert(out.end(), indices.begin(), indices.end());
    active.pop_back();
}

}  // namespace

std::optional<Expr> symbolic_expression(const ComplexValue& value) {
    std::optional<Error> first_failure;
    for (const auto& entry : value.symbolic) {
        if (!evaluable_syntax(entry.syntax)) {
            continue;
        }
        try {
            return parse_expr(entry.expression, ParseMode::Lenient);
        } catch (const Error& e) {
            if (!first_failure) first_failure = e;
        }
    }
    if (first_failure) {
        throw *first_failure;
    }
    return std::nullopt;
}

Complex evaluate(const ComplexValue& value, const Bindings& bindings) {
    if (value.has_numeric()) {
        return value.numeric();
    }
    std::optional<Expr> expr;
    try {
        expr = symbolic_expression(value);
    } catch (const Error& e) {
        throw Error(ErrorKind::ExpressionError, e.what());
    }
    if (!expr) {
        throw Error(ErrorKind::ExpressionError, "value has neither a numeric part nor an evaluable symbolic entry");
    }
    try {
        return eval_expr(*expr, bindings);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::UnboundParameter) throw;
        throw Error(ErrorKind::ExpressionError, e.what());
    }
}

Bindings canonical_bindings(const Bindings& bindings) {
    Bindings out;
    for (const auto& [name, value] : bindings) {
        out[canonical_parameter_name(name)] = value;
    }
    return out;
}

Bindings bindings_of(const Operation& op, const Bindings& defaults) {
    Bindings out = canonical_bindings(defaults);
    for (const auto& b : op.parameterBindings) {
        out[canonical_parameter_name(b.name)] = b.value;
    }
    return out;
}

CMatrix realize_matrix(const UnitaryTransformation& transformation, const Bindings& bindings) {
    const Bindings canon = canonical_bindings(bindings);
    const std::size_t dim = transformation.dimension();
    CMatrix m(dim, dim);
    for (const auto& cell : transformation.cells) {
        if (cell.row < 1 || cell.col < 1 || static_cast<std::size_t>(cell.row) > dim ||
            static_cast<std::size_t>(cell.col) > dim) {
            throw Error(ErrorKind::CellOutOfRange, "cell " + cell_label(cell) + " outside " + std::to_string(dim) +
                                                       "x" + std::to_string(dim) + " matrix");
        }
        try {
            m(cell.row - 1, cell.col - 1) = evaluate(cell.value, canon);
        } catch (const Error& e) {
            throw Error(e.kind(), std::string("cell ") + cell_label(cell) + ": " + e.what());
        }
    }
    if (transformation.multiplier) {
        m *= evaluate(*transformation.multiplier, canon);
    }
    return m;
}

CMatrix realize_gate(const Gate& gate, const Bindings& bindings, bool reverse) {
    CMatrix m = realize_matrix(gate.transformation, bindings);
    return reverse ? conjugate_transpose(m) : m;
}

std::vector<int> resolve_register(const Register& reg, int memorySize, std::span<const Register> globals) {
    std::vector<const Register*> active;
    std::vector<int> out;
    resolve_into(reg, memorySize, globals, active, out);
    return out;
}

std::vector<int> effective_measure_targets(const Program& program) {
    const auto measures = program.measures();
    std::vector<int> out;
    if (measures.empty()) {
        for (int q = 1; q <= program.memory.size; ++q) {
            out.push_back(q);
        }
        return out;
    }
    std::set<int> seen;
    for (const Measure* m : measures) {
        for (int q : resolve_register(m->reg, program.memory.size, program.globalRegisters)) {
            if (seen.insert(q).second) {
                out.push_back(q);
            }
        }
    }
    return out;
}

}  // namespace qisxml
