#pragma once

// Mathematical meaning of model entities: matrix realization and register
// resolution.

#include <span>
#include <vector>

#include "qisxml/matrix.hpp"
#include "qisxml/model.hpp"
#include "qisxml/symexpr.hpp"

namespace qisxml {

/// Value of a single complex number. The numeric part wins over symbolic
/// entries; otherwise the first "html"/"odf" entry that parses is evaluated.
Complex evaluate(const ComplexValue& value, const Bindings& bindings);

/// First evaluable symbolic entry of `value`, parsed leniently; nullopt when
/// no entry uses a known syntax. Throws SyntaxError when every candidate fails.
std::optional<Expr> symbolic_expression(const ComplexValue& value);

/// Dense 2^size matrix. Unlisted cells are zero; the multiplier scales every
/// entry. Throws CellOutOfRange, UnboundParameter, ExpressionError.
CMatrix realize_matrix(const UnitaryTransformation& transformation, const Bindings& bindings = {});

/// Realizes a gate with operation bindings applied over defaults, adjoint when
/// `reverse` is set.
CMatrix realize_gate(const Gate& gate, const Bindings& bindings, bool reverse);

/// Ordered 1-based memory indices addressed by `reg`. Explicit indices,
/// ranges and referenced registers are concatenated in document order; an
/// empty register addresses [1 .. size]. References resolve against
/// `globals` by identification. Throws SizeMismatch, IndexOutOfMemory,
/// DanglingReference, ReferenceCycle.
std::vector<int> resolve_register(const Register& reg, int memorySize, std::span<const Register> globals = {});

/// Memory indices reported by a program run: every measured register in
/// order without repeats, or the whole memory when there is no Measure.
std::vector<int> effective_measure_targets(const Program& program);

/// Bindings keyed by canonical parameter names.
Bindings canonical_bindings(const Bindings& bindings);
Bindings bindings_of(const Operation& op, const Bindings& defaults);

}  // namespace qisxml
