#pragma once

// Symbolic complex expressions found in <Symbolic> entries, e.g. "1/sqrt(2)",
// "i sin(θ)", "e^(2πiθ)".
//
// Grammar, lowest to highest precedence:
//   sum      := product (('+' | '-') product)*
//   product  := unary (('*' | '/') unary | unary)*      adjacency multiplies
//   unary    := ('-' | '+') unary | power
//   power    := atom ('^' unary)?                       right-associative
//   atom     := number | name | func '(' sum ')' | '(' sum ')'
//
// Names: constants pi/π, e, i; functions sqrt, cos, sin, exp; anything else is
// a parameter. Greek letters are single-character names and are folded onto
// their spelled-out form (θ -> theta) so that a parameter declared as "theta"
// binds the symbol θ.

#include <complex>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace qisxml {

using Bindings = std::map<std::string, double>;

class Expr {
  public:
    enum class Kind { Number, Constant, Parameter, Negate, Add, Sub, Mul, Div, Pow, Call };
    enum class Constant { Pi, E, I };
    enum class Function { Sqrt, Cos, Sin, Exp };

    static Expr number(double value);
    static Expr constant(Constant c);
    static Expr parameter(std::string name);
    static Expr negate(Expr operand);
    static Expr binary(Kind kind, Expr lhs, Expr rhs);
    static Expr call(Function f, Expr argument);

    Kind kind() const;
    double value() const;
    Constant constant_value() const;
    Function function() const;
    const std::string& name() const;
    /// Operand of Negate/Call, left operand of binary nodes.
    const Expr& lhs() const;
    const Expr& rhs() const;

    bool operator==(const Expr& other) const;

  private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

enum class ParseMode {
    Strict,
    /// Accepts parentheses left open at end of input, as in "e^(2πiθ".
    Lenient,
};

/// Throws Error{SyntaxError} with the byte offset of the failure.
Expr parse_expr(std::string_view source, ParseMode mode = ParseMode::Strict);

/// Throws Error{UnboundParameter} or Error{DomainError}.
std::complex<double> eval_expr(const Expr& e, const Bindings& bindings);

/// Canonical text that parses back to an equal tree.
std::string to_string(const Expr& e);

std::set<std::string> free_parameters(const Expr& e);

/// Decodes numeric (&#960; &#x3B8;) and common named (&pi; &theta; &amp;)
/// character references into UTF-8.
std::string decode_entities(std::string_view text);

/// Folds Greek letters onto spelled-out names: "θ" -> "theta". Other names
/// are returned unchanged.
std::string canonical_parameter_name(std::string_view name);

}  // namespace qisxml
