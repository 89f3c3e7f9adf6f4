#include "qisxml/symexpr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "qisxml/error.hpp"

namespace qisxml {

struct Expr::Node {
    Kind kind;
    double value = 0.0;
    Constant constant = Constant::Pi;
    Function function = Function::Sqrt;
    std::string name;
    std::optional<Expr> lhs;
    std::optional<Expr> rhs;
};

Expr Expr::number(double value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::constant(Constant c) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->constant = c;
    return Expr(std::move(n));
}

Expr Expr::parameter(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Parameter;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Negate;
    n->lhs = std::move(operand);
    return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return Expr(std::move(n));
}

Expr Expr::call(Function f, Expr argument) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->function = f;
    n->lhs = std::move(argument);
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
Expr::Constant Expr::constant_value() const { return node_->constant; }
Expr::Function Expr::function() const { return node_->function; }
const std::string& Expr::name() const { return node_->name; }
const Expr& Expr::lhs() const { return *node_->lhs; }
const Expr& Expr::rhs() const { return *node_->rhs; }

bool Expr::operator==(const Expr& other) const {
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
        case Kind::Number: return a.value == b.value;
        case Kind::Constant: return a.constant == b.constant;
        case Kind::Parameter: return a.name == b.name;
        case Kind::Negate: return *a.lhs == *b.lhs;
        case Kind::Call: return a.function == b.function && *a.lhs == *b.lhs;
        default: return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
    }
}

namespace {

struct GreekName {
    char32_t code;
    std::string_view name;
};

constexpr std::array<GreekName, 12> kGreek{{
    {U'α', "alpha"},
    {U'β', "beta"},
    {U'γ', "gamma"},
    {U'δ', "delta"},
    {U'ε', "epsilon"},
    {U'θ', "theta"},
    {U'λ', "lambda"},
    {U'μ', "mu"},
    {U'π', "pi"},
    {U'σ', "sigma"},
    {U'φ', "phi"},
    {U'ω', "omega"},
}};

std::string encode_utf8(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
}

// Decodes one UTF-8 sequence at `pos`; returns the code point and advances.
// Malformed bytes decode as themselves.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
    const auto b0 = static_cast<unsigned char>(s[pos]);
    int extra = 0;
    char32_t cp = b0;
    if (b0 >= 0xF0) {
        extra = 3;
        cp = b0 & 0x07;
    } else if (b0 >= 0xE0) {
        extra = 2;
        cp = b0 & 0x0F;
    } else if (b0 >= 0xC0) {
        extra = 1;
        cp = b0 & 0x1F;
    }
    ++pos;
    if (pos + extra > s.size()) {
        return b0;
    }
    for (int k = 0; k < extra; ++k) {
        if (pos >= s.size()) {
            return cp;
        }
        cp = (cp << 6) | (static_cast<unsigned char>(s[pos]) & 0x3F);
        ++pos;
    }
    return cp;
}

bool is_greek(char32_t cp) { return cp >= 0x0391 && cp <= 0x03C9; }

std::string_view greek_name(char32_t cp) {
    for (const auto& g : kGreek) {
        if (g.code == cp) {
            return g.name;
        }
    }
    return {};
}

enum class Tok { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t pos;
    double number = 0.0;
    std::string text;
};

[[noreturn]] void syntax_error(std::size_t pos, const std::string& detail) {
    throw Error(ErrorKind::SyntaxError, "at offset " + std::to_string(pos) + ": " + detail);
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    while (i < src.size()) {
        const char c = src[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
            while (i < src.size() && (is_digit(src[i]) || src[i] == '.')) {
                ++i;
            }
            // Exponent only when 'e' is followed by digits, so "2e^x" keeps e.
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < src.size() && (src[j] == '+' || src[j] == '-')) {
                    ++j;
                }
                if (j < src.size() && is_digit(src[j])) {
                    i = j;
                    while (i < src.size() && is_digit(src[i])) {
                        ++i;
                    }
                }
            }
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(src.data() + start, src.data() + i, v);
            if (ec != std::errc() || ptr != src.data() + i) {
                syntax_error(start, "malformed number '" + std::string(src.substr(start, i - start)) + "'");
            }
            out.push_back({Tok::Number, start, v, {}});
            continue;
        }
        if (is_alpha(c)) {
            while (i < src.size() && (is_alpha(src[i]) || is_digit(src[i]))) {
                ++i;
            }
            out.push_back({Tok::Name, start, 0.0, std::string(src.substr(start, i - start))});
            continue;
        }
        if (static_cast<unsigned char>(c) >= 0x80) {
            const char32_t cp = decode_utf8(src, i);
            if (!is_greek(cp)) {
                syntax_error(start, "unexpected character");
            }
            const auto name = greek_name(cp);
            out.push_back({Tok::Name, start, 0.0, name.empty() ? encode_utf8(cp) : std::string(name)});
            continue;
        }
        Tok kind;
        switch (c) {
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            default: syntax_error(start, std::string("unexpected character '") + c + "'");
        }
        out.push_back({kind, start, 0.0, {}});
        ++i;
    }
    out.push_back({Tok::End, src.size(), 0.0, {}});
    return out;
}

std::optional<Expr::Function> function_named(const std::string& name) {
    if (name == "sqrt") return Expr::Function::Sqrt;
    if (name == "cos") return Expr::Function::Cos;
    if (name == "sin") return Expr::Function::Sin;
    if (name == "exp") return Expr::Function::Exp;
    return std::nullopt;
}

class Parser {
  public:
    Parser(std::vector<Token> tokens, ParseMode mode) : toks_(std::move(tokens)), mode_(mode) {}

    Expr parse() {
        Expr e = sum();
        if (peek().kind == Tok::RParen) {
            syntax_error(peek().pos, "unbalanced ')'");
        }
        if (peek().kind != Tok::End) {
            syntax_error(peek().pos, "unexpected token");
        }
        return e;
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    bool starts_atom() const {
        const Tok k = peek().kind;
        return k == Tok::Number || k == Tok::Name || k == Tok::LParen;
    }

    Expr sum() {
        Expr lhs = product();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Tok op = next().kind;
            Expr rhs = product();
            lhs = Expr::binary(op == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Expr product() {
        Expr lhs = unary();
        for (;;) {
            if (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
                const Tok op = next().kind;
                Expr rhs = unary();
                lhs = Expr::binary(op == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div, std::move(lhs), std::move(rhs));
            } else if (starts_atom()) {
                Expr rhs = power();
                lhs = Expr::binary(Expr::Kind::Mul, std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    Expr unary() {
        if (peek().kind == Tok::Minus) {
            next();
            return Expr::negate(unary());
        }
        if (peek().kind == Tok::Plus) {
            next();
            return unary();
        }
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (peek().kind == Tok::Caret) {
            next();
            return Expr::binary(Expr::Kind::Pow, std::move(base), unary());
        }
        return base;
    }

    void close_paren() {
        if (peek().kind == Tok::RParen) {
            next();
            return;
        }
        if (peek().kind == Tok::End && mode_ == ParseMode::Lenient) {
            return;
        }
        syntax_error(peek().pos, "expected ')'");
    }

    Expr atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: next(); return Expr::number(t.number);
            case Tok::LParen: {
                next();
                Expr inner = sum();
                close_paren();
                return inner;
            }
            case Tok::Name: {
                next();
                if (auto f = function_named(t.text)) {
                    if (peek().kind != Tok::LParen) {
                        syntax_error(peek().pos, "expected '(' after " + t.text);
                    }
                    next();
                    Expr arg = sum();
                    close_paren();
                    return Expr::call(*f, std::move(arg));
                }
                if (t.text == "pi") return Expr::constant(Expr::Constant::Pi);
                if (t.text == "e") return Expr::constant(Expr::Constant::E);
                if (t.text == "i") return Expr::constant(Expr::Constant::I);
                return Expr::parameter(t.text);
            }
            case Tok::End: syntax_error(t.pos, "unexpected end of expression");
            default: syntax_error(t.pos, "unexpected token");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ParseMode mode_;
};

int precedence(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Negate: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print(e, out);
    if (wrap) out += ')';
}

void print(const Expr& e, std::string& out) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Number: out += format_number(e.value()); return;
        case K::Constant:
            out += e.constant_value() == Expr::Constant::Pi ? "pi" : e.constant_value() == Expr::Constant::E ? "e" : "i";
            return;
        case K::Parameter: out += e.name(); return;
        case K::Negate:
            out += '-';
            print_wrapped(e.lhs(), precedence(e.lhs()) < 3, out);
            return;
        case K::Call: {
            static constexpr std::array<const char*, 4> names{"sqrt", "cos", "sin", "exp"};
            out += names[static_cast<int>(e.function())];
            out += '(';
            print(e.lhs(), out);
            out += ')';
            return;
        }
        case K::Pow:
            print_wrapped(e.lhs(), precedence(e.lhs()) < 5, out);
            out += '^';
            print_wrapped(e.rhs(), precedence(e.rhs()) < 3, out);
            return;
        default: {
            const int p = precedence(e);
            print_wrapped(e.lhs(), precedence(e.lhs()) < p, out);
            out += e.kind() == K::Add ? "+" : e.kind() == K::Sub ? "-" : e.kind() == K::Mul ? "*" : "/";
            print_wrapped(e.rhs(), precedence(e.rhs()) <= p, out);
            return;
        }
    }
}

void collect(const Expr& e, std::set<std::string>& out) {
    switch (e.kind()) {
        case Expr::Kind::Parameter: out.insert(e.name()); return;
        case Expr::Kind::Number:
        case Expr::Kind::Constant: return;
        case Expr::Kind::Negate:
        case Expr::Kind::Call: collect(e.lhs(), out); return;
        default:
            collect(e.lhs(), out);
            collect(e.rhs(), out);
    }
}

}  // namespace

Expr parse_expr(std::string_view source, ParseMode mode) {
    const std::string decoded = decode_entities(source);
    Parser parser(tokenize(decoded), mode);
    return parser.parse();
}

std::complex<double> eval_expr(const Expr& e, const Bindings& bindings) {
    using K = Expr::Kind;
    using C = std::complex<double>;
    switch (e.kind()) {
        case K::Number: return e.value();
        case K::Constant:
            switch (e.constant_value()) {
                case Expr::Constant::Pi: return std::numbers::pi;
                case Expr::Constant::E: return std::numbers::e;
                case Expr::Constant::I: return C{0.0, 1.0};
            }
            break;
        case K::Parameter: {
            auto it = bindings.find(e.name());
            if (it == bindings.end()) {
                it = bindings.find(canonical_parameter_name(e.name()));
            }
            if (it == bindings.end()) {
                throw Error(ErrorKind::UnboundParameter, e.name());
            }
            return it->second;
        }
        case K::Negate: return -eval_expr(e.lhs(), bindings);
        case K::Call: {
            const C arg = eval_expr(e.lhs(), bindings);
            const bool real = arg.imag() == 0.0;
            switch (e.function()) {
                case Expr::Function::Sqrt:
                    return real && arg.real() >= 0.0 ? C{std::sqrt(arg.real())} : std::sqrt(arg);
                case Expr::Function::Cos: return real ? C{std::cos(arg.real())} : std::cos(arg);
                case Expr::Function::Sin: return real ? C{std::sin(arg.real())} : std::sin(arg);
                case Expr::Function::Exp: return real ? C{std::exp(arg.real())} : std::exp(arg);
            }
            break;
        }
        case K::Add: return eval_expr(e.lhs(), bindings) + eval_expr(e.rhs(), bindings);
        case K::Sub: return eval_expr(e.lhs(), bindings) - eval_expr(e.rhs(), bindings);
        case K::Mul: return eval_expr(e.lhs(), bindings) * eval_expr(e.rhs(), bindings);
        case K::Div: {
            const C den = eval_expr(e.rhs(), bindings);
            if (den == C{}) {
                throw Error(ErrorKind::DomainError, "division by zero");
            }
            return eval_expr(e.lhs(), bindings) / den;
        }
        case K::Pow: {
            const C exponent = eval_expr(e.rhs(), bindings);
            if (e.lhs().kind() == K::Constant && e.lhs().constant_value() == Expr::Constant::E) {
                return std::exp(exponent);
            }
            const C base = eval_expr(e.lhs(), bindings);
            if (base.imag() == 0.0 && exponent.imag() == 0.0 && base.real() >= 0.0) {
                return std::pow(base.real(), exponent.real());
            }
            if (base == C{}) {
                if (exponent.real() > 0.0) return C{};
                throw Error(ErrorKind::DomainError, "zero raised to a non-positive power");
            }
            return std::pow(base, exponent);
        }
    }
    throw Error(ErrorKind::ExpressionError, "malformed expression tree");
}

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

std::set<std::string> free_parameters(const Expr& e) {
    std::set<std::string> out;
    collect(e, out);
    return out;
}

std::string decode_entities(std::string_view text) {
    static constexpr std::array<std::pair<std::string_view, char32_t>, 11> kNamed{{
        {"amp", U'&'},
        {"lt", U'<'},
        {"gt", U'>'},
        {"quot", U'"'},
        {"apos", U'\''},
        {"pi", U'π'},
        {"theta", U'θ'},
        {"phi", U'φ'},
        {"alpha", U'α'},
        {"beta", U'β'},
        {"lambda", U'λ'},
    }};
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '&') {
            const auto semi = text.find(';', i);
            if (semi != std::string_view::npos && semi - i <= 10) {
                const std::string_view body = text.substr(i + 1, semi - i - 1);
                std::optional<char32_t> cp;
                if (body.size() > 1 && body[0] == '#') {
                    unsigned long v = 0;
                    const bool hex = body[1] == 'x' || body[1] == 'X';
                    const auto digits = body.substr(hex ? 2 : 1);
                    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, hex ? 16 : 10);
                    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
                        cp = static_cast<char32_t>(v);
                    }
                } else {
                    for (const auto& [name, code] : kNamed) {
                        if (name == body) {
                            cp = code;
                        }
                    }
                }
                if (cp) {
                    out += encode_utf8(*cp);
                    i = semi + 1;
                    continue;
                }
            }
        }
        out += text[i++];
    }
    return out;
}

std::string canonical_parameter_name(std::string_view name) {
    std::size_t pos = 0;
    if (!name.empty() && static_cast<unsigned char>(name[0]) >= 0x80) {
        const char32_t cp = decode_utf8(name, pos);
        if (pos == name.size()) {
            const auto spelled = greek_name(cp);
            if (!spelled.empty()) {
                return std::string(spelled);
            }
        }
    }
    return std::string(name);
}

}  // namespace qisxml
