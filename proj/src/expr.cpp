#include "dbvp/expr.hpp"

#include "dbvp/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>

namespace dbvp::expr {

namespace {

using NodePtr = std::shared_ptr<const Node>;

struct FunctionInfo {
    std::string_view name;
    Function function;
    std::size_t arity;
};

constexpr std::array<FunctionInfo, 8> kFunctions{{
    {"sin", Function::sin, 1},
    {"cos", Function::cos, 1},
    {"exp", Function::exp, 1},
    {"log", Function::log, 1},
    {"sqrt", Function::sqrt, 1},
    {"abs", Function::abs, 1},
    {"min", Function::min, 2},
    {"max", Function::max, 2},
}};

const FunctionInfo* find_function(std::string_view name) {
    for (const auto& f : kFunctions)
        if (f.name == name) return &f;
    return nullptr;
}

std::string_view function_name(Function fn) {
    for (const auto& f : kFunctions)
        if (f.function == fn) return f.name;
    return "?";
}

struct Token {
    enum class Kind { number, identifier, op, lparen, rparen, comma, end };
    Kind kind;
    std::size_t offset;
    std::string_view text;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ == src_.size()) return {Token::Kind::end, start, {}};

        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(start);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            return {Token::Kind::identifier, start, src_.substr(start, pos_ - start)};
        }
        ++pos_;
        switch (c) {
        case '+': case '-': case '*': case '/': case '^':
            return {Token::Kind::op, start, src_.substr(start, 1)};
        case '(':
            return {Token::Kind::lparen, start, src_.substr(start, 1)};
        case ')':
            return {Token::Kind::rparen, start, src_.substr(start, 1)};
        case ',':
            return {Token::Kind::comma, start, src_.substr(start, 1)};
        default:
            throw SyntaxError(std::string("unexpected character '") + c + "'", start);
        }
    }

private:
    Token lex_number(std::size_t start) {
        auto digits = [&] {
            std::size_t count = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++count;
            }
            return count;
        };
        std::size_t mantissa = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) throw SyntaxError("malformed number", start);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) throw SyntaxError("malformed exponent", start);
        }
        const std::string_view text = src_.substr(start, pos_ - start);
        double value = 0.0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value))
            throw SyntaxError("number out of range", start);
        return {Token::Kind::number, start, text, value};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// Pratt parser. Binding powers: + - (1,2), * / (3,4), prefix - (_,5), ^ (8,7).
class Parser {
public:
    Parser(std::string_view src, AllowedVariables allowed) : lexer_(src), allowed_(allowed) {
        advance();
    }

    NodePtr parse_all() {
        if (current_.kind == Token::Kind::end) throw SyntaxError("empty expression", current_.offset);
        NodePtr root = parse_expression(0);
        if (current_.kind != Token::Kind::end)
            throw SyntaxError("unexpected '" + std::string(current_.text) + "'", current_.offset);
        return root;
    }

private:
    void advance() { current_ = lexer_.next(); }

    void expect(Token::Kind kind, const char* what) {
        if (current_.kind != kind) throw SyntaxError(std::string("expected ") + what, current_.offset);
        advance();
    }

    static std::pair<int, int> infix_power(char op) {
        switch (op) {
        case '+': case '-': return {1, 2};
        case '*': case '/': return {3, 4};
        case '^': return {8, 7};
        default: return {-1, -1};
        }
    }

    NodePtr parse_expression(int min_power) {
        NodePtr lhs = parse_prefix();
        while (current_.kind == Token::Kind::op) {
            const char op = current_.text.front();
            const auto [left, right] = infix_power(op);
            if (left < min_power) break;
            advance();
            NodePtr rhs = parse_expression(right);
            auto node = std::make_shared<Node>();
            node->kind = Node::Kind::binary;
            node->op = op;
            node->args = {std::move(lhs), std::move(rhs)};
            lhs = std::move(node);
        }
        return lhs;
    }

    NodePtr parse_prefix() {
        const Token tok = current_;
        switch (tok.kind) {
        case Token::Kind::number: {
            advance();
            auto node = std::make_shared<Node>();
            node->kind = Node::Kind::number;
            node->number = tok.number;
            return node;
        }
        case Token::Kind::op:
            if (tok.text == "-") {
                advance();
                auto node = std::make_shared<Node>();
                node->kind = Node::Kind::negate;
                node->args = {parse_expression(5)};
                return node;
            }
            throw SyntaxError("unexpected operator '" + std::string(tok.text) + "'", tok.offset);
        case Token::Kind::lparen: {
            advance();
            NodePtr inner = parse_expression(0);
            expect(Token::Kind::rparen, "')'");
            return inner;
        }
        case Token::Kind::identifier:
            advance();
            return parse_identifier(tok);
        case Token::Kind::end:
            throw SyntaxError("unexpected end of expression", tok.offset);
        default:
            throw SyntaxError("unexpected '" + std::string(tok.text) + "'", tok.offset);
        }
    }

    NodePtr parse_identifier(const Token& tok) {
        auto node = std::make_shared<Node>();
        if (tok.text == "t" || tok.text == "u") {
            const bool is_t = tok.text == "t";
            if ((is_t && !allowed_.t) || (!is_t && !allowed_.u))
                throw ForbiddenVariable("variable '" + std::string(tok.text) + "' is not allowed here (offset " +
                                        std::to_string(tok.offset) + ")");
            node->kind = Node::Kind::variable;
            node->variable = is_t ? Variable::t : Variable::u;
            return node;
        }
        if (tok.text == "pi") {
            node->kind = Node::Kind::pi;
            return node;
        }
        const FunctionInfo* fn = find_function(tok.text);
        if (!fn)
            throw UnknownIdentifier("unknown identifier '" + std::string(tok.text) + "' at offset " +
                                    std::to_string(tok.offset));
        if (current_.kind != Token::Kind::lparen)
            throw SyntaxError("expected '(' after " + std::string(fn->name), current_.offset);
        advance();
        node->kind = Node::Kind::call;
        node->function = fn->function;
        node->args.push_back(parse_expression(0));
        while (current_.kind == Token::Kind::comma) {
            advance();
            node->args.push_back(parse_expression(0));
        }
        if (node->args.size() != fn->arity)
            throw SyntaxError(std::string(fn->name) + " takes " + std::to_string(fn->arity) + " argument(s)",
                              tok.offset);
        expect(Token::Kind::rparen, "')'");
        return node;
    }

    Lexer lexer_;
    AllowedVariables allowed_;
    Token current_{Token::Kind::end, 0, {}};
};

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw EvalError(std::string(what) + " produced a non-finite value");
    return v;
}

double power(double base, double exponent) {
    if (base < 0.0 && exponent != std::floor(exponent))
        throw EvalError("negative base with non-integer exponent");
    if (base == 0.0 && exponent < 0.0) throw EvalError("division by zero in 0^negative");
    return checked(std::pow(base, exponent), "^");
}

double evaluate(const Node& n, double t, std::optional<double> u) {
    switch (n.kind) {
    case Node::Kind::number:
        return n.number;
    case Node::Kind::pi:
        return std::numbers::pi;
    case Node::Kind::variable:
        if (n.variable == Variable::t) return t;
        if (!u) throw UnboundVariable("variable 'u' is not bound");
        return *u;
    case Node::Kind::negate:
        return -evaluate(*n.args[0], t, u);
    case Node::Kind::binary: {
        const double x = evaluate(*n.args[0], t, u);
        const double y = evaluate(*n.args[1], t, u);
        switch (n.op) {
        case '+': return checked(x + y, "+");
        case '-': return checked(x - y, "-");
        case '*': return checked(x * y, "*");
        case '/':
            if (y == 0.0) throw EvalError("division by zero");
            return checked(x / y, "/");
        default: return power(x, y);
        }
    }
    case Node::Kind::call: {
        const double x = evaluate(*n.args[0], t, u);
        switch (n.function) {
        case Function::sin: return std::sin(x);
        case Function::cos: return std::cos(x);
        case Function::exp: return checked(std::exp(x), "exp");
        case Function::log:
            if (!(x > 0.0)) throw EvalError("log of a non-positive value");
            return std::log(x);
        case Function::sqrt:
            if (x < 0.0) throw EvalError("sqrt of a negative value");
            return std::sqrt(x);
        case Function::abs: return std::abs(x);
        case Function::min: return std::min(x, evaluate(*n.args[1], t, u));
        case Function::max: return std::max(x, evaluate(*n.args[1], t, u));
        }
    }
    }
    throw EvalError("corrupt expression tree");
}

bool node_uses(const Node& n, Variable v) {
    if (n.kind == Node::Kind::variable) return n.variable == v;
    for (const auto& a : n.args)
        if (node_uses(*a, v)) return true;
    return false;
}

bool same_tree(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    switch (a.kind) {
    case Node::Kind::number: if (a.number != b.number) return false; break;
    case Node::Kind::variable: if (a.variable != b.variable) return false; break;
    case Node::Kind::binary: if (a.op != b.op) return false; break;
    case Node::Kind::call: if (a.function != b.function) return false; break;
    default: break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same_tree(*a.args[i], *b.args[i])) return false;
    return true;
}

void print(const Node& n, std::string& out) {
    switch (n.kind) {
    case Node::Kind::number: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", n.number);
        out += buf;
        break;
    }
    case Node::Kind::pi: out += "pi"; break;
    case Node::Kind::variable: out += n.variable == Variable::t ? "t" : "u"; break;
    case Node::Kind::negate:
        out += "(-";
        print(*n.args[0], out);
        out += ')';
        break;
    case Node::Kind::binary:
        out += '(';
        print(*n.args[0], out);
        out += ' ';
        out += n.op;
        out += ' ';
        print(*n.args[1], out);
        out += ')';
        break;
    case Node::Kind::call:
        out += function_name(n.function);
        out += '(';
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            print(*n.args[i], out);
        }
        out += ')';
        break;
    }
}

}  // namespace

double Expr::eval(double t, std::optional<double> u) const {
    if (!std::isfinite(t) || (u && !std::isfinite(*u))) throw EvalError("non-finite input");
    return checked(evaluate(*root_, t, u), "expression");
}

bool Expr::uses(Variable v) const { return node_uses(*root_, v); }

bool operator==(const Expr& a, const Expr& b) { return same_tree(*a.root_, *b.root_); }

Expr parse(std::string_view source, AllowedVariables allowed) {
    return Expr(Parser(source, allowed).parse_all());
}

std::string to_string(const Expr& e) {
    std::string out;
    print(e.root(), out);
    return out;
}

}  // namespace dbvp::expr
