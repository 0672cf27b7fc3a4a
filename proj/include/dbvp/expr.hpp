#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dbvp::expr {

enum class Variable { t, u };

/// Which of t and u an expression may reference. a(t) sources use `t_only()`.
struct AllowedVariables {
    bool t = true;
    bool u = true;

    static constexpr AllowedVariables t_only() { return {true, false}; }
    static constexpr AllowedVariables t_and_u() { return {true, true}; }
};

enum class Function { sin, cos, exp, log, sqrt, abs, min, max };

struct Node {
    enum class Kind { number, variable, pi, negate, binary, call };

    Kind kind = Kind::number;
    double number = 0.0;
    Variable variable = Variable::t;
    char op = 0;  // one of + - * / ^ for Kind::binary
    Function function = Function::sin;
    std::vector<std::shared_ptr<const Node>> args;
};

/// Immutable parsed expression. Copies share the tree, so an Expr can be
/// handed to any number of threads.
class Expr {
public:
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    /// Throws EvalError for division by zero, log/sqrt outside their domain,
    /// a negative base with a non-integer exponent, or any non-finite result.
    /// Throws UnboundVariable when u is referenced but not supplied.
    double eval(double t, std::optional<double> u = std::nullopt) const;

    bool uses(Variable v) const;
    const Node& root() const noexcept { return *root_; }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    std::shared_ptr<const Node> root_;
};

/// Precedence, tightest first: ^ (right-assoc), unary -, * / (left), + - (left).
/// Throws SyntaxError (with byte offset), UnknownIdentifier or ForbiddenVariable.
Expr parse(std::string_view source, AllowedVariables allowed = AllowedVariables::t_and_u());

inline double eval(const Expr& e, double t, std::optional<double> u = std::nullopt) { return e.eval(t, u); }

/// Fully parenthesized text that parses back to an identical tree.
std::string to_string(const Expr& e);

}  // namespace dbvp::expr
