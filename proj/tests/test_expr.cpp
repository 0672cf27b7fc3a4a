#include "dbvp/error.hpp"
#include "dbvp/expr.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace dbvp::expr {
namespace {

double ev(const char* src, double t = 0.0, std::optional<double> u = std::nullopt) { return parse(src).eval(t, u); }

TEST(Parse, PrecedenceExamples) {
    EXPECT_EQ(ev("2+3*4"), 14.0);
    EXPECT_EQ(ev("u/(1+u)+1", 0.0, 1.0), 1.5);
    EXPECT_NEAR(ev("sin(pi*t)", 0.5), 1.0, 1e-15);
    EXPECT_EQ(ev("-t^2", 2.0), -4.0);
    EXPECT_EQ(ev("max(0, u-1)", 0.0, 0.5), 0.0);
}

TEST(Parse, Associativity) {
    EXPECT_EQ(ev("10-4-3"), 3.0);
    EXPECT_EQ(ev("64/8/2"), 4.0);
    EXPECT_EQ(ev("2^3^2"), 512.0);
    EXPECT_EQ(ev("2*-3"), -6.0);
    EXPECT_EQ(ev("--2"), 2.0);
    EXPECT_EQ(ev("2^-1"), 0.5);
    EXPECT_EQ(ev(" ( 1 + 2 ) * 3 "), 9.0);
}

TEST(Parse, NumbersAndFunctions) {
    EXPECT_EQ(ev("1e-3"), 1e-3);
    EXPECT_EQ(ev("2.5E+2"), 250.0);
    EXPECT_EQ(ev(".5"), 0.5);
    EXPECT_NEAR(ev("exp(1)"), std::numbers::e, 1e-15);
    EXPECT_EQ(ev("sqrt(16)"), 4.0);
    EXPECT_EQ(ev("abs(-3)"), 3.0);
    EXPECT_EQ(ev("min(2, 7)"), 2.0);
    EXPECT_NEAR(ev("log(exp(2))"), 2.0, 1e-15);
    EXPECT_NEAR(ev("cos(pi)"), -1.0, 1e-15);
}

TEST(Eval, DomainErrors) {
    EXPECT_THROW(ev("log(t)", 0.0), EvalError);
    EXPECT_THROW(ev("sqrt(t-1)", 0.0), EvalError);
    EXPECT_THROW(ev("(-8)^(1/3)"), EvalError);
    EXPECT_EQ(ev("(-2)^3"), -8.0);
    EXPECT_THROW(ev("0^(-1)"), EvalError);
    EXPECT_THROW(ev("exp(1000)"), EvalError);
}

TEST(Eval, ParserNeverEvaluates) {
    const auto e = parse("1/0");
    EXPECT_THROW(e.eval(0.0), EvalError);
}

TEST(Eval, UnboundVariable) {
    EXPECT_THROW(parse("u+1").eval(0.0), UnboundVariable);
    EXPECT_NO_THROW(parse("t+1").eval(0.0));
}

TEST(Parse, SyntaxErrorsCarryOffsets) {
    auto offset_of = [](const char* src) -> std::size_t {
        try {
            parse(src);
        } catch (const SyntaxError& e) {
            return e.offset();
        }
        ADD_FAILURE() << "no SyntaxError for " << src;
        return 0;
    };
    EXPECT_EQ(offset_of("1 + * 2"), 4u);
    EXPECT_EQ(offset_of("(1+2"), 4u);
    EXPECT_EQ(offset_of("1 2"), 2u);
    EXPECT_EQ(offset_of("3 $ 4"), 2u);
    EXPECT_EQ(offset_of(""), 0u);
    EXPECT_THROW(parse("sin(1, 2)"), SyntaxError);
    EXPECT_THROW(parse("max(1)"), SyntaxError);
}

TEST(Parse, IdentifierErrors) {
    EXPECT_THROW(parse("tan(t)"), UnknownIdentifier);
    EXPECT_THROW(parse("x + 1"), UnknownIdentifier);
    EXPECT_THROW(parse("u + t", AllowedVariables::t_only()), ForbiddenVariable);
    EXPECT_NO_THROW(parse("t + pi", AllowedVariables::t_only()));
}

TEST(Expr, UsesVariables) {
    const auto e = parse("sin(t) + 2");
    EXPECT_TRUE(e.uses(Variable::t));
    EXPECT_FALSE(e.uses(Variable::u));
    EXPECT_TRUE(parse("max(1, u)").uses(Variable::u));
}

TEST(ToString, FullyParenthesized) {
    EXPECT_EQ(to_string(parse("1+2*t")), "(1 + (2 * t))");
    EXPECT_EQ(to_string(parse("-u^2")), "(-(u ^ 2))");
    EXPECT_EQ(to_string(parse("max(t,pi)")), "max(t, pi)");
}

/// Random well-formed source text of bounded depth.
std::string random_source(std::mt19937_64& rng, int depth) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    if (depth == 0 || pick(4) == 0) {
        switch (pick(5)) {
            case 0: return "t";
            case 1: return "u";
            case 2: return "pi";
            case 3: return std::to_string(pick(20));
            default: return std::to_string(pick(1000) / 100.0);
        }
    }
    static const char* unary[] = {"sin", "cos", "exp", "log", "sqrt", "abs"};
    static const char* binary[] = {"+", "-", "*", "/", "^"};
    switch (pick(4)) {
        case 0: return "-" + random_source(rng, depth - 1);
        case 1: return std::string(unary[pick(6)]) + "(" + random_source(rng, depth - 1) + ")";
        case 2:
            return std::string(pick(2) ? "min(" : "max(") + random_source(rng, depth - 1) + ", " +
                   random_source(rng, depth - 1) + ")";
        default:
            return "(" + random_source(rng, depth - 1) + " " + binary[pick(5)] + " " + random_source(rng, depth - 1) +
                   ")";
    }
}

TEST(Fuzz, RandomExpressionsRoundTripAndEvaluate) {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> var(0.0, 10.0);
    int evaluated = 0;
    for (int k = 0; k < 1000; ++k) {
        const std::string src = random_source(rng, 6);
        const Expr e = parse(src);
        const Expr back = parse(to_string(e));
        EXPECT_TRUE(e == back) << src;
        for (int j = 0; j < 3; ++j) {
            try {
                const double v = e.eval(var(rng), var(rng));
                EXPECT_TRUE(std::isfinite(v));
                ++evaluated;
            } catch (const EvalError&) {
            }
        }
    }
    EXPECT_GT(evaluated, 500);
}

TEST(Fuzz, StructuralEqualityDistinguishes) {
    EXPECT_FALSE(parse("1+t") == parse("t+1"));
    EXPECT_TRUE(parse("1 + t") == parse("(1)+(t)"));
}

}  // namespace
}  // namespace dbvp::expr
