"""Solver and condition checks for the three-point delay boundary value problem

    u''(t) + lambda a(t) f(t, u(t - tau)) = 0,  0 <= t <= 1
    u(t) = beta u(eta),  -tau <= t <= 0
    u(1) = alpha u(eta)
"""

from ._core import (
    BvpParams,
    ConeConstants,
    ConfigError,
    DegenerateParams,
    DomainError,
    Error,
    EvalError,
    ExpressionSyntaxError,
    ForbiddenVariable,
    InvalidGrid,
    LengthMismatch,
    NegativeData,
    NonFiniteEvaluation,
    NotConverged,
    SingularJacobian,
    UnboundVariable,
    UnknownIdentifier,
    check,
    cone_constants,
    denom,
    evaluate,
    g_kernel,
    green,
    green_apply,
    newton,
    solve,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
