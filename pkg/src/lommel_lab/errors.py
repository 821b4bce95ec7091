"""Exception hierarchy.

Every library error carries an ``exit_code`` so the CLI can map failures to
its documented exit statuses without a lookup table.
"""

from __future__ import annotations


class LommelLabError(Exception):
    exit_code = 3


class ParameterError(LommelLabError, ValueError):
    """A parameter sits on (or within the guard band of) a pole."""

    exit_code = 1


class PoleAtNonpositiveInteger(ParameterError):
    pass


class BadLowerParameter(ParameterError):
    pass


class ParameterPole(ParameterError):
    pass


class NumeratorPole(ParameterError):
    pass


class ZeroNormalizer(ParameterError):
    pass


class DomainError(LommelLabError, ValueError):
    """An argument lies outside the operation's domain."""

    exit_code = 2


class ArgumentOutOfDomain(DomainError):
    pass


class DegenerateParameters(DomainError):
    pass


class ConvergenceError(LommelLabError, ArithmeticError):
    exit_code = 3


class NoConvergence(ConvergenceError):
    pass


class ToleranceNotReached(ConvergenceError):
    """Quadrature hit its level cap; ``result`` holds the best estimate."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NonFiniteSample(ConvergenceError):
    pass


class SignChangeMissing(ConvergenceError):
    pass


class NotInBracketedRegion(LommelLabError):
    exit_code = 4
