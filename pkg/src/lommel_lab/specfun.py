"""Gamma function and hypergeometric series.

Both series engines sum the defining power series term by term.  A binary64
pass runs first and carries a running rounding bound; when the bound says
the float result has lost too many digits to cancellation (the alternating
1F2 series at large negative argument is the usual culprit) the series is
re-summed with :mod:`decimal` at a precision chosen from the observed
cancellation, and rounded back to a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Sequence

from .errors import (
    ArgumentOutOfDomain,
    BadLowerParameter,
    NoConvergence,
    PoleAtNonpositiveInteger,
)

POLE_GUARD = 1e-12
SERIES_EPS = 1e-15
MAX_TERMS = 10_000
HYP2F1_MAX_ARG = 0.5 + 1e-9
HYP1F2_MAX_ARG = 25_000.0

_U = 2.0**-53
# relative accuracy demanded of a float pass before falling back to decimal
_FLOAT_TARGET = 1e-14
_EXT_EPS = Decimal("1e-21")
_EXT_GUARD_DIGITS = 22
_EXT_MAX_DIGITS = 420


def near_nonpositive_integer(x: float, guard: float = POLE_GUARD) -> bool:
    n = round(x)
    return n <= 0 and abs(x - n) < guard


def gamma(x: float) -> float:
    """Gamma function; raises at the poles 0, -1, -2, ... (guard 1e-12)."""
    if near_nonpositive_integer(x):
        raise PoleAtNonpositiveInteger(f"gamma pole at x={x!r}")
    return math.gamma(x)


def rgamma(x: float) -> float:
    """Reciprocal gamma, an entire function: exactly 0 inside the pole guard."""
    if near_nonpositive_integer(x):
        return 0.0
    return 1.0 / math.gamma(x)


@dataclass(frozen=True)
class HypTriple:
    """Parameters ``(a, b; c)`` of a hypergeometric function 2F1."""

    a: float
    b: float
    c: float

    @property
    def valid(self) -> bool:
        return not near_nonpositive_integer(self.c)


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    truncation_estimate: float
    # 0 when the binary64 pass was accepted, else the decimal precision used
    extended_digits: int = 0


def _check_lower(lower: Sequence[float]) -> None:
    for b in lower:
        if near_nonpositive_integer(b):
            raise BadLowerParameter(f"lower parameter {b!r} is a nonpositive integer")


def _float_pass(upper, lower, x, eps, max_terms, geometric_tail):
    t = 1.0
    s = 1.0
    abs_sum = 1.0
    round_bound = 2.0  # sum over k of (4k+2)|t_k|
    small = 0
    prev = 1.0
    n = 0
    while True:
        num = x
        for a in upper:
            num *= a + n
        den = float(n + 1)
        for b in lower:
            den *= b + n
        t = t * num / den
        n += 1
        s += t
        at = abs(t)
        abs_sum += at
        round_bound += (4 * n + 2) * at
        if at <= eps * abs(s):
            small += 1
        else:
            small = 0
        if small >= 3:
            ok = True
            if geometric_tail and at > 0.0:
                r = at / prev if prev > 0.0 else 0.0
                ok = r < 1.0 and at * r / (1.0 - r) <= eps * abs(s)
            if ok:
                break
        if n >= max_terms:
            raise NoConvergence(f"series did not converge in {max_terms} terms")
        prev = at
    # first neglected term
    num = x
    for a in upper:
        num *= a + n
    den = float(n + 1)
    for b in lower:
        den *= b + n
    nxt = abs(t * num / den)
    return s, n + 1, nxt, abs_sum, round_bound * _U


def _decimal_pass(upper, lower, x, digits, max_terms):
    with localcontext() as ctx:
        ctx.prec = digits
        up = [Decimal(a) for a in upper]
        lo = [Decimal(b) for b in lower]
        X = Decimal(x)
        t = Decimal(1)
        s = Decimal(1)
        abs_sum = Decimal(1)
        small = 0
        n = 0
        while small < 3:
            num = X
            for a in up:
                num *= a + n
            den = Decimal(n + 1)
            for b in lo:
                den *= b + n
            t = t * num / den
            n += 1
            s += t
            at = abs(t)
            abs_sum += at
            small = small + 1 if at <= _EXT_EPS * abs(s) else 0
            if n >= max_terms:
                raise NoConvergence(f"series did not converge in {max_terms} terms")
        num = X
        for a in up:
            num *= a + n
        den = Decimal(n + 1)
        for b in lo:
            den *= b + n
        nxt = abs(t * num / den)
        return s, n + 1, nxt, abs_sum


def _digits_for(abs_sum: float, value: float) -> int:
    ratio = abs_sum / value if value > 0.0 else 1e300
    return max(_EXT_GUARD_DIGITS, _EXT_GUARD_DIGITS + math.ceil(math.log10(max(ratio, 1.0))))


def _pfq(upper, lower, x, eps=SERIES_EPS, max_terms=MAX_TERMS, geometric_tail=False):
    s, n, nxt, abs_sum, err = _float_pass(upper, lower, x, eps, max_terms, geometric_tail)
    if err <= _FLOAT_TARGET * abs(s):
        return SeriesResult(s, n, nxt + err)
    digits = _digits_for(abs_sum, max(abs(s), err))
    while True:
        ds, n, dnxt, dabs = _decimal_pass(upper, lower, x, digits, max_terms)
        value = float(ds)
        need = _digits_for(float(dabs), abs(value))
        if need <= digits or digits >= _EXT_MAX_DIGITS:
            rounding = float(dabs) * 10.0 ** (-digits + 1)
            return SeriesResult(value, n, float(dnxt) + rounding, digits)
        digits = min(need + 5, _EXT_MAX_DIGITS)


def hyp2f1(p: HypTriple, x: float) -> SeriesResult:
    """Hypergeometric series 2F1(a, b; c; x) for |x| <= 1/2.

    Summation stops once three consecutive terms fall below 1e-15 times the
    partial sum; ``truncation_estimate`` is the first neglected term.
    """
    if not p.valid:
        raise BadLowerParameter(f"c={p.c!r} is a nonpositive integer")
    if not abs(x) <= HYP2F1_MAX_ARG:
        raise ArgumentOutOfDomain(f"hyp2f1 argument {x!r} outside |x| <= 1/2")
    return _pfq((p.a, p.b), (p.c,), x)


def hyp2f1_at_half(mu: float, nu: float) -> float:
    """Closed form of 2F1(1/2+nu, 1/2-nu; mu+1/2; 1/2)."""
    return (
        2.0 ** (0.5 - mu)
        * math.sqrt(math.pi)
        * gamma(mu + 0.5)
        * rgamma((mu + nu + 1.0) / 2.0)
        * rgamma((mu - nu + 1.0) / 2.0)
    )


def hyp1f2(a1: float, b1: float, b2: float, x: float) -> SeriesResult:
    """Generalized hypergeometric series 1F2(a1; b1, b2; x).

    Entire in ``x``; for large negative ``x`` the terms grow to roughly
    ``exp(2*sqrt(|x|))`` before decaying, so the decimal fallback does
    most of the work there.
    """
    _check_lower((b1, b2))
    if not abs(x) <= HYP1F2_MAX_ARG:
        raise ArgumentOutOfDomain(f"hyp1f2 argument {x!r} beyond |x| <= {HYP1F2_MAX_ARG}")
    max_terms = max(MAX_TERMS, int(10 * math.sqrt(abs(x))) + 1)
    return _pfq((a1,), (b1, b2), x, max_terms=max_terms)


def quadratic_transform_rhs(mu: float, nu: float, x: float) -> float:
    """2F1((mu+nu)/2, (mu-nu)/2; mu-1/2; 4x(1-x)) for x in (0, 1/2).

    The argument approaches 1 as x -> 1/2, so the series is stopped on a
    geometric tail bound (relative 1e-13) rather than the bare term test.
    """
    if not 0.0 < x < 0.5:
        raise ArgumentOutOfDomain(f"x={x!r} outside (0, 1/2)")
    c = mu - 0.5
    _check_lower((c,))
    y = 4.0 * x * (1.0 - x)
    gap = (1.0 - 2.0 * x) ** 2  # 1 - y without cancellation
    max_terms = max(MAX_TERMS, int(80.0 / gap) + 100)
    res = _pfq(((mu + nu) / 2.0, (mu - nu) / 2.0), (c,), y, eps=1e-13,
               max_terms=max_terms, geometric_tail=True)
    return res.value
