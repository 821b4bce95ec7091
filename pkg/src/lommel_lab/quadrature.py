"""Double-exponential quadrature on (0, 1) with a singular right endpoint.

Nodes come from the tanh-sinh map ``t = sigma(pi*sinh(u))`` with ``sigma``
the logistic function, so ``1 - t = sigma(-pi*sinh(u))`` is available to
full relative precision right up to the endpoint.  Integrands that need the
distance to ``t = 1`` (anything carrying ``(1-t)**alpha``) should take it
from the second argument rather than recomputing ``1 - t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, NonFiniteSample, ToleranceNotReached

MIN_TOL = 1e-13
MAX_LEVELS = 12
# |u| beyond which sigma(-pi*sinh(u)) underflows
_U_MAX = math.asinh(700.0 / math.pi)
# node envelope below which a sample cannot matter
_NEGLIGIBLE = 1e-30
_BELOW_ONE = 1.0 - 2.0**-53


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool = True


def _logistic(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    e = np.exp(-x[pos])
    out[pos] = 1.0 / (1.0 + e)
    e = np.exp(x[~pos])
    out[~pos] = e / (1.0 + e)
    return out


def _nodes(level: int):
    """Abscissae u of the given refinement level (only the new ones)."""
    h = 2.0**-level
    if level == 0:
        k = np.arange(-math.floor(_U_MAX), math.floor(_U_MAX) + 1, dtype=float)
    else:
        m = math.floor(_U_MAX / h)
        k = np.arange(-m, m + 1, dtype=float)
        k = k[(k.astype(np.int64) % 2) != 0]
    return k * h, h


class _Panel:
    """One subinterval [lo, hi] of (0, 1); hi == 1 carries the singularity."""

    def __init__(self, lo: float, hi: float, alpha: float):
        self.lo = lo
        self.hi = hi
        self.width = hi - lo
        self.alpha = alpha
        self.singular = hi == 1.0

    def samples(self, level: int):
        u, h = _nodes(level)
        arg = math.pi * np.sinh(u)
        left = _logistic(arg)      # (t - lo) / width
        right = _logistic(-arg)    # (hi - t) / width
        w = self.width * left * right * math.pi * np.cosh(u)
        t = self.lo + self.width * left
        if self.singular:
            s = self.width * right
        else:
            s = 1.0 - t
        keep = (t > 0.0) & (s > 0.0)
        # t may round to 1 while s is still resolved; stay strictly inside
        t = np.minimum(t[keep], _BELOW_ONE)
        s, w = s[keep], w[keep]
        # envelope of |w f| assuming f ~ s**alpha near t=1
        env = w * s ** min(self.alpha, 0.0) if self.singular else w
        keep = env > _NEGLIGIBLE
        return t[keep], s[keep], w[keep], h


def integrate_singular(
    f: Callable[..., float],
    alpha: float = 0.0,
    tol: float = 1e-12,
    *,
    complement: bool = False,
    apply_weight: bool = False,
    breakpoints: Optional[Sequence[float]] = None,
    max_levels: int = MAX_LEVELS,
) -> QuadResult:
    """Integrate over (0, 1) an integrand behaving like ``(1-t)**alpha`` at 1.

    Parameters
    ----------
    f : callable
        ``f(t)``, or ``f(t, s)`` with ``s = 1 - t`` when ``complement`` is
        true.  Never called at t = 0 or t = 1; nodes closer to 1 than one
        ulp are passed the largest float below 1 as ``t`` (``s`` stays
        exact), so a folded ``(1-t)**alpha`` without ``complement`` is only
        resolved to about ``eps**(1+alpha)``.
    alpha : float
        Exponent of the endpoint singularity, ``alpha > -1``.  By default
        ``f`` already carries the factor and ``alpha`` only shapes node
        pruning; with ``apply_weight=True`` the factor ``(1-t)**alpha`` is
        multiplied in here, from the accurate complement.
    tol : float
        Target on the level-to-level change, absolute for values below 1
        and relative above.  At least 1e-13.
    breakpoints : sequence of float, optional
        Interior points splitting (0, 1) into panels, e.g. zeros of an
        oscillatory factor.  Each panel gets the same treatment.

    Raises
    ------
    ToleranceNotReached
        After ``max_levels`` halvings of the step; ``exc.result`` holds the
        best estimate with ``converged=False``.
    NonFiniteSample
        If ``f`` returns inf or nan at a node.
    """
    if not alpha > -1.0:
        raise DomainError(f"alpha={alpha!r} must exceed -1")
    if not tol >= MIN_TOL:
        raise DomainError(f"tol={tol!r} below the {MIN_TOL} floor")
    cuts = sorted(b for b in (breakpoints or ()) if 0.0 < b < 1.0)
    edges = [0.0, *cuts, 1.0]
    panels = [_Panel(a, b, alpha) for a, b in zip(edges[:-1], edges[1:]) if b > a]

    def evaluate(t, s):
        v = f(t, s) if complement else f(t)
        if apply_weight:
            v *= s**alpha
        if not math.isfinite(v):
            raise NonFiniteSample(f"integrand returned {v!r} at t={t!r}")
        return v

    panel_tol = tol / len(panels)
    total = 0.0
    err_total = 0.0
    evals = 0
    converged = True
    for panel in panels:
        value, err, n, ok = _integrate_panel(panel, evaluate, panel_tol, max_levels)
        total += value
        err_total += err
        evals += n
        converged = converged and ok
    result = QuadResult(total, err_total, evals, converged)
    if not converged:
        raise ToleranceNotReached(
            f"tolerance {tol:g} not reached after {max_levels} levels "
            f"(estimate {err_total:.3g})",
            result,
        )
    return result


def _integrate_panel(panel: _Panel, evaluate, tol: float, max_levels: int):
    raw = 0.0   # sum of w*f over all nodes so far (unscaled by h)
    mag = 0.0
    evals = 0
    prev = None
    value = 0.0
    err = math.inf
    for level in range(max_levels + 1):
        t, s, w, h = panel.samples(level)
        for ti, si, wi in zip(t.tolist(), s.tolist(), w.tolist()):
            v = wi * evaluate(ti, si)
            raw += v
            mag += abs(v)
        evals += len(t)
        value = raw * h
        roundoff = 8.0 * 2.0**-53 * mag * h
        if prev is not None:
            err = abs(value - prev) + roundoff
            if level >= 3 and err <= tol * max(1.0, abs(value)):
                return value, err, evals, True
        prev = value
    return value, err, evals, False
