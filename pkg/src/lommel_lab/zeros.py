"""Parameter-region classification and real zeros of s_{mu,nu}.

Regions are open sets cut out by straight lines in the (mu, |nu|) plane.
Each is described by a list of affine margins that are positive inside; a
point whose smallest margin is within ``BAND`` of zero is reported as a
boundary point instead of being assigned to either side.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

from .errors import (
    DegenerateParameters,
    DomainError,
    NonFiniteSample,
    NotInBracketedRegion,
    SignChangeMissing,
)
from .lommel import LommelParams, lommel_entire

BAND = 1e-9
INTEGER_GUARD = 1e-9
BISECTION_WIDTH = 1e-12


class KernelProfile(enum.Enum):
    DECREASING_TO_ZERO = "decreasingtozero"
    INCREASING_TO_PLUS_INF = "increasingtoplusinf"
    DECREASING_TO_MINUS_INF = "decreasingtominusinf"
    NOT_MONOTONE = "notmonotone"
    BOUNDARY = "boundary"


class RegionClass(enum.Enum):
    REAL_ZEROS_SINE = "realzerossine"
    REAL_ZEROS_COSINE = "realzeroscosine"
    POSITIVE_NO_REAL_ZEROS = "positivenorealzeros"
    COR0_SEGMENT = "cor0segment"
    UNCLASSIFIED = "unclassified"
    BOUNDARY = "boundary"


class LPClass(enum.Enum):
    IN_REGION = "inregion"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class ZeroRecord:
    k: int
    bracket_lo: float
    bracket_hi: float
    root: float
    residual: float
    provenance: RegionClass


@dataclass(frozen=True)
class HurwitzInput:
    a: float
    b: float
    c: float

    def validate(self) -> None:
        # only the floor arguments matter to the table; a-b and c-a-b may be
        # integers (e.g. (2.3, 0.4, 1.7) has c-a-b = -1 and plainly no zeros)
        for name, v in (("a", self.a), ("b", self.b), ("c", self.c)):
            if abs(v - round(v)) < INTEGER_GUARD:
                raise DegenerateParameters(f"{name}={v!r} is (nearly) an integer")


# --- margins ---------------------------------------------------------------

def _margins_sine(mu, nu):
    n = abs(nu)
    return (mu + 0.5, 0.5 - mu, n - abs(mu), mu + 1.0 - n)


def _margins_cosine(mu, nu):
    n = abs(nu)
    return (mu + 1.5, -0.5 - mu, n - abs(mu + 1.0), mu + 2.0 - n)


def _margins_positive(mu, nu):
    n = abs(nu)
    return (mu - 0.5, n, mu - n)


def _margins_increasing(mu, nu):
    n = abs(nu)
    return (0.5 - mu, n - abs(mu), mu + 1.0 - n)


def _margins_decreasing_neg(mu, nu):
    n = abs(nu)
    return (0.5 - mu, n - (mu + 1.0), mu + 2.0 - n)


_ZERO_REGIONS = (
    (RegionClass.REAL_ZEROS_SINE, _margins_sine),
    (RegionClass.REAL_ZEROS_COSINE, _margins_cosine),
    (RegionClass.POSITIVE_NO_REAL_ZEROS, _margins_positive),
)

_KERNEL_REGIONS = (
    (KernelProfile.DECREASING_TO_ZERO, _margins_positive),
    (KernelProfile.INCREASING_TO_PLUS_INF, _margins_increasing),
    (KernelProfile.DECREASING_TO_MINUS_INF, _margins_decreasing_neg),
)


def _locate(regions, mu, nu, band):
    """Label of the region strictly containing (mu, nu), None if outside
    all of them, or the string "boundary"."""
    hit = None
    for label, margins in regions:
        m = min(margins(mu, nu))
        if abs(m) <= band:
            return "boundary"
        if m > band:
            hit = label
    return hit


# --- classification --------------------------------------------------------

def hurwitz_count(h: HurwitzInput) -> int:
    """Number of zeros of 2F1(a, b; c; x) on 0 < x < 1, from the sign-pattern table."""
    h.validate()
    a, b, c = h.a, h.b, h.c
    if c > a + b:
        # 2F1(a,b;c;x) = (1-x)**(c-a-b) 2F1(c-a,c-b;c;x), same zeros
        a, b = c - a, c - b
    if b > a:
        a, b = b, a
    fb = math.floor(-b)
    fc = math.floor(-c)
    if a > 0 and b > 0:
        if c > 0:
            return 0
        return (1 + (-1) ** fc) // 2
    if a > 0:  # b < 0
        if c > 0:
            return 1 + fb
        if fb > fc:
            return fb - fc
        return (1 - (-1) ** (fb + fc)) // 2
    # a, b < 0 forces c <= a + b < 0
    return (1 + (-1) ** (math.floor(-a) + fb + fc)) // 2


def kernel_monotonicity(p: LommelParams) -> KernelProfile:
    """Monotonicity class of f_{mu,nu} on (0, 1), for mu > -1/2."""
    if not p.mu > -0.5:
        raise DomainError(f"kernel monotonicity needs mu > -1/2, got {p.mu}")
    hit = _locate(_KERNEL_REGIONS, p.mu, p.nu, BAND)
    if hit == "boundary":
        return KernelProfile.BOUNDARY
    return hit or KernelProfile.NOT_MONOTONE


def _zero_region(mu: float, nu: float, band: float = BAND) -> RegionClass:
    if abs(mu) <= band and abs(nu) <= band:
        return RegionClass.COR0_SEGMENT
    hit = _locate(_ZERO_REGIONS, mu, nu, band)
    if hit == "boundary":
        return RegionClass.BOUNDARY
    return hit or RegionClass.UNCLASSIFIED


def region_classify(p: LommelParams) -> RegionClass:
    """Which real-zero statement, if any, covers s_{mu,nu}."""
    p.require_series()
    return _zero_region(p.mu, p.nu)


def lp_plus_region(b1: float, b2: float) -> LPClass:
    """Membership of 1F2(1; b1, b2; -x) in the real-zero (LP+) regions.

    Derived from the sine/cosine zero regions through
    mu = b1 + b2 - 3, nu = b2 - b1.
    """
    mu, nu = b1 + b2 - 3.0, b2 - b1
    # margins are ~sqrt(2) times the Euclidean distance in the (b1, b2) plane
    hit = _locate(_ZERO_REGIONS[:2], mu, nu, math.sqrt(2.0) * BAND)
    if hit == "boundary":
        return LPClass.BOUNDARY
    return LPClass.IN_REGION if hit else LPClass.OUTSIDE


# --- brackets and zeros ----------------------------------------------------

def brackets_for(p: LommelParams, k_max: int) -> List[Tuple[int, float, float]]:
    """Intervals each holding exactly one positive zero of s_{mu,nu}."""
    if k_max < 1:
        raise DomainError(f"k_max={k_max!r} must be positive")
    cls = region_classify(p)
    if cls in (RegionClass.REAL_ZEROS_SINE, RegionClass.COR0_SEGMENT):
        return [(k, k * math.pi, (k + 1) * math.pi) for k in range(1, k_max + 1)]
    if cls is RegionClass.REAL_ZEROS_COSINE:
        return [
            (k, (2 * k + 1) * math.pi / 2.0, (2 * k + 3) * math.pi / 2.0)
            for k in range(0, k_max + 1)
        ]
    raise NotInBracketedRegion(
        f"(mu, nu)=({p.mu}, {p.nu}) is {cls.value}; no bracket guarantee"
    )


def bisect_root(g: Callable[[float], float], lo: float, hi: float,
                width: float = BISECTION_WIDTH) -> float:
    glo = g(lo)
    ghi = g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if (glo > 0) == (ghi > 0):
        raise SignChangeMissing(f"no sign change on [{lo}, {hi}]")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        gm = g(mid)
        if gm == 0.0:
            return mid
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_zeros(p: LommelParams, k_max: int) -> List[ZeroRecord]:
    """Refine the unique zero in every bracket by bisection to 1e-12."""
    cls = region_classify(p)
    records = []
    for k, lo, hi in brackets_for(p, k_max):
        g = lambda z: lommel_entire(p, z)  # noqa: E731
        root = bisect_root(g, lo, hi)
        records.append(ZeroRecord(k, lo, hi, root, g(root), cls))
    return records


def asymptotic_index(p: LommelParams, bracket_k: int) -> int:
    """Index m for which pi*(m + (2mu+5)/4) falls in bracket ``bracket_k``."""
    cls = region_classify(p)
    if cls is RegionClass.REAL_ZEROS_COSINE:
        return bracket_k
    return bracket_k - 1


def asymptotic_zero(p: LommelParams, k: int) -> float:
    """Large-k location pi*(k + (2mu+5)/4) of the zeros, for mu < 1/2."""
    if not p.mu < 0.5:
        raise DomainError(f"asymptotic zeros need mu < 1/2, got {p.mu}")
    if k < 0:
        raise DomainError(f"k={k!r} must be nonnegative")
    return math.pi * (k + (2.0 * p.mu + 5.0) / 4.0)


def sign_scan_oracle(g: Callable[[float], float], lo: float, hi: float,
                     n: int) -> List[Tuple[float, float]]:
    """Consecutive pairs of n+1 equispaced points where g changes sign."""
    if not lo < hi:
        raise DomainError(f"empty scan interval [{lo}, {hi}]")
    if n < 100:
        raise DomainError(f"n={n} below the 100-point minimum")
    xs = [lo + (hi - lo) * i / n for i in range(n + 1)]
    xs[-1] = hi
    vals = []
    for x in xs:
        v = g(x)
        if not math.isfinite(v):
            raise NonFiniteSample(f"g({x!r}) = {v!r}")
        vals.append(v)
    return [
        (xs[i], xs[i + 1])
        for i in range(n)
        if (vals[i] > 0 and vals[i + 1] < 0) or (vals[i] < 0 and vals[i + 1] > 0)
    ]


def count_sign_changes(g: Callable[[float], float],
                       intervals: Sequence[Tuple[float, float]], n: int) -> List[int]:
    """Per-interval sign-change counts from :func:`sign_scan_oracle`."""
    return [len(sign_scan_oracle(g, lo, hi, n)) for lo, hi in intervals]
