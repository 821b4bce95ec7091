"""The Lommel function s_{mu,nu}(z) and the objects built around it.

Three exact routes evaluate s_{mu,nu}:

* the power series, as z**(mu+1)/((mu+1)**2 - nu**2) times a 1F2;
* a sine transform of the kernel f_{mu,nu} (mu > -1/2);
* a cosine transform of f_{mu+1,nu} (mu > -3/2).

The kernel is

    f_{mu,nu}(t) = (1-t)**(mu-1/2) 2F1(1/2+nu, 1/2-nu; mu+1/2; (1-t)/2)
                   / 2F1(1/2+nu, 1/2-nu; mu+1/2; 1/2),

which depends on t only through s = 1 - t; the private helpers take s
directly so the quadrature can hand over an exact complement.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import specfun
from .errors import DomainError, NumeratorPole, ParameterPole, ZeroNormalizer
from .quadrature import integrate_singular
from .specfun import HypTriple, hyp1f2, hyp2f1, hyp2f1_at_half, near_nonpositive_integer

SERIES_GUARD = 1e-9
Z_MAX = 100.0 * math.pi
INTEGRAL_TOL = 1e-11
# above this z the transforms are split at the zeros of sin(zt) / cos(zt)
SPLIT_Z = 50.0
ASYMPTOTIC_Z_MIN = 10.0


def _near_odd_negative(x: float, guard: float = SERIES_GUARD) -> bool:
    if x > -1.0 + guard:
        return False
    k = round((x + 1.0) / 2.0)
    return abs(x - (2 * k - 1)) < guard


@dataclass(frozen=True)
class LommelParams:
    mu: float
    nu: float

    @property
    def series_valid(self) -> bool:
        """mu + nu and mu - nu both away from odd negative integers."""
        return not (
            _near_odd_negative(self.mu + self.nu) or _near_odd_negative(self.mu - self.nu)
        )

    @property
    def sine_repr_valid(self) -> bool:
        return self.mu > -0.5

    @property
    def cosine_repr_valid(self) -> bool:
        return self.mu > -1.5

    def require_series(self) -> None:
        if not self.series_valid:
            raise ParameterPole(
                f"mu+-nu is an odd negative integer at (mu, nu)=({self.mu}, {self.nu})"
            )

    def shifted(self, dmu: float) -> "LommelParams":
        return LommelParams(self.mu + dmu, self.nu)


class EvalRoute(enum.Enum):
    SERIES = "series"
    SINE_INTEGRAL = "sine"
    COSINE_INTEGRAL = "cosine"
    ASYMPTOTIC = "asymptotic"


def _series_args(p: LommelParams):
    return (p.mu - p.nu + 3.0) / 2.0, (p.mu + p.nu + 3.0) / 2.0


def lommel_entire(p: LommelParams, z: float) -> float:
    """1F2(1; (mu-nu+3)/2, (mu+nu+3)/2; -z**2/4), i.e. s_{mu,nu} with the
    branch factor z**(mu+1)/((mu+1)**2-nu**2) removed.  Even in z."""
    p.require_series()
    b1, b2 = _series_args(p)
    return hyp1f2(1.0, b1, b2, -(z * z) / 4.0).value


def lommel_series(p: LommelParams, z: float) -> float:
    """s_{mu,nu}(z) from its power series, for 0 <= z <= 100*pi."""
    p.require_series()
    if z < 0.0:
        raise DomainError(f"z={z!r} < 0: z**(mu+1) is not real")
    if z > Z_MAX:
        raise DomainError(f"z={z!r} beyond the 100*pi cap")
    denom = (p.mu + 1.0) ** 2 - p.nu**2
    if z == 0.0:
        if p.mu > -1.0:
            return 0.0
        if p.mu == -1.0:
            return 1.0 / denom
        raise DomainError(f"s_mu,nu is singular at z=0 for mu={p.mu}")
    return z ** (p.mu + 1.0) / denom * lommel_entire(p, z)


def a_const(p: LommelParams) -> float:
    """2 G((mu+1+nu)/2) G((mu+1-nu)/2) / (G((mu+nu)/2) G((mu-nu)/2)).

    Exactly 0 when a denominator gamma sits on a pole.
    """
    n1 = (p.mu + 1.0 + p.nu) / 2.0
    n2 = (p.mu + 1.0 - p.nu) / 2.0
    if near_nonpositive_integer(n1) or near_nonpositive_integer(n2):
        raise NumeratorPole(f"a_{{mu,nu}} numerator pole at (mu, nu)=({p.mu}, {p.nu})")
    return (
        2.0
        * math.gamma(n1)
        * math.gamma(n2)
        * specfun.rgamma((p.mu + p.nu) / 2.0)
        * specfun.rgamma((p.mu - p.nu) / 2.0)
    )


def _kernel_norm(mu: float, nu: float) -> float:
    norm = hyp2f1_at_half(mu, nu)
    if norm == 0.0:
        raise ParameterPole(f"kernel normalisation vanishes at (mu, nu)=({mu}, {nu})")
    return norm


def _kernel_factory(mu: float, nu: float):
    """s -> f_{mu,nu}(1 - s), with the normalisation computed once."""
    triple = HypTriple(0.5 + nu, 0.5 - nu, mu + 0.5)
    if not triple.valid:
        raise ParameterPole(f"mu+1/2={mu + 0.5} is a nonpositive integer")
    norm = _kernel_norm(mu, nu)
    expo = mu - 0.5

    def kernel(s: float) -> float:
        return s**expo * hyp2f1(triple, 0.5 * s).value / norm

    return kernel


def _check_t(t: float) -> None:
    if not 0.0 < t < 1.0:
        raise DomainError(f"t={t!r} outside (0, 1)")


def kernel_f(p: LommelParams, t: float) -> float:
    """The sine-transform kernel f_{mu,nu}(t) on (0, 1), for mu > -1/2."""
    _check_t(t)
    return kernel_f_complement(p, 1.0 - t)


def kernel_f_complement(p: LommelParams, s: float) -> float:
    """f_{mu,nu}(1 - s), keeping full precision as s -> 0 where the
    factor s**(mu-1/2) lives.  s = 1 is accepted since a t below half an
    ulp of 1 has no other float representation."""
    if not p.sine_repr_valid:
        raise DomainError(f"kernel_f needs mu > -1/2, got {p.mu}")
    if not 0.0 < s <= 1.0:
        raise DomainError(f"1-t={s!r} outside (0, 1]")
    return _kernel_factory(p.mu, p.nu)(s)


def kernel_f_derivative(p: LommelParams, t: float) -> float:
    """d f_{mu,nu}/dt, equal to -a_{mu,nu} f_{mu-1,nu}(t).

    Evaluated through the lower parameter mu-1/2 directly, which stays
    finite where a_{mu,nu} = 0 and f_{mu-1,nu} is undefined.
    """
    if not p.sine_repr_valid:
        raise DomainError(f"kernel_f_derivative needs mu > -1/2, got {p.mu}")
    _check_t(t)
    mu, nu = p.mu, p.nu
    triple = HypTriple(0.5 + nu, 0.5 - nu, mu - 0.5)
    if not triple.valid:
        raise ParameterPole(f"mu-1/2={mu - 0.5} is a nonpositive integer")
    s = 1.0 - t
    return (
        (1.0 - 2.0 * mu)
        / 2.0
        * s ** (mu - 1.5)
        * hyp2f1(triple, 0.5 * s).value
        / _kernel_norm(mu, nu)
    )


def _check_z(z: float) -> None:
    if not z > 0.0:
        raise DomainError(f"z={z!r} must be positive")
    if z > Z_MAX:
        raise DomainError(f"z={z!r} beyond the 100*pi cap")


def lommel_sine_integral(p: LommelParams, z: float) -> float:
    """s_{mu,nu}(z) = z**mu * int_0^1 sin(zt) f_{mu,nu}(t) dt, mu > -1/2."""
    if not p.sine_repr_valid:
        raise DomainError(f"sine representation needs mu > -1/2, got {p.mu}")
    _check_z(z)
    kernel = _kernel_factory(p.mu, p.nu)
    cuts = None
    if z > SPLIT_Z:
        cuts = [j * math.pi / z for j in range(1, int(z / math.pi) + 1)]
    res = integrate_singular(
        lambda t, s: math.sin(z * t) * kernel(s),
        alpha=p.mu - 0.5,
        tol=INTEGRAL_TOL,
        complement=True,
        breakpoints=cuts,
    )
    return z**p.mu * res.value


def lommel_cosine_integral(p: LommelParams, z: float) -> float:
    """s_{mu,nu}(z) = z**(mu+1)/a_{mu+1,nu} * int_0^1 cos(zt) f_{mu+1,nu}(t) dt."""
    if not p.cosine_repr_valid:
        raise DomainError(f"cosine representation needs mu > -3/2, got {p.mu}")
    _check_z(z)
    a1 = a_const(p.shifted(1.0))
    if a1 == 0.0:
        raise ZeroNormalizer(f"a_{{mu+1,nu}} = 0 at (mu, nu)=({p.mu}, {p.nu})")
    kernel = _kernel_factory(p.mu + 1.0, p.nu)
    cuts = None
    if z > SPLIT_Z:
        cuts = [(2 * j + 1) * math.pi / (2.0 * z) for j in range(int(z / math.pi + 0.5) + 1)]
    res = integrate_singular(
        lambda t, s: math.cos(z * t) * kernel(s),
        alpha=p.mu + 0.5,
        tol=INTEGRAL_TOL,
        complement=True,
        breakpoints=cuts,
    )
    return z ** (p.mu + 1.0) / a1 * res.value


def asymptotic_amplitude(p: LommelParams) -> float:
    """Coefficient G((mu+nu+1)/2) G((mu-nu+1)/2) / (4 sqrt(pi))."""
    return (
        specfun.gamma((p.mu + p.nu + 1.0) / 2.0)
        * specfun.gamma((p.mu - p.nu + 1.0) / 2.0)
        / (4.0 * math.sqrt(math.pi))
    )


def lommel_asymptotic(p: LommelParams, z: float) -> float:
    """Two leading terms of s_{mu,nu}(z) for large positive z.

    Each term is only O(1/z) accurate in relative terms.
    """
    if z < ASYMPTOTIC_Z_MIN:
        raise DomainError(f"asymptotic form needs z >= {ASYMPTOTIC_Z_MIN}, got {z}")
    phase = z - 0.5 * math.pi * (p.mu + 1.5)
    osc = asymptotic_amplitude(p) * (2.0 / z) ** (p.mu + 1.5) * math.cos(phase)
    return z ** (p.mu + 1.0) * (z**-2 + osc)


def evaluate(p: LommelParams, z: float, route: EvalRoute) -> float:
    if route is EvalRoute.SERIES:
        return lommel_series(p, z)
    if route is EvalRoute.SINE_INTEGRAL:
        return lommel_sine_integral(p, z)
    if route is EvalRoute.COSINE_INTEGRAL:
        return lommel_cosine_integral(p, z)
    return lommel_asymptotic(p, z)


def aux_V(p: LommelParams, c: float, z: float) -> float:
    """c z**(mu-1) (1 - cos z) - s_{mu,nu}(z)."""
    if not z > 0.0:
        raise DomainError(f"z={z!r} must be positive")
    if c < 1.0:
        raise DomainError(f"c={c!r} must be >= 1")
    return c * z ** (p.mu - 1.0) * (1.0 - math.cos(z)) - lommel_series(p, z)


def aux_U(p: LommelParams, c: float, z: float) -> float:
    """z**mu (c + 1/a_{mu+1,nu}) sin z - s_{mu,nu}(z)."""
    if not z > 0.0:
        raise DomainError(f"z={z!r} must be positive")
    if c < 0.0:
        raise DomainError(f"c={c!r} must be >= 0")
    a1 = a_const(p.shifted(1.0))
    if a1 == 0.0:
        raise ZeroNormalizer(f"a_{{mu+1,nu}} = 0 at (mu, nu)=({p.mu}, {p.nu})")
    return z**p.mu * (c + 1.0 / a1) * math.sin(z) - lommel_series(p, z)


def theta_combination(p: LommelParams, theta: float, z: float) -> float:
    """z**-mu (a_{mu,nu} cos(theta) s_{mu-1,nu}(z) + sin(theta) s_{mu,nu}(z))."""
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta={theta!r} outside [0, pi]")
    if not z > 0.0:
        raise DomainError(f"z={z!r} must be positive")
    prev = p.shifted(-1.0)
    prev.require_series()
    p.require_series()
    c, s = math.cos(theta), math.sin(theta)
    if theta == 0.5 * math.pi:
        c = 0.0
    total = 0.0
    if c != 0.0:
        total += a_const(p) * c * lommel_series(prev, z)
    if s != 0.0:
        total += s * lommel_series(p, z)
    return z**-p.mu * total
