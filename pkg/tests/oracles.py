"""Extended-precision reference values, independent of the library.

Everything here works in mpmath at 40 or more significant digits and
never calls into ``lommel_lab``.
"""

from __future__ import annotations


import mpmath as mp
import numpy as np

DPS = 40


def lommel_product_series(mu, nu, z, dps=DPS):
    """s_{mu,nu}(z) = z^(mu+1) sum_k (-1)^k z^(2k) / prod_{j<=k}((mu+2j+1)^2 - nu^2)."""
    # terms peak near exp(z) before cancelling, so carry that many digits more
    with mp.workdps(dps + int(abs(z) / 2.3) + 10):
        mu, nu, z = mp.mpf(mu), mp.mpf(nu), mp.mpf(z)
        z2 = z * z
        term = 1 / ((mu + 1) ** 2 - nu**2)
        total = term
        k = 0
        while True:
            k += 1
            term = -term * z2 / ((mu + 2 * k + 1) ** 2 - nu**2)
            total += term
            if abs(term) < mp.mpf(10) ** (-dps - 5) * abs(total) and k > z:
                break
        return z ** (mu + 1) * total


def lommel_mpmath(mu, nu, z, dps=DPS):
    with mp.workdps(dps + int(abs(z) / 2.3) + 10):
        return mp.lommels1(mp.mpf(mu), mp.mpf(nu), mp.mpf(z))


def lommel_entire_oracle(mu, nu, z, dps=DPS):
    with mp.workdps(dps + int(abs(z) / 2.3) + 10):
        a = (mp.mpf(mu) - nu + 3) / 2
        b = (mp.mpf(mu) + nu + 3) / 2
        return mp.hyp1f2(1, a, b, -mp.mpf(z) ** 2 / 4)


def hyp2f1_series(a, b, c, x, dps=DPS, with_scale=False):
    """Term-by-term 2F1 in extended precision with a geometric tail bound.

    With ``with_scale`` also returns the sum of |terms|, the natural yardstick
    for rounding error near a zero of the function."""
    with mp.workdps(dps + 10):
        a, b, c, x = (mp.mpf(v) for v in (a, b, c, x))
        term = mp.mpf(1)
        total = term
        scale = mp.mpf(1)
        n = 0
        while True:
            ratio = (a + n) * (b + n) / ((c + n) * (n + 1)) * x
            term *= ratio
            total += term
            scale += abs(term)
            n += 1
            # once |ratio| < 1 and shrinking the tail is below |term| r/(1-r)
            r = abs((a + n) * (b + n) / ((c + n) * (n + 1)) * x)
            if n > 5 and r < 1 and abs(term) * r / (1 - r) < mp.mpf(10) ** (-dps) * abs(total):
                return (total, scale) if with_scale else total


def beta_sine_series(w, alpha=-0.5, dps=DPS):
    """int_0^1 sin(w t) (1-t)^alpha dt = sum (-1)^n w^(2n+1)/(2n+1)! B(2n+2, 1+alpha)."""
    with mp.workdps(dps):
        w = mp.mpf(w)
        total = mp.mpf(0)
        n = 0
        while True:
            term = (-1) ** n * w ** (2 * n + 1) / mp.factorial(2 * n + 1) * mp.beta(2 * n + 2, 1 + alpha)
            total += term
            if abs(term) < mp.mpf(10) ** (-dps) and n > w:
                return total
            n += 1


def mu0_sine_form(nu, z, dps=30):
    """(1+cos(pi nu))^-1 int_0^pi sin(z sin u) cos(nu u) du."""
    with mp.workdps(dps):
        integral = mp.quad(lambda u: mp.sin(z * mp.sin(u)) * mp.cos(nu * u), [0, mp.pi / 2, mp.pi])
        return integral / (1 + mp.cos(mp.pi * nu))


def scan_root(g, lo, hi, n=10_000, dps=30):
    """Dense scan of g on [lo, hi] for the unique sign change, then bisection
    in extended precision to 1e-25."""
    with mp.workdps(dps):
        lo, hi = mp.mpf(lo), mp.mpf(hi)
        xs = [lo + (hi - lo) * i / n for i in range(n + 1)]
        vals = [g(x) for x in xs]
        hits = [i for i in range(n) if vals[i] * vals[i + 1] < 0]
        if len(hits) != 1:
            raise AssertionError(f"oracle scan found {len(hits)} sign changes")
        a, b = xs[hits[0]], xs[hits[0] + 1]
        ga = vals[hits[0]]
        while b - a > mp.mpf("1e-25"):
            m = (a + b) / 2
            gm = g(m)
            if gm * ga > 0:
                a, ga = m, gm
            else:
                b = m
        return (a + b) / 2


def lommel_root(mu, nu, lo, hi, n=10_000):
    return scan_root(lambda z: lommel_entire_oracle(mu, nu, z, dps=30), lo, hi, n)


# --- zero counts of 2F1 on (0, 1) ------------------------------------------brute force ---------------------------------------------------------

def _series_vec(a, b, c, x, terms=160):
    t = np.ones_like(x)
    s = t.copy()
    m = t.copy()
    for k in range(terms):
        t = t * ((a + k) * (b + k) / ((c + k) * (k + 1))) * x
        s = s + t
        m = m + np.abs(t)
    return s, m


def hyp2f1_zero_count(a, b, c, n=10_000, spread=40.0):
    """Sign changes of 2F1(a,b;c;x) on a logit-uniform grid of n points in
    (0, 1).  Values come from the float connection formula; any point whose
    value is not clearly larger than its rounding bound is recomputed with
    mpmath at 40 digits."""
    u = np.arange(1, n + 1) / (n + 1)
    w = spread * (2.0 * u - 1.0)
    x = 1.0 / (1.0 + np.exp(-w))
    y = 1.0 / (1.0 + np.exp(w))
    val = np.empty(n)
    bound = np.empty(n)
    lo = x <= 0.5
    s, m = _series_vec(a, b, c, x[lo])
    val[lo], bound[lo] = s, m
    # reciprocal gammas vanish at the poles, where the coefficient is 0
    g, rg = mp.gamma, mp.rgamma
    A = float(g(c) * g(c - a - b) * rg(c - a) * rg(c - b))
    B = float(g(c) * g(a + b - c) * rg(a) * rg(b))
    yy = y[~lo]
    s1, m1 = _series_vec(a, b, a + b - c + 1.0, yy)
    s2, m2 = _series_vec(c - a, c - b, c - a - b + 1.0, yy)
    p = yy ** (c - a - b)
    val[~lo] = A * s1 + B * p * s2
    bound[~lo] = abs(A) * m1 + abs(B) * p * m2
    suspicious = np.abs(val) <= 1e-10 * bound
    with mp.workdps(40):
        for i in np.nonzero(suspicious)[0]:
            xi = mp.mpf(1) / (1 + mp.exp(-mp.mpf(w[i])))
            val[i] = float(mp.hyp2f1(a, b, c, xi))
    sg = np.sign(val)
    return int(np.count_nonzero(sg[1:] * sg[:-1] < 0))
