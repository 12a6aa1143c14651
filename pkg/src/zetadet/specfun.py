"""Real special functions used by the zeta engine.

Hurwitz zeta ``zeta_H(s, a) = sum_{k>=0} (k + a)**-s`` and its s-derivative are
evaluated by Euler-Maclaurin summation with a parameter shift: the first ``N``
terms are summed directly and the asymptotic tail is expanded at ``x = a + N``
with ``x >= max(10, |s|)``.  At non-positive integers the expansion terminates
and the exact Bernoulli-polynomial value is used instead.

Bernoulli numbers follow the convention ``B_1 = -1/2`` everywhere.

Accuracy is stated relative to ``max(1, |value|)``: in double precision an
absolute bound cannot hold once the value itself exceeds ``~1e4``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, PoleError

__all__ = [
    "bernoulli_table",
    "bernoulli_polynomial",
    "hurwitz_zeta",
    "hurwitz_zeta_ds",
    "hurwitz_zeta_with_error",
    "hurwitz_zeta_laurent_at_1",
    "digamma",
    "log_gamma",
    "HALF_LOG_2PI",
]

HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_EPS = 2.0**-52
_EULER_GAMMA = 0.57721566490153286061

# Stieltjes constants: zeta(1 + e) = 1/e + sum_n (-1)^n gamma_n e^n / n!
_STIELTJES = (
    0.5772156649015329,
    -0.07281584548367673,
    -0.00969036319287232,
    0.002053834420303346,
    0.0023253700654673,
    0.0007933238173010627,
    -0.0002387693454301996,
    -0.000527289567057751,
    -0.0003521233538030395,
    -3.439477441808805e-05,
)
# below this distance from the pole the Laurent series replaces the direct product
_NEAR_POLE = 1e-2

# Euler-Maclaurin correction terms available before the shift is enlarged.
_EM_MAX_TERMS = 60


@lru_cache(maxsize=None)
def bernoulli_table(n: int) -> tuple[Fraction, ...]:
    """Exact Bernoulli numbers ``B_0 .. B_n`` with ``B_1 = -1/2``.

    Uses the recurrence ``sum_{k=0}^{m} C(m+1, k) B_k = 0`` for ``m >= 1``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    table = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * table[k]
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli_polynomial(m: int, x: Fraction | int) -> Fraction:
    """Exact ``B_m(x) = sum_k C(m, k) B_k x**(m-k)``."""
    x = Fraction(x)
    b = bernoulli_table(m)
    return sum((math.comb(m, k) * b[k] * x ** (m - k) for k in range(m + 1)), Fraction(0))


@lru_cache(maxsize=None)
def _em_coefficients() -> tuple[float, ...]:
    # index j -> B_{2j} / (2j)!
    b = bernoulli_table(2 * _EM_MAX_TERMS)
    return tuple(
        float(b[2 * j] / math.factorial(2 * j)) for j in range(_EM_MAX_TERMS + 1)
    )


def _check_args(s: float, a: float) -> tuple[float, float]:
    s = float(s)
    a = float(a)
    if not (math.isfinite(s) and math.isfinite(a)):
        raise DomainError(f"non-finite argument s={s!r}, a={a!r}")
    if a <= 0.0:
        raise DomainError(f"Hurwitz parameter must be positive, got a={a!r}")
    if s == 1.0:
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    return s, a


def _nonpositive_integer(s: float) -> int | None:
    if s <= 0.0 and s == math.floor(s):
        return int(-s)
    return None


def _euler_maclaurin(s: float, a: float) -> tuple[float, float, float, float]:
    """Return ``(value, derivative, value_err, derivative_err)``."""
    coef = _em_coefficients()
    reach = max(10.0, abs(s))
    shift = max(0, math.ceil(reach - a))
    while True:
        x = a + shift
        vals = []
        dvals = []
        for k in range(shift):
            u = k + a
            t = u ** (-s)
            vals.append(t)
            dvals.append(-math.log(u) * t)
        lx = math.log(x)
        xs = x ** (-s)
        sm1 = s - 1.0
        t0 = x * xs / sm1
        vals.append(t0)
        dvals.append(-lx * t0 - t0 / sm1)
        vals.append(0.5 * xs)
        dvals.append(-0.5 * lx * xs)

        scale = math.fsum(abs(v) for v in vals)
        dscale = math.fsum(abs(v) for v in dvals)
        # rising factorial P_j(s) = s (s+1) ... (s+2j-2) and its s-derivative
        p, dp = s, 1.0
        pw = xs / x
        prev = math.inf
        converged = False
        err = derr = 0.0
        for j in range(1, _EM_MAX_TERMS + 1):
            term = coef[j] * p * pw
            dterm = coef[j] * (dp - lx * p) * pw
            size = max(abs(term) / max(scale, 1e-300), abs(dterm) / max(dscale, 1e-300))
            if size > prev and size > 1e-17:
                break  # asymptotic series started to diverge
            vals.append(term)
            dvals.append(dterm)
            if size <= 1e-17:
                err, derr = abs(term), abs(dterm)
                converged = True
                break
            prev = size
            for i in (2 * j - 1, 2 * j):
                dp = dp * (s + i) + p
                p = p * (s + i)
            pw /= x * x
        if converged:
            value = math.fsum(vals)
            dvalue = math.fsum(dvals)
            n_terms = len(vals)
            err += 4 * n_terms * _EPS * math.fsum(abs(v) for v in vals)
            derr += 4 * n_terms * _EPS * math.fsum(abs(v) for v in dvals)
            return value, dvalue, err, derr
        shift = 2 * shift + 10


def _sinpi_cospi(x: float) -> tuple[float, float]:
    # sin(pi x), cos(pi x) with exact zeros at integers and half-integers
    r = math.fmod(x, 2.0)
    if r == math.floor(r):
        return 0.0, (1.0 if int(r) % 2 == 0 else -1.0)
    if 2.0 * r == math.floor(2.0 * r):
        return (1.0 if r in (0.5, -1.5) else -1.0), 0.0
    return math.sin(math.pi * r), math.cos(math.pi * r)


def _riemann(sigma: float) -> tuple[float, float, float, float]:
    """Riemann zeta and derivative, ``(value, derivative, value_err, derivative_err)``."""
    if sigma >= -1.0:
        return _euler_maclaurin(sigma, 1.0)
    # reflection: zeta(s) = 2 (2 pi)^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    z, dz, ez, edz = _euler_maclaurin(1.0 - sigma, 1.0)
    g = 2.0 * math.exp((sigma - 1.0) * math.log(2.0 * math.pi) + log_gamma(1.0 - sigma)) * z
    dlog = math.log(2.0 * math.pi) - digamma(1.0 - sigma) - dz / z
    sn, cs = _sinpi_cospi(0.5 * sigma)
    value = g * sn
    deriv = g * dlog * sn + g * 0.5 * math.pi * cs
    # exp(log ...) loses ~|log g| ulps
    rel = 8 * _EPS * (abs(math.log(abs(g))) + 4.0) + ez / z
    return value, deriv, rel * abs(value), rel * (abs(deriv) + abs(g))


def _taylor_in_a(s: float, a: float) -> tuple[float, float, float, float]:
    """zeta_H(s, a) for ``s < -1`` and ``0 < a <= 1`` from Riemann-zeta Taylor data.

    ``zeta_H(s, 1 + t) = sum_k (s)_k / k! (-t)^k zeta(s + k)`` with ``|t| <= 1/2``:
    expanded at ``t = a`` (adding back ``a**-s``) or at ``t = a - 1``.
    """
    vals: list[float] = []
    dvals: list[float] = []
    errs: list[float] = []
    if a <= 0.5:
        t = a
        head = a ** (-s)
        vals.append(head)
        dvals.append(-math.log(a) * head)
    else:
        t = a - 1.0
    # nearest non-positive integer, if the (s)_k zeta(s + k) product straddles the pole
    n_near = round(-s)
    if abs(s + n_near) >= _NEAR_POLE:
        n_near = None
    # (s)_k / k! and its derivative, times (-t)^k
    p, dp = 1.0, 0.0
    w = 1.0
    k = 0
    biggest = 0.0
    small_run = 0
    while True:
        if n_near is not None and k == n_near + 1:
            # (s)_k carries the factor e = s + n, zeta(1 + e) the pole 1/e:
            # (s)_k zeta(1 + e) = q(s) g(e) with g(e) = 1 + sum_n (-1)^n gamma_n e^(n+1) / n!
            e = s + n_near
            q, dq = 1.0, 0.0
            for i in range(k):
                if i == n_near:
                    continue
                dq = dq * (s + i) + q
                q = q * (s + i)
            g, dg = 1.0, 0.0
            for j, gam in enumerate(_STIELTJES):
                c = (-1) ** j * gam / math.factorial(j)
                g += c * e ** (j + 1)
                dg += (j + 1) * c * e**j
            fact = math.factorial(k)
            term = q * g / fact * w
            dterm = (dq * g + q * dg) / fact * w
            err_term = 4 * _EPS * (abs(term) + abs(dterm))
        elif t == 0.0 and k > 0:
            break
        else:
            z, dz, ez, edz = _riemann(s + k)
            term = p * w * z
            dterm = (dp * z + p * dz) * w
            err_term = abs(p * w) * (ez + edz)
        vals.append(term)
        dvals.append(dterm)
        errs.append(err_term)
        size = max(abs(term), abs(dterm))
        biggest = max(biggest, size)
        if k > -s + 2 and size <= 1e-18 * biggest:
            small_run += 1
            if small_run >= 2:
                break
        else:
            small_run = 0
        # advance (s)_k / k!
        dp = (dp * (s + k) + p) / (k + 1)
        p = p * (s + k) / (k + 1)
        w *= -t
        k += 1
        if k > 4000:
            raise RuntimeError("Taylor expansion of Hurwitz zeta failed to converge")
    value = math.fsum(vals)
    dvalue = math.fsum(dvals)
    n_terms = len(vals)
    err = math.fsum(errs) + 4 * n_terms * _EPS * math.fsum(abs(v) for v in vals)
    derr = math.fsum(errs) + 4 * n_terms * _EPS * math.fsum(abs(v) for v in dvals)
    return value, dvalue, err, derr


def _hurwitz(s: float, a: float) -> tuple[float, float, float, float]:
    if s >= -1.0 or a >= max(10.0, abs(s)):
        return _euler_maclaurin(s, a)
    # the shifted Euler-Maclaurin head cancels catastrophically here
    n = math.floor(a)
    a0 = a - n
    if a0 == 0.0:
        a0, n = 1.0, n - 1
    value, dvalue, err, derr = _taylor_in_a(s, a0)
    if n > 0:
        vals = [value]
        dvals = [dvalue]
        for k in range(n):
            u = a0 + k
            t = u ** (-s)
            vals.append(-t)
            dvals.append(math.log(u) * t)
        value = math.fsum(vals)
        dvalue = math.fsum(dvals)
        err += 4 * len(vals) * _EPS * math.fsum(abs(v) for v in vals)
        derr += 4 * len(vals) * _EPS * math.fsum(abs(v) for v in dvals)
    return value, dvalue, err, derr


def hurwitz_zeta_with_error(s: float, a: float, derivative: bool = False) -> tuple[float, float]:
    """``(zeta_H(s, a), error_estimate)``, or the s-derivative when ``derivative``."""
    s, a = _check_args(s, a)
    n = _nonpositive_integer(s)
    if n is not None and not derivative:
        value = float(-bernoulli_polynomial(n + 1, Fraction(a)) / (n + 1))
        return value, _EPS * max(1.0, abs(value))
    value, dvalue, err, derr = _hurwitz(s, a)
    if derivative:
        return dvalue, derr
    return value, err


def hurwitz_zeta(s: float, a: float) -> float:
    """Hurwitz zeta function, analytically continued to real ``s != 1``.

    >>> hurwitz_zeta(0, 0.25)
    0.25
    """
    return hurwitz_zeta_with_error(s, a)[0]


def hurwitz_zeta_ds(s: float, a: float) -> float:
    """Partial derivative in ``s`` of :func:`hurwitz_zeta`.

    At ``s = 0`` this is ``log_gamma(a) - log(2 pi) / 2`` (Lerch).
    """
    return hurwitz_zeta_with_error(s, a, derivative=True)[0]


def digamma(a: float) -> float:
    """psi(a) for a > 0, via upward recurrence to x >= 12 and the asymptotic series."""
    a = float(a)
    if not a > 0.0 or not math.isfinite(a):
        raise DomainError(f"digamma requires a > 0, got {a!r}")
    shift = max(0, math.ceil(12.0 - a))
    x = a + shift
    b = bernoulli_table(20)
    inv2 = 1.0 / (x * x)
    terms = [math.log(x), -0.5 / x]
    pw = inv2
    for j in range(1, 11):
        terms.append(-float(b[2 * j]) / (2 * j) * pw)
        pw *= inv2
    terms.extend(-1.0 / (a + i) for i in range(shift))
    return math.fsum(terms)


def log_gamma(a: float) -> float:
    """log Gamma(a) for a > 0 (Stirling series after upward recurrence)."""
    a = float(a)
    if not a > 0.0 or not math.isfinite(a):
        raise DomainError(f"log_gamma requires a > 0, got {a!r}")
    shift = max(0, math.ceil(12.0 - a))
    x = a + shift
    b = bernoulli_table(20)
    lx = math.log(x)
    terms = [(x - 0.5) * lx, -x, HALF_LOG_2PI]
    inv = 1.0 / x
    inv2 = inv * inv
    for j in range(1, 11):
        terms.append(float(b[2 * j]) / (2 * j * (2 * j - 1)) * inv)
        inv *= inv2
    terms.extend(-math.log(a + i) for i in range(shift))
    return math.fsum(terms)


def hurwitz_zeta_laurent_at_1(a: float) -> tuple[float, float]:
    """Coefficients of ``zeta_H(1 + e, a) = 1/e - psi(a) + O(e)``.

    Returns ``(pole_coefficient, constant_term) = (1, -psi(a))``.
    """
    return 1.0, -digamma(a)
