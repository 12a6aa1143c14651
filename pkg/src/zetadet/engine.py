"""Analytic continuation of spectral zeta functions of operator words.

For a word with eigenvalues ``mu_k = prod_t (k + a_t)**m_t`` and total order
``M = sum_t m_t`` the Dirichlet series is split at a cutoff ``K``:

    zeta(s) = sum_{k0 <= k < K} d(k) mu_k**-s
              + sum_{j <= J} sum_r d_r c_j(s) zeta_H(M s + j - r, K)

where ``exp(-s sum_t m_t log(1 + a_t x)) = sum_j c_j(s) x**j``.  The head
holds every multiplicity exception.  Terms with ``j - r == 1`` meet the pole
of ``zeta_H`` at ``s = 0``; there ``c_j(0) = 0`` and the product is taken
through the Laurent data of ``zeta_H`` at 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .errors import ContinuationFailure, PoleError
from .spectra import OperatorWord, SpectralBase
from .specfun import digamma, hurwitz_zeta_with_error

__all__ = [
    "ContinuationParams",
    "ZetaResult",
    "TailCoefficients",
    "tail_coefficients",
    "spectral_zeta",
    "zeta_at_zero",
    "log_det",
]

_EPS = 2.0**-52


@dataclass(frozen=True)
class ContinuationParams:
    """Head cutoff ``K`` (``None``: automatic start), tail order ``J``.

    ``K`` is doubled until the estimated truncation error is below
    ``target_error``; :class:`ContinuationFailure` is raised past ``max_K``.
    """

    K: int | None = None
    J: int = 20
    target_error: float = 1e-11
    max_K: int = 1 << 16

    def __post_init__(self):
        if self.K is not None and (int(self.K) != self.K or self.K < 1):
            raise ValueError(f"K must be a positive integer, got {self.K!r}")
        if int(self.J) != self.J or self.J < 1:
            raise ValueError(f"J must be a positive integer, got {self.J!r}")
        if not self.target_error > 0:
            raise ValueError("target_error must be positive")


@dataclass(frozen=True)
class ZetaResult:
    s: float
    value: float
    ds_value: float | None
    error_estimate: float
    params: ContinuationParams
    truncation_error: float = 0.0
    rounding_error: float = 0.0


@dataclass(frozen=True)
class TailCoefficients:
    """``coeffs[j, p]`` is the coefficient of ``s**p x**j`` in ``exp(-s L(x))``."""

    coeffs: np.ndarray

    @property
    def J(self) -> int:
        return self.coeffs.shape[0] - 1

    def poly(self, j: int) -> np.ndarray:
        """Coefficients of ``c_j(s)`` in increasing powers of ``s``."""
        return self.coeffs[j, : j + 1]

    def value(self, j: int, s: float) -> float:
        return float(np.polynomial.polynomial.polyval(s, self.poly(j)))

    def ds(self, j: int, s: float) -> float:
        return float(np.polynomial.polynomial.polyval(s, np.polynomial.polynomial.polyder(self.poly(j))))

    def first(self, j: int) -> float:
        """``c_j'(0)``."""
        return float(self.coeffs[j, 1]) if j >= 1 else 0.0

    def second(self, j: int) -> float:
        """``c_j''(0)``."""
        return 2.0 * float(self.coeffs[j, 2]) if j >= 2 else 0.0


def _log_series(word: OperatorWord, J: int) -> list[float]:
    # L(x) = sum_t m_t log(1 + a_t x) = sum_p (-1)^(p+1) (sum_t m_t a_t^p) / p x^p
    out = [0.0]
    for p in range(1, J + 1):
        acc = sum((m * a**p for a, m in word.factors), start=0)
        out.append(float((-1) ** (p + 1) * acc / p))
    return out


@lru_cache(maxsize=1024)
def tail_coefficients(word: OperatorWord, J: int) -> TailCoefficients:
    """Formal power series ``exp(-s L(x))`` through ``x**J``.

    Uses ``j E_j = sum_{i=1}^{j} i F_i E_{j-i}`` for ``E = exp(F)``, ``F = -s L``;
    each ``E_j`` is a polynomial in ``s`` of degree ``j``.
    """
    if J < 1:
        raise ValueError("J must be at least 1")
    L = _log_series(word, J)
    E = np.zeros((J + 1, J + 1))
    E[0, 0] = 1.0
    for j in range(1, J + 1):
        acc = np.zeros(J + 1)
        for i in range(1, j + 1):
            acc[1:] += i * (-L[i]) * E[j - i, :-1]
        E[j] = acc / j
    E.flags.writeable = False
    return TailCoefficients(E)


def _start_K(word: OperatorWord, base: SpectralBase, params: ContinuationParams) -> int:
    amax = max(abs(float(a)) for a in word.shifts)
    if params.K is None:
        K = max(16, math.ceil(4 * amax), base.k0 + 1)
    else:
        K = int(params.K)
        if K < base.k0 + 1:
            raise ValueError(f"K={K} must be at least k0 + 1 = {base.k0 + 1}")
        if not K > 2 * amax:
            raise ValueError(f"K={K} must exceed twice the largest |shift| ({amax})")
    if base.max_exception is not None:
        K = max(K, base.max_exception + 1)
    return K


def _check_J(base: SpectralBase, params: ContinuationParams) -> None:
    if params.J < base.degree + 2:
        raise ValueError(f"J={params.J} must be at least multiplicity degree + 2 = {base.degree + 2}")


def _head(word: OperatorWord, base: SpectralBase, K: int) -> tuple[list[int], list[float]]:
    mult = [base.multiplicity(k) for k in range(base.k0, K)]
    logs = [
        math.fsum(float(m) * math.log(k + float(a)) for a, m in word.factors)
        for k in range(base.k0, K)
    ]
    return mult, logs


def _at_zero_fixed(word: OperatorWord, base: SpectralBase, K: int, J: int):
    M = float(word.order)
    coef = tail_coefficients(word, J + 1)
    d = [float(c) for c in base.multiplicity_coeffs]
    mult, logs = _head(word, base, K)

    zeta0_terms = [float(sum(mult))]
    dterms = [-float(n) * lg for n, lg in zip(mult, logs)]
    errs = []
    psi_K = None
    for r, dr in enumerate(d):
        if dr == 0.0:
            continue
        for j in range(J + 1):
            z = j - r
            if j == 0:
                hv, he = hurwitz_zeta_with_error(-r, K)
                hd, hde = hurwitz_zeta_with_error(-r, K, derivative=True)
                zeta0_terms.append(dr * hv)
                dterms.append(dr * M * hd)
                errs.append(abs(dr) * (he + M * hde))
            elif z == 1:
                if psi_K is None:
                    psi_K = digamma(K)
                c1, c2 = coef.first(j), coef.second(j)
                zeta0_terms.append(dr * c1 / M)
                dterms.append(dr * (0.5 * c2 / M - c1 * psi_K))
            else:
                hv, he = hurwitz_zeta_with_error(z, K)
                dterms.append(dr * coef.first(j) * hv)
                errs.append(abs(dr * coef.first(j)) * he)

    trunc = 0.0
    for r, dr in enumerate(d):
        z = J + 1 - r  # >= 3 since J >= degree + 2
        hv, _ = hurwitz_zeta_with_error(z, K)
        trunc += abs(dr * coef.first(J + 1) * hv)
    trunc *= 2.0  # remainder of a series with ratio <= 1/2

    zeta0 = math.fsum(zeta0_terms)
    zp0 = math.fsum(dterms)
    n = len(dterms)
    rounding = math.fsum(errs) + 4 * n * _EPS * (
        math.fsum(abs(t) for t in dterms) + math.fsum(abs(t) for t in zeta0_terms)
    )
    return zeta0, zp0, trunc, rounding


@lru_cache(maxsize=8192)
def zeta_at_zero(word: OperatorWord, base: SpectralBase, params: ContinuationParams = ContinuationParams()) -> ZetaResult:
    """``zeta(0)`` and ``zeta'(0)`` of ``word`` on ``base``.

    ``value`` is ``zeta(0)``, ``ds_value`` is ``zeta'(0)``.  ``params`` in the
    result records the cutoff actually used.
    """
    word.check_base(base)
    _check_J(base, params)
    K = _start_K(word, base, params)
    while True:
        zeta0, zp0, trunc, rounding = _at_zero_fixed(word, base, K, params.J)
        if trunc <= params.target_error:
            return ZetaResult(
                s=0.0,
                value=zeta0,
                ds_value=zp0,
                error_estimate=trunc + rounding,
                params=replace(params, K=K),
                truncation_error=trunc,
                rounding_error=rounding,
            )
        K *= 2
        if K > params.max_K:
            raise ContinuationFailure(
                f"truncation error {trunc:.3e} above target {params.target_error:.3e} at K={K // 2}"
            )


def _general_fixed(word: OperatorWord, base: SpectralBase, s: float, K: int, J: int):
    M = float(word.order)
    coef = tail_coefficients(word, J + 1)
    d = [float(c) for c in base.multiplicity_coeffs]
    mult, logs = _head(word, base, K)

    vterms = [n * math.exp(-s * lg) for n, lg in zip(mult, logs)]
    dterms = [-lg * v for lg, v in zip(logs, vterms)]
    errs = []
    for r, dr in enumerate(d):
        for j in range(J + 1):
            cj = coef.value(j, s)
            if cj == 0.0:
                continue
            z = M * s + j - r
            if z == 1.0:
                raise PoleError(f"s={s} puts a tail term on the pole of zeta_H (j={j}, r={r})")
            hv, he = hurwitz_zeta_with_error(z, K)
            hd, hde = hurwitz_zeta_with_error(z, K, derivative=True)
            vterms.append(dr * cj * hv)
            dterms.append(dr * (coef.ds(j, s) * hv + cj * M * hd))
            errs.append(abs(dr * cj) * (he + M * hde) + abs(dr * coef.ds(j, s)) * he)

    trunc = 0.0
    for r, dr in enumerate(d):
        z = M * s + J + 1 - r
        if z == 1.0:
            z += 1.0
        hv, _ = hurwitz_zeta_with_error(z, K)
        hd, _ = hurwitz_zeta_with_error(z, K, derivative=True)
        cj, dcj = coef.value(J + 1, s), coef.ds(J + 1, s)
        trunc += abs(dr * cj * hv) + abs(dr * (dcj * hv + cj * M * hd))
    trunc *= 2.0

    value = math.fsum(vterms)
    dvalue = math.fsum(dterms)
    n = len(vterms)
    rounding = math.fsum(errs) + 4 * n * _EPS * (
        math.fsum(abs(t) for t in vterms) + math.fsum(abs(t) for t in dterms)
    )
    return value, dvalue, trunc, rounding


def spectral_zeta(
    word: OperatorWord,
    base: SpectralBase,
    s: float,
    params: ContinuationParams = ContinuationParams(),
) -> ZetaResult:
    """``zeta(s) = sum_k d(k) mu_k**-s``, continued to real ``s``.

    Raises :class:`PoleError` if ``s`` is exactly a pole of some active tail
    term; ``s = 0`` is always regular.
    """
    s = float(s)
    if s == 0.0:
        return zeta_at_zero(word, base, params)
    word.check_base(base)
    _check_J(base, params)
    if s < 0.0 and params.K is None:
        # head and tail both grow like K**(M|s| + R + 1) and cancel; a small
        # cutoff with a longer tail expansion keeps that loss down
        found = _small_cutoff(word, base, s, params)
        if found is not None:
            return found
    K = _start_K(word, base, params)
    while True:
        value, dvalue, trunc, rounding = _general_fixed(word, base, s, K, params.J)
        if trunc <= params.target_error * max(1.0, abs(value)):
            return _general_result(s, value, dvalue, trunc, rounding, replace(params, K=K))
        K *= 2
        if K > params.max_K:
            raise ContinuationFailure(
                f"truncation error {trunc:.3e} above target at s={s}, K={K // 2}"
            )


# longest tail expansion tried on the small-cutoff route
_MAX_J = 96


def _small_cutoff(word, base, s, params) -> ZetaResult | None:
    amax = max(abs(float(a)) for a in word.shifts)
    K = max(base.k0 + 1, math.floor(2 * amax) + 1, 4)
    if base.max_exception is not None:
        K = max(K, base.max_exception + 1)
    J = params.J
    while J <= _MAX_J:
        value, dvalue, trunc, rounding = _general_fixed(word, base, s, K, J)
        if trunc <= params.target_error * max(1.0, abs(value)):
            return _general_result(s, value, dvalue, trunc, rounding, replace(params, K=K, J=J))
        J += 12
    return None


def _general_result(s, value, dvalue, trunc, rounding, params) -> ZetaResult:
    return ZetaResult(
        s=s,
        value=value,
        ds_value=dvalue,
        error_estimate=trunc + rounding,
        params=params,
        truncation_error=trunc,
        rounding_error=rounding,
    )


def log_det(word: OperatorWord, base: SpectralBase, params: ContinuationParams = ContinuationParams()) -> float:
    """``log det_zeta = -zeta'(0)``; exponentiate at the call site if needed."""
    return -zeta_at_zero(word, base, params).ds_value
