"""Multiplicative anomalies computed from their definition, and identity residuals.

``delta_n(A_1, ..., A_n) = -zeta'_{A_1...A_n}(0) + sum_i zeta'_{A_i}(0)`` and
``M_n = exp(delta_n)``.  Every anomaly here is assembled from zeta-engine
values only, so each identity check compares two independent numerical
routes.  Anomalies are reported as ``log M``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .engine import ContinuationParams, zeta_at_zero
from .spectra import CommutingFamily, OperatorWord, SpectralBase, power, product

__all__ = [
    "DEFAULT_TOLERANCE",
    "Residual",
    "AnomalyReport",
    "delta_words",
    "delta_n",
    "log_anomaly",
    "verify_theorem",
    "verify_corollary",
    "verify_reduction",
    "verify_equal_order",
    "verify_lemma",
    "verify_zero_anomaly",
    "anomaly_report",
]

DEFAULT_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Residual:
    """Outcome of one identity check: ``|lhs - rhs|`` against ``tolerance``."""

    identity: str
    lhs: float
    rhs: float
    tolerance: float
    error_budget: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def passed(self) -> bool:
        return self.residual < self.tolerance

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "error_budget": self.error_budget,
            "pass": self.passed,
        }


def delta_words(
    words: Sequence[OperatorWord], base: SpectralBase, params: ContinuationParams = ContinuationParams()
) -> tuple[float, float]:
    """``(delta_n, error_estimate)`` for explicit words on ``base``."""
    if len(words) < 2:
        raise ValueError("an anomaly needs at least two operators")
    whole = zeta_at_zero(product(words), base, params)
    parts = [zeta_at_zero(w, base, params) for w in words]
    value = math.fsum([-whole.ds_value] + [p.ds_value for p in parts])
    error = whole.error_estimate + sum(p.error_estimate for p in parts)
    return value, error


def delta_n(
    family: CommutingFamily, names: Sequence[str], params: ContinuationParams = ContinuationParams()
) -> float:
    """Logarithm of the joint anomaly of the named operators."""
    return delta_words(family.words(names), family.base, params)[0]


log_anomaly = delta_n


def _orders(words: Sequence[OperatorWord]) -> list[float]:
    return [float(w.order) for w in words]


def _need(names: Sequence[str], n_min: int, what: str) -> list[str]:
    names = list(names)
    if len(names) < n_min:
        raise ValueError(f"{what} needs at least {n_min} operators, got {len(names)}")
    if len(set(names)) != len(names):
        raise ValueError(f"operator names repeat: {names}")
    return names


def verify_theorem(
    family: CommutingFamily,
    names: Sequence[str],
    params: ContinuationParams = ContinuationParams(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> Residual:
    """``(sum m) delta_n`` against ``sum_{i<j} (m_i + m_j) delta_2(A_i, A_j)``."""
    names = _need(names, 2, "verify_theorem")
    base = family.base
    words = family.words(names)
    m = _orders(words)
    dn, en = delta_words(words, base, params)
    rhs_terms = []
    budget = sum(m) * en
    for i, j in combinations(range(len(words)), 2):
        d2, e2 = delta_words([words[i], words[j]], base, params)
        rhs_terms.append((m[i] + m[j]) * d2)
        budget += (m[i] + m[j]) * e2
    return Residual("pairwise-reduction", sum(m) * dn, math.fsum(rhs_terms), tolerance, budget)


def verify_corollary(
    family: CommutingFamily,
    names: Sequence[str],
    k: int,
    params: ContinuationParams = ContinuationParams(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> Residual:
    """``(sum m) C(n-2, k-2) delta_n`` against ``sum`` over k-subsets of ``(sum_S m) delta_k(S)``."""
    names = _need(names, 2, "verify_corollary")
    n = len(names)
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    base = family.base
    words = family.words(names)
    m = _orders(words)
    coeff = math.comb(n - 2, k - 2)
    dn, en = delta_words(words, base, params)
    rhs_terms = []
    budget = sum(m) * coeff * en
    for subset in combinations(range(n), k):
        dk, ek = delta_words([words[i] for i in subset], base, params)
        ms = sum(m[i] for i in subset)
        rhs_terms.append(ms * dk)
        budget += ms * ek
    return Residual(f"subset-reduction(k={k})", sum(m) * coeff * dn, math.fsum(rhs_terms), tolerance, budget)


def verify_reduction(
    family: CommutingFamily,
    names: Sequence[str],
    params: ContinuationParams = ContinuationParams(),
    tolerance: float = 1e-10,
) -> Residual:
    """``delta_n(A_1..A_n)`` against ``delta_{n-1}(A_1 A_2, A_3..) + delta_2(A_1, A_2)``."""
    names = _need(names, 3, "verify_reduction")
    base = family.base
    words = family.words(names)
    dn, en = delta_words(words, base, params)
    merged, em = delta_words([words[0] * words[1]] + words[2:], base, params)
    d2, e2 = delta_words(words[:2], base, params)
    return Residual("merge-recursion", dn, merged + d2, tolerance, en + em + e2)


def verify_equal_order(
    family: CommutingFamily,
    name_a: str,
    name_b: str,
    params: ContinuationParams = ContinuationParams(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> Residual:
    """``(ord A + ord B) delta_2(A, B)`` against ``2 delta_2(A^ord B, B^ord A)``."""
    base = family.base
    a, b = family[name_a], family[name_b]
    d, e = delta_words([a, b], base, params)
    dp, ep = delta_words([power(a, b.order), power(b, a.order)], base, params)
    ma, mb = float(a.order), float(b.order)
    return Residual("equal-order", (ma + mb) * d, 2.0 * dp, tolerance, (ma + mb) * e + 2.0 * ep)


def _lemma_square(words, base, params, l, tolerance) -> Residual:
    a1, a2, a3 = words[0], words[1], words[l]
    m1, m2, m3 = (float(w.order) for w in (a1, a2, a3))
    d12_3, e1 = delta_words([a1 * a2, a3], base, params)
    d12, e2 = delta_words([a1, a2], base, params)
    d13, e3 = delta_words([a1, a3], base, params)
    d23, e4 = delta_words([a2, a3], base, params)
    lhs = (m1 + m2 + m3) * d12_3 + m3 * d12
    rhs = (m1 + m3) * d13 + (m2 + m3) * d23
    budget = (m1 + m2 + m3) * e1 + m3 * e2 + (m1 + m3) * e3 + (m2 + m3) * e4
    return Residual(f"lemma-square(1,2,{l + 1})", lhs, rhs, tolerance, budget)


def verify_lemma(
    family: CommutingFamily,
    names: Sequence[str],
    params: ContinuationParams = ContinuationParams(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[Residual]:
    """Pair-sum lemma for ``n >= 3`` plus its three-operator core for every third operator.

    The lemma compares ``sum_{i<j} delta_2(A_i^{m_j}, A_j^{m_i})`` with
    ``sum_{j=3}^{n} delta_2((A_1 A_2)^{m_j}, A_j^{m_1+m_2})
    + sum_{3<=i<j} delta_2(A_i^{m_j}, A_j^{m_i}) + (sum m)/2 delta_2(A_1, A_2)``
    (indices 1-based).
    """
    names = _need(names, 3, "verify_lemma")
    base = family.base
    words = family.words(names)
    n = len(words)
    order = [w.order for w in words]
    m = [float(o) for o in order]

    def cross(i, j):
        return delta_words([power(words[i], order[j]), power(words[j], order[i])], base, params)

    lhs_terms, budget = [], 0.0
    for i, j in combinations(range(n), 2):
        v, e = cross(i, j)
        lhs_terms.append(v)
        budget += e
    rhs_terms = []
    w12 = words[0] * words[1]
    for j in range(2, n):
        v, e = delta_words([power(w12, order[j]), power(words[j], order[0] + order[1])], base, params)
        rhs_terms.append(v)
        budget += e
    for i, j in combinations(range(2, n), 2):
        v, e = cross(i, j)
        rhs_terms.append(v)
        budget += e
    d12, e12 = delta_words(words[:2], base, params)
    rhs_terms.append(0.5 * sum(m) * d12)
    budget += 0.5 * sum(m) * e12

    out = [Residual("lemma", math.fsum(lhs_terms), math.fsum(rhs_terms), tolerance, budget)]
    out.extend(_lemma_square(words, base, params, l, tolerance) for l in range(2, n))
    return out


def verify_zero_anomaly(
    family: CommutingFamily,
    names: Sequence[str],
    params: ContinuationParams = ContinuationParams(),
    tolerance: float = 1e-8,
) -> list[Residual]:
    """``delta`` of every subset of size >= 2 compared against 0.

    Only meaningful when all the named operators share a single shift.
    """
    names = _need(names, 2, "verify_zero_anomaly")
    words = family.words(names)
    out = []
    for size in range(2, len(words) + 1):
        for subset in combinations(range(len(words)), size):
            v, e = delta_words([words[i] for i in subset], family.base, params)
            label = ",".join(names[i] for i in subset)
            out.append(Residual(f"zero-anomaly({label})", v, 0.0, tolerance, e))
    return out


@dataclass
class AnomalyReport:
    """Anomalies of every sub-tuple of ``names`` plus identity residuals."""

    names: list[str]
    orders: dict[str, float]
    log_m: dict[tuple[str, ...], float]
    errors: dict[tuple[str, ...], float]
    residuals: list[Residual] = field(default_factory=list)

    @property
    def deltas(self) -> dict[tuple[str, ...], float]:
        return self.log_m

    @property
    def error_budget(self) -> float:
        return sum(r.error_budget for r in self.residuals)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.residuals)

    def m_value(self, key: tuple[str, ...]) -> float:
        """``M = exp(delta)``; may overflow to ``inf`` for large anomalies."""
        try:
            return math.exp(self.log_m[key])
        except OverflowError:
            return math.inf


def anomaly_report(
    family: CommutingFamily,
    names: Sequence[str],
    params: ContinuationParams = ContinuationParams(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> AnomalyReport:
    names = _need(names, 2, "anomaly_report")
    words = family.words(names)
    log_m, errors = {}, {}
    for size in range(2, len(names) + 1):
        for subset in combinations(range(len(names)), size):
            key = tuple(names[i] for i in subset)
            log_m[key], errors[key] = delta_words([words[i] for i in subset], family.base, params)
    residuals = [verify_theorem(family, names, params, tolerance)]
    if len(names) >= 3:
        residuals.extend(
            verify_corollary(family, names, k, params, tolerance) for k in range(3, len(names))
        )
        residuals.append(verify_reduction(family, names, params))
        residuals.extend(verify_lemma(family, names, params, tolerance))
    residuals.append(verify_equal_order(family, names[0], names[1], params, tolerance))
    return AnomalyReport(
        names=list(names),
        orders={n: float(family[n].order) for n in names},
        log_m=log_m,
        errors=errors,
        residuals=residuals,
    )
