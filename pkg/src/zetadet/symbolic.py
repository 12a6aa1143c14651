"""Exact quadratic-form algebra for the anomaly identities.

Operators are monomials ``prod_i A_i**e_i`` in commuting generators of exact
rational order ``m_i``.  Their logarithms are linear forms in formal variables
``l_i = Log A_i``; the pairwise anomaly is represented by the quadratic form

    (ord v * Log u - ord u * Log v)**2 / (2 ord u ord v (ord u + ord v))

that sits inside the (linear) residue functional.  Two expressions whose forms
agree entrywise have equal residues, so identities are checked as exact matrix
equalities over :class:`gmpy2.mpq` rationals (interchangeable with
:class:`fractions.Fraction`).

Orders are sampled at random points of a rational grid; see
:func:`false_pass_bound` for why a handful of points certifies an identity in
the orders.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from gmpy2 import mpq as Q

__all__ = [
    "LogVector",
    "QuadraticForm",
    "SymbolicOperator",
    "ExactCheck",
    "generators",
    "log_sigma",
    "delta2_form",
    "delta_n_form_recursive",
    "all_pairing_orders",
    "verify_theorem_exact",
    "verify_lemma_exact",
    "verify_corollary_exact",
    "verify_pairing_independence",
    "count_subset_coverage",
    "order_grid",
    "random_orders",
    "cleared_degree_bound",
    "false_pass_bound",
    "run_suite",
]


@dataclass(frozen=True)
class LogVector:
    """``sum_i w_i l_i``, the logarithm of ``prod_i A_i**w_i``."""

    coeffs: tuple[Q, ...]

    def __add__(self, other: "LogVector") -> "LogVector":
        self._same(other)
        return LogVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LogVector") -> "LogVector":
        self._same(other)
        return LogVector(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, c) -> "LogVector":
        c = Q(c)
        return LogVector(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __neg__(self) -> "LogVector":
        return self * -1

    def _same(self, other):
        if len(self.coeffs) != len(other.coeffs):
            raise ValueError("log vectors live in different dimensions")

    def square(self) -> "QuadraticForm":
        w = self.coeffs
        return QuadraticForm(tuple(tuple(a * b for b in w) for a in w))

    @classmethod
    def basis(cls, n: int, i: int) -> "LogVector":
        return cls(tuple(Q(int(k == i)) for k in range(n)))


@dataclass(frozen=True)
class QuadraticForm:
    """Symmetric matrix ``Q`` standing for ``sum_{i,j} Q_ij l_i l_j``."""

    matrix: tuple[tuple[Q, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("quadratic form matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise ValueError("quadratic form matrix must be symmetric")

    @classmethod
    def zero(cls, n: int) -> "QuadraticForm":
        return cls(tuple(tuple(Q(0) for _ in range(n)) for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        if other.n != self.n:
            raise ValueError("forms of different dimension")
        return QuadraticForm(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix))
        )

    def __sub__(self, other: "QuadraticForm") -> "QuadraticForm":
        return self + other * -1

    def __mul__(self, c) -> "QuadraticForm":
        c = Q(c)
        return QuadraticForm(tuple(tuple(c * a for a in row) for row in self.matrix))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.matrix for a in row)

    def coefficient(self, i: int, j: int) -> Q:
        """Coefficient of the monomial ``l_i l_j`` (cross terms counted twice)."""
        return self.matrix[i][j] if i == j else 2 * self.matrix[i][j]

    def first_difference(self, other: "QuadraticForm"):
        """``(i, j, self_ij, other_ij)`` for the first differing entry, else ``None``."""
        for i in range(self.n):
            for j in range(i, self.n):
                if self.matrix[i][j] != other.matrix[i][j]:
                    return i, j, self.matrix[i][j], other.matrix[i][j]
        return None

    def rank(self) -> int:
        rows = [list(r) for r in self.matrix]
        rank = 0
        for col in range(self.n):
            pivot = next((r for r in range(rank, self.n) if rows[r][col] != 0), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            for r in range(self.n):
                if r != rank and rows[r][col] != 0:
                    f = rows[r][col] / rows[rank][col]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
            rank += 1
        return rank

    def is_positive_semidefinite(self) -> bool:
        """Exact PSD test via signs of principal minors of all orders."""
        n = self.n
        for size in range(1, n + 1):
            for idx in itertools.combinations(range(n), size):
                if _det([[self.matrix[i][j] for j in idx] for i in idx]) < 0:
                    return False
        return True


def _det(rows: list[list[Q]]) -> Q:
    rows = [list(r) for r in rows]
    n = len(rows)
    det = Q(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Q(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, n):
            f = rows[r][col] / rows[col][col]
            rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return det


@dataclass(frozen=True)
class SymbolicOperator:
    """``prod_i A_i**exponents[i]`` over generators with orders ``generator_orders``."""

    exponents: tuple[Q, ...]
    generator_orders: tuple[Q, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.generator_orders):
            raise ValueError("exponent vector and generator orders differ in length")

    @property
    def order(self) -> Q:
        return sum((e * m for e, m in zip(self.exponents, self.generator_orders)), Q(0))

    @property
    def log(self) -> LogVector:
        return LogVector(self.exponents)

    def __mul__(self, other: "SymbolicOperator") -> "SymbolicOperator":
        if other.generator_orders != self.generator_orders:
            raise ValueError("operators over different generator sets")
        return SymbolicOperator(
            tuple(a + b for a, b in zip(self.exponents, other.exponents)), self.generator_orders
        )

    def __pow__(self, p) -> "SymbolicOperator":
        p = Q(p)
        return SymbolicOperator(tuple(p * e for e in self.exponents), self.generator_orders)


def generators(orders: Sequence) -> list[SymbolicOperator]:
    orders = tuple(Q(m) for m in orders)
    if any(m <= 0 for m in orders):
        raise ValueError("generator orders must be positive")
    n = len(orders)
    return [SymbolicOperator(LogVector.basis(n, i).coeffs, orders) for i in range(n)]


def log_sigma(u: SymbolicOperator, v: SymbolicOperator) -> LogVector:
    """``Log(u**ord v * v**-ord u)``."""
    return v.order * u.log - u.order * v.log


def delta2_form(u: SymbolicOperator, v: SymbolicOperator) -> QuadraticForm:
    ou, ov = u.order, v.order
    if ou <= 0 or ov <= 0:
        raise ValueError("pairwise anomaly form needs operators of positive order")
    return log_sigma(u, v).square() * (1 / (2 * ou * ov * (ou + ov)))


def all_pairing_orders(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Every sequence of merge steps reducing ``n`` operators to one."""
    if n < 2:
        yield ()
        return
    for first in itertools.combinations(range(n), 2):
        for rest in all_pairing_orders(n - 1):
            yield (first,) + rest


def delta_n_form_recursive(
    operators: Sequence[SymbolicOperator],
    pairing_order: Sequence[tuple[int, int]] | None = None,
) -> QuadraticForm:
    """Form of ``delta_n`` built only from repeated merging.

    Each step ``(i, j)`` (positions in the current list, ``i < j``) adds
    ``delta_2(B_i, B_j)`` and replaces the pair by ``B_i B_j`` at position ``i``.
    The default merges the first two operators every time.
    """
    current = list(operators)
    if len(current) < 2:
        raise ValueError("need at least two operators")
    if pairing_order is None:
        pairing_order = [(0, 1)] * (len(current) - 1)
    if len(pairing_order) != len(current) - 1:
        raise ValueError(f"{len(current)} operators need {len(current) - 1} merge steps")
    total = QuadraticForm.zero(len(current[0].exponents))
    for i, j in pairing_order:
        if not 0 <= i < j < len(current):
            raise ValueError(f"bad merge step {(i, j)} for {len(current)} operators")
        total = total + delta2_form(current[i], current[j])
        merged = current[i] * current[j]
        current = current[:i] + [merged] + current[i + 1 : j] + current[j + 1 :]
    return total


@dataclass(frozen=True)
class ExactCheck:
    identity: str
    passed: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.passed


def _compare(identity: str, lhs: QuadraticForm, rhs: QuadraticForm) -> ExactCheck:
    w = lhs.first_difference(rhs)
    return ExactCheck(identity, w is None, w)


def _pairwise_form(gens) -> QuadraticForm:
    m = [g.order for g in gens]
    total = sum(m)
    out = QuadraticForm.zero(len(gens))
    for i, j in itertools.combinations(range(len(gens)), 2):
        out = out + delta2_form(gens[i], gens[j]) * ((m[i] + m[j]) / total)
    return out


def verify_theorem_exact(n: int, orders: Sequence) -> ExactCheck:
    """Merge-built ``delta_n`` form against the order-weighted sum of pairwise forms."""
    if n < 2 or len(orders) != n:
        raise ValueError("need n >= 2 orders")
    gens = generators(orders)
    return _compare("pairwise-reduction", delta_n_form_recursive(gens), _pairwise_form(gens))


def _cross(gens, i, j):
    return delta2_form(gens[i] ** gens[j].order, gens[j] ** gens[i].order)


def verify_lemma_exact(n: int, orders: Sequence) -> list[ExactCheck]:
    """The pair-sum lemma, its reduced form, the three-operator core and the log-square chain."""
    if n < 3 or len(orders) != n:
        raise ValueError("need n >= 3 orders")
    gens = generators(orders)
    m = [g.order for g in gens]
    total = sum(m)
    a12 = gens[0] * gens[1]
    zero = QuadraticForm.zero(n)

    def merged_cross(j):
        return delta2_form(a12 ** m[j], gens[j] ** (m[0] + m[1]))

    lhs = zero
    for i, j in itertools.combinations(range(n), 2):
        lhs = lhs + _cross(gens, i, j)
    tail_pairs = zero
    for i, j in itertools.combinations(range(2, n), 2):
        tail_pairs = tail_pairs + _cross(gens, i, j)
    merged = zero
    for j in range(2, n):
        merged = merged + merged_cross(j)
    d12 = delta2_form(gens[0], gens[1])
    checks = [_compare("lemma", lhs, merged + tail_pairs + d12 * (total / 2))]

    # what remains after the pairs among A_3..A_n cancel
    first_two = zero
    for j in range(1, n):
        first_two = first_two + _cross(gens, 0, j)
    for j in range(2, n):
        first_two = first_two + _cross(gens, 1, j)
    checks.append(_compare("lemma-reduced", merged + d12 * (total / 2), first_two))

    for l in range(2, n):
        sq_lhs = delta2_form(a12, gens[l]) * (m[0] + m[1] + m[l]) + d12 * m[l]
        sq_rhs = delta2_form(gens[0], gens[l]) * (m[0] + m[l]) + delta2_form(gens[1], gens[l]) * (m[1] + m[l])
        checks.append(_compare(f"lemma-square(1,2,{l + 1})", sq_lhs, sq_rhs))

    checks.extend(_log_square_chain(gens))
    return checks


def _log_square_chain(gens) -> list[ExactCheck]:
    # the four expressions of the three-operator computation, consecutive pairs compared
    m1, m2, m3 = (g.order for g in gens[:3])
    l1, l2, l3 = (g.log for g in gens[:3])
    s12_3 = log_sigma(gens[0] * gens[1], gens[2])
    s1_2 = log_sigma(gens[0], gens[1])
    step1 = s12_3.square() * ((m1 + m2 + m3) / (2 * (m1 + m2) * m3 * (m1 + m2 + m3))) + s1_2.square() * (
        m3 / (2 * m1 * m2 * (m1 + m2))
    )
    step2 = (
        (m3 * (l1 + l2) - (m1 + m2) * l3).square() * (1 / m3)
        + (m2 * l1 - m1 * l2).square() * (m3 / (m1 * m2))
    ) * (1 / (2 * (m1 + m2)))
    step3 = (m3 * l1 - m1 * l3).square() * (1 / (2 * m1 * m3)) + (m3 * l2 - m2 * l3).square() * (
        1 / (2 * m2 * m3)
    )
    step4 = log_sigma(gens[0], gens[2]).square() * ((m1 + m3) / (2 * m1 * m3 * (m1 + m3))) + log_sigma(
        gens[1], gens[2]
    ).square() * ((m2 + m3) / (2 * m2 * m3 * (m2 + m3)))
    steps = [step1, step2, step3, step4]
    return [_compare(f"log-square-chain({i + 1}->{i + 2})", steps[i], steps[i + 1]) for i in range(3)]


def _mu_forms(gens, sizes) -> dict[tuple[int, ...], QuadraticForm]:
    out = {}
    for k in sizes:
        for subset in itertools.combinations(range(len(gens)), k):
            sub = [gens[i] for i in subset]
            out[subset] = delta_n_form_recursive(sub) * sum(g.order for g in sub)
    return out


def verify_corollary_exact(n: int, k: int, orders: Sequence, _mu=None) -> ExactCheck:
    """``(sum m) C(n-2, k-2) delta_n`` against the sum of ``mu`` over k-subsets.

    ``mu(S) = (sum_{i in S} m_i) delta_{|S|}(S)``.
    """
    if not 2 <= k <= n or len(orders) != n:
        raise ValueError("need 2 <= k <= n and n orders")
    gens = generators(orders)
    mu = _mu if _mu is not None else _mu_forms(gens, {k, n})
    lhs = mu[tuple(range(n))] * math.comb(n - 2, k - 2)
    rhs = QuadraticForm.zero(n)
    for subset in itertools.combinations(range(n), k):
        rhs = rhs + mu[subset]
    return _compare(f"subset-reduction(k={k})", lhs, rhs)


def verify_pairing_independence(orders: Sequence, pairing_orders=None) -> ExactCheck:
    """Every merge order (default: all of them) yields the same ``delta_n`` form."""
    gens = generators(orders)
    orders_iter = all_pairing_orders(len(gens)) if pairing_orders is None else iter(pairing_orders)
    reference = delta_n_form_recursive(gens)
    for steps in orders_iter:
        w = delta_n_form_recursive(gens, steps).first_difference(reference)
        if w is not None:
            return ExactCheck("pairing-independence", False, (tuple(steps),) + w)
    return ExactCheck("pairing-independence", True)


def count_subset_coverage(n: int, k: int) -> int:
    """Number of k-subsets of ``{1..n}`` that contain the pair ``{1, 2}``."""
    if not 2 <= k <= n:
        raise ValueError("need 2 <= k <= n")
    return sum(1 for s in itertools.combinations(range(n), k) if 0 in s and 1 in s)


def order_grid(bound: int = 20) -> tuple[Q, ...]:
    """Distinct rationals ``p/q`` with ``1 <= p, q <= bound``, sorted."""
    return tuple(sorted({Q(p, q) for p in range(1, bound + 1) for q in range(1, bound + 1)}))


def random_orders(rng: random.Random, n: int, bound: int = 20) -> tuple[Q, ...]:
    grid = order_grid(bound)
    return tuple(rng.choice(grid) for _ in range(n))


def cleared_degree_bound(n: int) -> int:
    """Total degree bound for an entry of ``lhs - rhs`` in the pairwise reduction.

    The merge side has ``n - 1`` terms with denominators of degree 3, the
    pairwise side ``C(n, 2)`` terms with denominators of degree 4 (including
    ``sum m``); numerators have degree at most 3.  Over the common denominator
    the numerator degree is at most ``3 + 3 (n - 1) + 4 C(n, 2)``.
    """
    return 3 + 3 * (n - 1) + 4 * math.comb(n, 2)


def false_pass_bound(n: int, trials: int, bound: int = 20, degree: int | None = None) -> float:
    """Probability that a false identity survives ``trials`` random grid points.

    A nonzero polynomial of total degree ``D`` vanishes at a uniform point of
    ``S**n`` with probability at most ``D / |S|`` (Schwartz-Zippel); trials are
    independent.  ``D`` defaults to :func:`cleared_degree_bound`.
    """
    size = len(order_grid(bound))
    d = cleared_degree_bound(n) if degree is None else degree
    return min(1.0, d / size) ** trials


def run_suite(n: int, trials: int, seed: int, k: int | None = None, bound: int = 20) -> dict:
    """Seeded randomized run of the exact checks; the result is JSON-ready.

    The theorem is checked at every trial; the lemma (``n >= 3``), the
    corollary (``k`` or every ``2 <= k <= n``) and a sampled merge order are
    checked alongside.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if k is not None and not 2 <= k <= n:
        raise ValueError("need 2 <= k <= n")
    rng = random.Random(seed)
    ks = [k] if k is not None else list(range(2, n + 1))
    tallies: dict[str, list[int]] = {}
    failures = []

    def record(check: ExactCheck, orders):
        tally = tallies.setdefault(check.identity, [0, 0])
        tally[0] += 1
        tally[1] += int(check.passed)
        if not check.passed and len(failures) < 10:
            failures.append(
                {"identity": check.identity, "orders": [str(o) for o in orders], "witness": [str(x) for x in check.witness]}
            )

    all_steps = None
    for _ in range(trials):
        orders = random_orders(rng, n, bound)
        record(verify_theorem_exact(n, orders), orders)
        if n >= 3:
            for c in verify_lemma_exact(n, orders):
                record(c, orders)
        gens = generators(orders)
        mu = _mu_forms(gens, set(ks) | {n})
        for kk in ks:
            record(verify_corollary_exact(n, kk, orders, _mu=mu), orders)
        if all_steps is None:
            all_steps = list(all_pairing_orders(n))
        record(verify_pairing_independence(orders, [rng.choice(all_steps)]), orders)

    checks = [
        {"identity": name, "trials": t, "passed": p, "pass": p == t} for name, (t, p) in sorted(tallies.items())
    ]
    return {
        "n": n,
        "k": k,
        "trials": trials,
        "seed": seed,
        "grid_bound": bound,
        "false_pass_bound": false_pass_bound(n, trials, bound),
        "checks": checks,
        "failures": failures,
        "pass": all(c["pass"] for c in checks),
    }
