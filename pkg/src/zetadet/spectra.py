"""Commuting operator families with explicit spectra.

Every operator in a family is diagonal in one shared eigenbasis indexed by an
integer ``k >= k0``.  The eigenvalue of an operator word at index ``k`` is

    mu_k = prod_t (k + a_t) ** m_t

and the multiplicity of index ``k`` is a polynomial ``d(k)`` shared by the
family, with a finite list of overrides.  Shifts and exponents are stored as
exact :class:`fractions.Fraction` values, so canonical forms, products and
powers are computed without rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = [
    "exact",
    "SpectralBase",
    "OperatorWord",
    "CommutingFamily",
    "product",
    "power",
    "eigenvalue",
    "log_eigenvalue",
    "multiplicity",
    "FLAT",
    "CIRCLE",
    "SPHERE",
]

# indices sampled when checking that d(k) is a positive integer
_SAMPLE_SPAN = 10_000


def exact(x) -> Fraction:
    """Convert user input to an exact rational.

    Strings are parsed as decimals (``"0.3"`` -> 3/10).  Floats go through their
    shortest repr, so ``0.3`` also becomes 3/10 rather than its binary expansion.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Fraction, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact number")


@dataclass(frozen=True)
class SpectralBase:
    """Index set ``k >= k0`` with multiplicity ``d(k) = sum_r d_r k**r``.

    ``exceptions`` overrides ``d(k)`` at finitely many indices.
    """

    k0: int
    multiplicity_coeffs: tuple[Fraction, ...]
    exceptions: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if int(self.k0) != self.k0 or self.k0 < 0:
            raise ValueError(f"k0 must be a non-negative integer, got {self.k0!r}")
        coeffs = [exact(c) for c in self.multiplicity_coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs or coeffs[-1] <= 0:
            raise ValueError("multiplicity polynomial needs a positive leading coefficient")
        exc = tuple(sorted((int(k), int(m)) for k, m in self.exceptions))
        idx = [k for k, _ in exc]
        if len(set(idx)) != len(idx):
            raise ValueError("exception indices must be distinct")
        for k, m in exc:
            if k < self.k0:
                raise ValueError(f"exception index {k} below k0={self.k0}")
            if m <= 0:
                raise ValueError(f"exception multiplicity must be positive, got {m}")
        object.__setattr__(self, "k0", int(self.k0))
        object.__setattr__(self, "multiplicity_coeffs", tuple(coeffs))
        object.__setattr__(self, "exceptions", exc)
        self._check_polynomial()

    def _check_polynomial(self):
        denom = math.lcm(*(c.denominator for c in self.multiplicity_coeffs))
        ints = [int(c * denom) for c in self.multiplicity_coeffs]
        skip = {k for k, _ in self.exceptions}
        for k in range(self.k0, self.k0 + _SAMPLE_SPAN + 1):
            if k in skip:
                continue
            v = 0
            for c in reversed(ints):
                v = v * k + c
            if v <= 0 or v % denom:
                raise ValueError(f"d({k}) = {Fraction(v, denom)} is not a positive integer")

    @property
    def degree(self) -> int:
        return len(self.multiplicity_coeffs) - 1

    @property
    def max_exception(self) -> int | None:
        return self.exceptions[-1][0] if self.exceptions else None

    def multiplicity(self, k: int) -> int:
        for idx, m in self.exceptions:
            if idx == k:
                return m
        return self.polynomial(k)

    def polynomial(self, k: int) -> int:
        """``d(k)`` from the polynomial alone, ignoring exceptions."""
        v = Fraction(0)
        for c in reversed(self.multiplicity_coeffs):
            v = v * k + c
        return int(v)


@dataclass(frozen=True)
class OperatorWord:
    """A product of shifted factors ``(k + shift) ** exponent``.

    Always canonical: equal shifts merged, shifts strictly increasing.
    """

    factors: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        merged: dict[Fraction, Fraction] = {}
        for shift, expo in self.factors:
            shift, expo = exact(shift), exact(expo)
            if expo <= 0:
                raise ValueError(f"factor exponents must be positive, got {expo}")
            merged[shift] = merged.get(shift, Fraction(0)) + expo
        if not merged:
            raise ValueError("an operator word needs at least one factor")
        object.__setattr__(self, "factors", tuple(sorted(merged.items())))

    @classmethod
    def of(cls, *factors) -> "OperatorWord":
        """``OperatorWord.of((0.5, 1), (2, 1))``."""
        return cls(tuple(factors))

    @property
    def order(self) -> Fraction:
        return sum((m for _, m in self.factors), Fraction(0))

    @property
    def shifts(self) -> tuple[Fraction, ...]:
        return tuple(a for a, _ in self.factors)

    def check_base(self, base: SpectralBase) -> None:
        for a, _ in self.factors:
            if base.k0 + a <= 0:
                raise ValueError(
                    f"k0 + shift = {base.k0 + a} <= 0: eigenvalue would not be positive"
                )

    def __mul__(self, other: "OperatorWord") -> "OperatorWord":
        return OperatorWord(self.factors + other.factors)

    def __pow__(self, p) -> "OperatorWord":
        return power(self, p)

    def __str__(self):
        return " * ".join(f"(k+{a})^{m}" for a, m in self.factors)


def product(words: Sequence[OperatorWord]) -> OperatorWord:
    words = list(words)
    if not words:
        raise ValueError("empty product is undefined")
    return OperatorWord(tuple(f for w in words for f in w.factors))


def power(word: OperatorWord, p) -> OperatorWord:
    p = exact(p)
    if p <= 0:
        raise ValueError(f"power must be positive, got {p}")
    return OperatorWord(tuple((a, m * p) for a, m in word.factors))


def log_eigenvalue(word: OperatorWord, base: SpectralBase, k: int) -> float:
    if k < base.k0:
        raise ValueError(f"index {k} below k0={base.k0}")
    return math.fsum(float(m) * math.log(k + float(a)) for a, m in word.factors)


def eigenvalue(word: OperatorWord, base: SpectralBase, k: int) -> float:
    if k < base.k0:
        raise ValueError(f"index {k} below k0={base.k0}")
    return math.prod((k + float(a)) ** float(m) for a, m in word.factors)


def multiplicity(base: SpectralBase, k: int) -> int:
    if k < base.k0:
        raise ValueError(f"index {k} below k0={base.k0}")
    return base.multiplicity(k)


@dataclass(frozen=True)
class CommutingFamily:
    """Named operator words on a shared spectral base."""

    base: SpectralBase
    operators: Mapping[str, OperatorWord] = field(default_factory=dict)

    def __post_init__(self):
        ops = dict(self.operators)
        if not ops:
            raise ValueError("a family needs at least one operator")
        for name, word in ops.items():
            if not isinstance(name, str) or not name:
                raise ValueError(f"invalid operator name {name!r}")
            word.check_base(self.base)
        object.__setattr__(self, "operators", ops)

    @classmethod
    def from_pairs(cls, base: SpectralBase, pairs: Iterable[tuple[str, OperatorWord]]):
        ops: dict[str, OperatorWord] = {}
        for name, word in pairs:
            if name in ops:
                raise ValueError(f"duplicate operator name {name!r}")
            ops[name] = word
        return cls(base, ops)

    @property
    def names(self) -> list[str]:
        return list(self.operators)

    def __getitem__(self, name: str) -> OperatorWord:
        try:
            return self.operators[name]
        except KeyError:
            raise KeyError(f"unknown operator {name!r}; have {self.names}") from None

    def words(self, names: Sequence[str]) -> list[OperatorWord]:
        return [self[n] for n in names]


FLAT = SpectralBase(k0=0, multiplicity_coeffs=(Fraction(1),))
# |D| + a on the circle: k = 0 once, every k >= 1 twice
CIRCLE = SpectralBase(k0=0, multiplicity_coeffs=(Fraction(2),), exceptions=((0, 1),))
# sqrt(Laplacian + 1/4) on the round 2-sphere has eigenvalue k + 1/2, multiplicity 2k + 1
SPHERE = SpectralBase(k0=0, multiplicity_coeffs=(Fraction(1), Fraction(2)))
