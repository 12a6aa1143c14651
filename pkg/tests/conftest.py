import sys
import random
from fractions import Fraction

import mpmath
import pytest

from zetadet.spectra import CIRCLE, FLAT, SPHERE, CommutingFamily, OperatorWord, SpectralBase

# (k + 1)^2-fold degenerate index, as for the 3-sphere
S3 = SpectralBase(k0=0, multiplicity_coeffs=(Fraction(1), Fraction(2), Fraction(1)))

BASES = {"flat": FLAT, "circle": CIRCLE, "sphere": SPHERE, "s3": S3}


def random_word(rng: random.Random, max_factors: int = 3) -> OperatorWord:
    """Shifts in [0.3, 3], orders in [0.5, 3], both on a 1/100 grid."""
    n = rng.randint(1, max_factors)
    return OperatorWord(
        tuple((Fraction(rng.randint(30, 300), 100), Fraction(rng.randint(50, 300), 100)) for _ in range(n))
    )


def random_family(rng: random.Random, n: int, base: SpectralBase, max_factors: int = 3) -> CommutingFamily:
    return CommutingFamily(base, {f"A{i + 1}": random_word(rng, max_factors) for i in range(n)})


def pole_term_delta(words, base) -> Fraction:
    """Anomaly from the Laurent data alone, in exact arithmetic.

    Only the ``c_j''(0) / (2M)`` pole terms are nonlinear in the word, so
    ``delta = 1/2 sum_r d_r [sum_i L_i^2 / m_i - (sum_i L_i)^2 / sum_i m_i]_{r+1}``
    with ``L_i(x) = sum_t m_t log(1 + a_t x)``.  No zeta value is evaluated.
    """
    top = base.degree + 1

    def log_series(w):
        return [Fraction(0)] + [
            (-1) ** (p + 1) * sum(m * a**p for a, m in w.factors) / p for p in range(1, top + 1)
        ]

    def square(c):
        return [sum(c[i] * c[j - i] for i in range(j + 1)) for j in range(top + 1)]

    series = [log_series(w) for w in words]
    orders = [w.order for w in words]
    total = [sum(col) for col in zip(*series)]
    q = [Fraction(0)] * (top + 1)
    for c, m in zip(series, orders):
        q = [x + y / m for x, y in zip(q, square(c))]
    q = [x - y / sum(orders) for x, y in zip(q, square(total))]
    return sum(d * q[r + 1] for r, d in enumerate(base.multiplicity_coeffs)) / 2


def direct_sum(word, base, s, n=2000):
    """Partial sum to ``n`` plus an Euler-Maclaurin tail built on mpmath quadrature."""
    with mpmath.workdps(30):
        return _direct_sum(word, base, s, n)


def _direct_sum(word, base, s, n):
    factors = [(mpmath.mpf(a.numerator) / a.denominator, mpmath.mpf(m.numerator) / m.denominator) for a, m in word.factors]
    coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in base.multiplicity_coeffs]

    def g(x):
        return mpmath.fprod((x + a) ** (-m * s) for a, m in factors)

    def f(x):
        return mpmath.polyval(coeffs[::-1], x) * g(x)

    head = mpmath.fsum(base.multiplicity(k) * g(k) for k in range(base.k0, n))
    tail = mpmath.quad(f, [n, 2 * n, mpmath.inf]) + f(n) / 2
    tail -= mpmath.diff(f, n, 1) / 12 - mpmath.diff(f, n, 3) / 720 + mpmath.diff(f, n, 5) / 30240
    return float(head + tail)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[number])
