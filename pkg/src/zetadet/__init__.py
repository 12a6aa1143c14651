"""Spectral zeta functions, zeta-regularized determinants and multiplicative anomalies.

Numerical route: :mod:`zetadet.specfun` (Hurwitz zeta and friends),
:mod:`zetadet.spectra` (operator families), :mod:`zetadet.engine`
(continuation of spectral zeta functions) and :mod:`zetadet.anomaly`.
Exact route: :mod:`zetadet.symbolic`.
"""

from .anomaly import (
    AnomalyReport,
    Residual,
    anomaly_report,
    delta_n,
    delta_words,
    verify_corollary,
    verify_equal_order,
    verify_lemma,
    verify_reduction,
    verify_theorem,
    verify_zero_anomaly,
)
from .config import load_config
from .engine import ContinuationParams, ZetaResult, log_det, spectral_zeta, tail_coefficients, zeta_at_zero
from .errors import ContinuationFailure, DomainError, PoleError
from .spectra import CIRCLE, FLAT, SPHERE, CommutingFamily, OperatorWord, SpectralBase, power, product

__version__ = "0.1.0"
