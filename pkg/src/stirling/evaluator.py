"""Top-level evaluation of the principal-branch log-factorial ``ln(z!)``.

The primary route sums Stirling's original series in ``Z = z + 1/2`` with the
Levin u-transform and subtracts the unwinding multiple of ``2 pi i``.  Where
the transform does not settle, the shift recurrence takes over: the De Moivre
series is evaluated at ``z + m`` with ``Re(z + m) >= 10`` and the logarithms
``ln(z + j)``, ``j = 1..m`` are subtracted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import _hp
from .branch import normalize_branch
from .errors import DomainError, EvaluationError, PoleError
from .levin import EPS, LevinConfig, Status, levin_u
from .series import (
    SeriesKind,
    combine,
    iter_terms,
    optimal_truncation_index,
    series_sum,
)

__all__ = [
    "Method",
    "EvalOutcome",
    "ACCEPT_REL",
    "POLE_TOL",
    "SHIFT_TARGET",
    "is_pole",
    "shift_for",
    "lnfactorial_levin",
    "lnfactorial_shifted",
    "shift_outcome",
    "lnfactorial",
]

POLE_TOL = 1e-12
SHIFT_TARGET = 10.0
# A converged Levin value is accepted by lnfactorial only if its error
# estimate is at roundoff level relative to max(1, |value|).
ACCEPT_REL = 64 * EPS


class Method(enum.Enum):
    LEVIN_STIRLING = "levin"
    SHIFT_RECURRENCE = "shift"
    BINET_INTEGRAL = "binet"


@dataclass(frozen=True)
class EvalOutcome:
    value: complex
    method: Method
    status: Status
    err_estimate: float
    terms_used: int

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def is_pole(z: complex) -> bool:
    """True if ``z`` is within ``POLE_TOL`` of a negative integer."""
    z = complex(z)
    if z.real > -0.5:
        return False
    return abs(z - round(z.real)) <= POLE_TOL


def _check_finite(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    return z


def _reflection_gap(Z: complex) -> float:
    # Left of the imaginary axis the series misses the term ln(1 + e^{+-2 pi i Z})
    # from the reflection formula; its size is the largest error the
    # summed series can have there.
    if Z.real >= 0:
        return 0.0
    q = math.exp(-2 * math.pi * abs(Z.imag))
    return -math.log1p(-q) if q < 1 else math.inf


def lnfactorial_levin(z: complex, cfg: LevinConfig | None = None) -> EvalOutcome:
    """Levin-accelerated Stirling series with unwinding correction.

    A ``FAILED`` status means the transform did not stabilize; the value is
    then the last estimate and should not be trusted.
    """
    z = _check_finite(z)
    if is_pole(z):
        raise PoleError(z)
    Z = z + 0.5
    if Z == 0:
        raise DomainError("z = -1/2 is outside the Levin route (Z = 0)")
    acc = levin_u(iter_terms(SeriesKind.STIRLING_ORIGINAL, Z), cfg)
    if not (math.isfinite(acc.value.real) and math.isfinite(acc.value.imag)):
        return EvalOutcome(complex(math.nan, math.nan), Method.LEVIN_STIRLING,
                           Status.FAILED, math.inf, acc.terms_used)
    value = _hp.to_principal(normalize_branch(combine(SeriesKind.STIRLING_ORIGINAL, z, acc.value)))
    err = abs(Z) * acc.err_estimate + EPS * abs(value) + _reflection_gap(Z)
    return EvalOutcome(value, Method.LEVIN_STIRLING, acc.status, err, acc.terms_used)


def shift_for(z: complex) -> int:
    """Smallest ``m >= 0`` with ``Re(z + m) >= SHIFT_TARGET``."""
    return max(0, math.ceil(SHIFT_TARGET - complex(z).real))


def _shifted_hp(z: complex, m: int, n_terms: int):
    HP = _hp.HP
    w = z + m
    tail = series_sum(SeriesKind.DE_MOIVRE, w, n_terms)
    total = combine(SeriesKind.DE_MOIVRE, w, tail)
    zh = _hp.hp(z)
    for j in range(1, m + 1):
        total -= HP.log(zh + j)
    return normalize_branch(total)


def lnfactorial_shifted(z: complex, m: int, n_terms: int) -> complex:
    """``ln z!`` from the De Moivre series at ``z + m`` and ``m`` downward steps.

    Requires ``Re(z + m) >= 10`` so that ``n_terms`` near the optimal
    truncation index gives full double accuracy.

    >>> abs(lnfactorial_shifted(5, 10, 5) - math.log(120)) < 1e-12
    True
    """
    z = _check_finite(z)
    if m < 0 or n_terms < 0:
        raise ValueError("m and n_terms must be nonnegative")
    if (z + m).real < SHIFT_TARGET:
        raise ValueError(f"Re(z + m) must be >= {SHIFT_TARGET}, got {(z + m).real}")
    if is_pole(z):
        raise PoleError(z)
    return _hp.to_principal(_shifted_hp(z, m, n_terms))


def shift_outcome(z: complex) -> EvalOutcome:
    """Shift recurrence with automatic shift and optimal truncation."""
    z = _check_finite(z)
    if is_pole(z):
        raise PoleError(z)
    m = shift_for(z)
    w = z + m
    n = optimal_truncation_index(SeriesKind.DE_MOIVRE, abs(w))
    value = lnfactorial_shifted(z, m, n)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise EvaluationError(f"shift recurrence produced {value!r} at z = {z!r}")
    nxt = series_sum(SeriesKind.DE_MOIVRE, w, n + 1) - series_sum(SeriesKind.DE_MOIVRE, w, n)
    err = abs(w * nxt) + EPS * (abs(value) + m)
    return EvalOutcome(value, Method.SHIFT_RECURRENCE, Status.CONVERGED, err, n)


def lnfactorial(z: complex, cfg: LevinConfig | None = None) -> EvalOutcome:
    """Evaluate ``ln(z!)`` on the principal branch.

    Tries the Levin route first and falls back to the shift recurrence when
    the transform fails, or when it converges near the negative real axis to
    a value whose error estimate is above roundoff.  ``method`` reports
    which route produced the value.

    >>> out = lnfactorial(11 + 0.5j)
    >>> out.method.value, round(out.value.real, 10)
    ('levin', 17.4914485209)
    """
    z = _check_finite(z)
    if is_pole(z):
        raise PoleError(z)
    if z != -0.5:
        out = lnfactorial_levin(z, cfg)
        if out.converged and out.err_estimate <= ACCEPT_REL * max(1.0, abs(out.value)):
            return out
    return shift_outcome(z)
