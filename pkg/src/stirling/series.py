"""Term generators and truncated sums for the two asymptotic series of ``ln z!``.

``STIRLING_ORIGINAL`` is the series in ``Z = z + 1/2``::

    ln z! ~ Z ln Z - Z + ln sqrt(2 pi) - Z * sum_n (1 - 2**(1-2n)) B_2n / (2n (2n-1) Z**2n)

``DE_MOIVRE`` is the popular form in ``z``::

    ln z! ~ (z + 1/2) ln z - z + ln sqrt(2 pi) + z * sum_n B_2n / (2n (2n-1) z**2n)

Coefficients are built exactly as fractions and rounded to float once.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache

from . import _hp
from .bernoulli import bernoulli
from .branch import normalize_branch
from .errors import DomainError

__all__ = [
    "N_CAP",
    "SeriesKind",
    "stirling_coefficient",
    "demoivre_coefficient",
    "stirling_term",
    "demoivre_term",
    "series_prefix",
    "truncated_lnfactorial",
    "optimal_truncation_index",
    "coefficients",
    "iter_terms",
    "series_sum",
]

N_CAP = 100

LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


class SeriesKind(enum.Enum):
    STIRLING_ORIGINAL = "stirling"
    DE_MOIVRE = "demoivre"


def stirling_coefficient(n: int) -> Fraction:
    """``(1 - 2**(1-2n)) B_2n / (2n (2n-1))`` as an exact fraction."""
    if n < 1:
        raise ValueError(f"term index must be >= 1, got {n}")
    return (1 - Fraction(1, 2 ** (2 * n - 1))) * bernoulli(2 * n) / (2 * n * (2 * n - 1))


def demoivre_coefficient(n: int) -> Fraction:
    """``B_2n / (2n (2n-1))`` as an exact fraction."""
    if n < 1:
        raise ValueError(f"term index must be >= 1, got {n}")
    return bernoulli(2 * n) / (2 * n * (2 * n - 1))


@lru_cache(maxsize=None)
def _coefficients(kind: SeriesKind, n_max: int) -> tuple[float, ...]:
    coef = stirling_coefficient if kind is SeriesKind.STIRLING_ORIGINAL else demoivre_coefficient
    return tuple(float(coef(n)) for n in range(1, n_max + 1))


def coefficients(kind: SeriesKind, n_terms: int) -> tuple[float, ...]:
    """First ``n_terms`` coefficients of ``kind`` rounded to float."""
    # Cache on a rounded-up size so that growing requests share work.
    size = max(N_CAP, n_terms)
    return _coefficients(kind, size)[:n_terms]


def _term(c: float, n: int, w: complex) -> complex:
    w = complex(w)
    if w == 0:
        raise DomainError("series argument must be nonzero")
    try:
        return c / w ** (2 * n)
    except (OverflowError, ZeroDivisionError):
        # |w|**(2n) out of range in one direction or the other.
        if abs(w) < 1:
            return complex(math.inf, math.inf)
        return 0j


def stirling_term(n: int, Z: complex) -> complex:
    """Summand ``(1 - 2**(1-2n)) B_2n / (2n (2n-1) Z**2n)``.

    A non-finite return value signals overflow; iteration should stop there.
    """
    return _term(coefficients(SeriesKind.STIRLING_ORIGINAL, n)[n - 1], n, Z)


def demoivre_term(n: int, z: complex) -> complex:
    """Summand ``B_2n / (2n (2n-1) z**2n)``."""
    return _term(coefficients(SeriesKind.DE_MOIVRE, n)[n - 1], n, z)


def iter_terms(kind: SeriesKind, w: complex, n_max: int = N_CAP):
    """Yield terms 1..n_max at argument ``w`` (``Z`` or ``z`` per ``kind``).

    Stops early, without yielding it, at the first non-finite or zero term.
    """
    w = complex(w)
    if w == 0:
        raise DomainError("series argument must be nonzero")
    inv2 = 1.0 / (w * w)
    power = 1.0 + 0j
    for c in coefficients(kind, n_max):
        power *= inv2
        t = c * power
        if t == 0 or not (math.isfinite(t.real) and math.isfinite(t.imag)):
            return
        yield t


def series_sum(kind: SeriesKind, w: complex, n_terms: int) -> complex:
    """Plain sum of the first ``n_terms`` terms (no shift multiplier)."""
    if n_terms <= 0:
        return 0j
    w = complex(w)
    inv2 = 1.0 / (w * w)
    power = 1.0 + 0j
    acc = 0j
    for c in coefficients(kind, n_terms):
        power *= inv2
        acc += c * power
    return acc


def _prefix_hp(kind: SeriesKind, z: complex):
    zh = _hp.hp(z)
    HP = _hp.HP
    if kind is SeriesKind.STIRLING_ORIGINAL:
        Z = zh + HP.mpf(0.5)
        if Z == 0:
            raise DomainError("logarithm of zero: z = -1/2")
        return Z * HP.log(Z) - Z + _hp.LN_SQRT_2PI
    if zh == 0:
        raise DomainError("logarithm of zero: z = 0")
    return (zh + HP.mpf(0.5)) * HP.log(zh) - zh + _hp.LN_SQRT_2PI


def series_prefix(kind: SeriesKind, z: complex) -> complex:
    """Closed-form head of the series, principal logarithm.

    >>> round(series_prefix(SeriesKind.DE_MOIVRE, 1).real, 10)
    -0.0810614668
    """
    return _hp.to_complex(_prefix_hp(kind, z))


def combine(kind: SeriesKind, z: complex, tail: complex):
    """Head plus (multiplier times) ``tail`` in extended precision, unnormalized."""
    HP = _hp.HP
    head = _prefix_hp(kind, z)
    if kind is SeriesKind.STIRLING_ORIGINAL:
        return head - (_hp.hp(z) + HP.mpf(0.5)) * _hp.hp(tail)
    return head + _hp.hp(z) * _hp.hp(tail)


def truncated_lnfactorial(kind: SeriesKind, z: complex, n_terms: int) -> complex:
    """``ln z!`` from the first ``n_terms`` series terms, branch-normalized.

    With ``kind=STIRLING_ORIGINAL`` and ``n_terms=1`` this is
    ``Z ln Z - Z + ln sqrt(2 pi) - 1/(24 Z)`` reduced to the principal range.
    """
    if n_terms < 0:
        raise ValueError(f"n_terms must be nonnegative, got {n_terms}")
    z = complex(z)
    w = z + 0.5 if kind is SeriesKind.STIRLING_ORIGINAL else z
    if w == 0:
        raise DomainError(f"logarithm of zero at z = {z!r}")
    tail = series_sum(kind, w, n_terms)
    return _hp.to_principal(normalize_branch(combine(kind, z, tail)))


@lru_cache(maxsize=None)
def _log_abs_coefficients(kind: SeriesKind) -> tuple[float, ...]:
    return tuple(math.log(abs(c)) for c in coefficients(kind, N_CAP))


def optimal_truncation_index(kind: SeriesKind, Zmag: float) -> int:
    """Index in ``1..N_CAP`` of the smallest-magnitude term at ``|w| = Zmag``.

    Ties resolve to the smaller index.
    """
    if not Zmag > 0:
        raise ValueError(f"Zmag must be positive, got {Zmag}")
    log_mag = math.log(Zmag)
    logs = _log_abs_coefficients(kind)
    best_n, best = 1, math.inf
    for n, lc in enumerate(logs, start=1):
        v = lc - 2 * n * log_mag
        if v < best:
            best_n, best = n, v
    return best_n

