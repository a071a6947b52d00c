"""Levin's u-transform for accelerating (possibly divergent) series.

For partial sums ``S_m = a_1 + ... + a_m`` the transform of order ``k`` at
start index ``n`` is::

            sum_j (-1)^j C(k,j) (beta+n+j)^(k-2) / (beta+n+k)^(k-1) * S_{n+j} / a_{n+j}
    u_k = -----------------------------------------------------------------------------
            sum_j (-1)^j C(k,j) (beta+n+j)^(k-2) / (beta+n+k)^(k-1) *      1 / a_{n+j}

with ``j = 0..k``.  The start index is fixed at ``n = 1`` and ``k`` is swept
until successive values agree.
"""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .errors import ZeroTermError

__all__ = [
    "Status",
    "LevinConfig",
    "AccelResult",
    "partial_sums",
    "levin_u",
    "u_direct",
    "u_recursive",
]

EPS = sys.float_info.epsilon
_UNDERFLOW_GUARD = sys.float_info.min * 1e6


class Status(enum.Enum):
    CONVERGED = "converged"
    FAILED = "failed"


@dataclass(frozen=True)
class LevinConfig:
    beta: float = 1.0
    k_max: int = 40
    rel_tol: float = 10 * EPS
    stabilization_count: int = 2

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.k_max < 2:
            raise ValueError(f"k_max must be >= 2, got {self.k_max}")
        if not 0 < self.rel_tol < 1:
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if self.stabilization_count < 1:
            raise ValueError("stabilization_count must be positive")


@dataclass(frozen=True)
class AccelResult:
    """Outcome of :func:`levin_u`.

    ``err_estimate`` is the last gap ``|u_k - u_{k-1}|``.  When ``status`` is
    ``FAILED`` the value is only the best estimate seen and carries no
    accuracy guarantee.
    """

    value: complex
    status: Status
    order_used: int
    err_estimate: float
    terms_used: int = 0

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def partial_sums(terms: Iterable[complex], m: int) -> list[complex]:
    """Return ``[S_1, ..., S_m]``."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    out = []
    acc = 0
    for _, t in zip(range(m), terms):
        acc += t
        out.append(acc)
    if len(out) < m:
        raise ValueError(f"sequence supplied only {len(out)} of {m} terms")
    return out


def _csum(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def _weights(k: int, beta: float, n: int) -> list[float]:
    top = beta + n + k
    return [
        (-1) ** j * comb(k, j) * ((beta + n + j) / top) ** (k - 2) / top
        for j in range(k + 1)
    ]


def u_direct(S: Sequence[complex], a: Sequence[complex], k: int,
             beta: float = 1.0, n: int = 1) -> tuple[complex, complex]:
    """Order-``k`` transform from the explicit double sums.

    ``S`` and ``a`` are 0-based lists holding ``S_1, S_2, ...`` and
    ``a_1, a_2, ...``.  Returns ``(u_k, denominator)``; both sums are scaled
    by the smallest-magnitude term involved, which leaves the ratio
    unchanged and keeps every summand bounded.
    """
    idx = range(n - 1, n + k)
    if any(a[i] == 0 for i in idx):
        raise ZeroTermError("zero term cannot serve as a remainder estimate")
    pivot = min((a[i] for i in idx), key=abs)
    w = _weights(k, beta, n)
    ratios = [w[j] * (pivot / a[i]) for j, i in enumerate(idx)]
    num = _csum(r * S[i] for r, i in zip(ratios, idx))
    den = _csum(ratios)
    if den == 0:
        return complex(math.nan, math.nan), den
    return num / den, den


def u_recursive(S: Sequence[complex], a: Sequence[complex], k: int,
                beta: float = 1.0, n: int = 1) -> complex:
    """Order-``k`` transform by the standard three-term recursion on
    numerator and denominator tables.  Used to cross-check :func:`u_direct`.
    """
    N = [S[m - 1] / ((beta + m) * a[m - 1]) for m in range(n, n + k + 1)]
    D = [1 / ((beta + m) * a[m - 1]) for m in range(n, n + k + 1)]
    for kk in range(k):
        for i in range(len(N) - 1):
            m = n + i
            f = (beta + m) / (beta + m + kk + 1) * ((beta + m + kk) / (beta + m + kk + 1)) ** (kk - 1)
            N[i] = N[i + 1] - f * N[i]
            D[i] = D[i + 1] - f * D[i]
        N.pop()
        D.pop()
    return N[0] / D[0]


def levin_u(terms: Iterable[complex], cfg: LevinConfig | None = None) -> AccelResult:
    """Accelerate ``sum a_j`` given the terms ``a_1, a_2, ...``.

    Converged once ``|u_k - u_(k-1)| <= rel_tol * |u_k|`` holds for
    ``stabilization_count`` consecutive orders.  A sequence that runs out,
    a non-finite term, a degenerate denominator or reaching ``k_max``
    all end in ``FAILED``.
    """
    cfg = cfg or LevinConfig()
    it = iter(terms)
    a: list[complex] = []
    S: list[complex] = []

    def pull(count):
        while len(a) < count:
            try:
                t = complex(next(it))
            except StopIteration:
                return False
            if t == 0:
                raise ZeroTermError(f"term a_{len(a) + 1} is zero")
            if not (math.isfinite(t.real) and math.isfinite(t.imag)):
                return False
            a.append(t)
            S.append(t if not S else S[-1] + t)
        return True

    if not pull(1):
        return AccelResult(complex(math.nan, math.nan), Status.FAILED, 0, math.inf, 0)
    prev = S[0]
    best = S[0]
    gap = math.inf
    hits = 0
    k_done = 0
    for k in range(1, cfg.k_max + 1):
        if not pull(k + 1):
            break
        u, den = u_direct(S, a, k, cfg.beta)
        if abs(den) < _UNDERFLOW_GUARD or not (math.isfinite(u.real) and math.isfinite(u.imag)):
            break
        k_done = k
        best = u
        if k > 1:
            gap = abs(u - prev)
            if gap <= cfg.rel_tol * abs(u):
                hits += 1
                if hits >= cfg.stabilization_count:
                    return AccelResult(u, Status.CONVERGED, k, gap, k + 1)
            else:
                hits = 0
        prev = u
    return AccelResult(best, Status.FAILED, k_done, gap, len(a))
