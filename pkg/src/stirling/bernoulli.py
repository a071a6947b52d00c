"""Exact Bernoulli numbers with a process-wide, grow-only cache.

Values are :class:`fractions.Fraction` instances, so they are always in
lowest terms with a positive denominator and zero is ``Fraction(0, 1)``.
The convention ``B_1 = -1/2`` is used.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import lcm

__all__ = ["ExactRatio", "bernoulli", "bernoulli_upto"]

ExactRatio = Fraction

_cache: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
_lock = threading.Lock()


def _extend(n_max: int) -> None:
    # Appends B_len.. B_n_max from sum_{k=0}^{n} C(n+1, k) B_k = 0, skipping
    # the odd indices >= 3 which are known to vanish.
    with _lock:
        cache = list(_cache)
        for n in range(len(cache), n_max + 1):
            if n % 2:
                cache.append(Fraction(0))
                continue
            ks = [0, 1] + list(range(2, n, 2))
            # Integer accumulation over a common denominator; Fraction.__add__
            # would renormalize at every step.
            den = lcm(*(cache[k].denominator for k in ks))
            row = [1]
            for k in range(n):
                row.append(row[-1] * (n + 1 - k) // (k + 1))
            acc = sum(row[k] * cache[k].numerator * (den // cache[k].denominator) for k in ks)
            cache.append(Fraction(-acc, den * (n + 1)))
        # Publish only fully built values.
        if len(cache) > len(_cache):
            _cache.extend(cache[len(_cache):])


def bernoulli(n: int) -> Fraction:
    """Return the Bernoulli number ``B_n`` exactly.

    >>> bernoulli(12)
    Fraction(-691, 2730)
    """
    if n < 0:
        raise ValueError(f"Bernoulli index must be nonnegative, got {n}")
    if n >= len(_cache):
        _extend(n)
    return _cache[n]


def bernoulli_upto(n_max: int) -> list[Fraction]:
    """Return ``[B_0, ..., B_n_max]``."""
    if n_max < 0:
        raise ValueError(f"Bernoulli index must be nonnegative, got {n_max}")
    if n_max >= len(_cache):
        _extend(n_max)
    return _cache[: n_max + 1]
