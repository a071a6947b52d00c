"""Unwinding numbers and reduction of log-sums to the principal branch.

The principal logarithm has imaginary part in ``(-pi, pi]``.  A sum of
logarithms (or an asymptotic series standing in for one) can land on any
sheet; ``normalize_branch`` subtracts the right multiple of ``2*pi*i``.

Both functions accept Python complex numbers and :mod:`mpmath` complex
numbers; the arithmetic is carried out in the type of the argument.
"""

from __future__ import annotations

import math

import mpmath
from mpmath.ctx_mp_python import _mpc, _mpf

from .errors import DomainError

__all__ = ["unwinding_number", "normalize_branch"]

_TWO_PI = 2.0 * math.pi


def _imag_part(w):
    if isinstance(w, (_mpc, _mpf)):
        im = w.imag
        if not (mpmath.isfinite(w.real) and mpmath.isfinite(im)):
            raise DomainError(f"non-finite argument {w!r}")
        return im
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError(f"non-finite argument {w!r}")
    return w.imag


def unwinding_number(w) -> int:
    """Return ``ceil((Im w - pi) / (2 pi))``.

    >>> unwinding_number(4j), unwinding_number(-4j), unwinding_number(1 + 1j)
    (1, -1, 0)
    """
    im = _imag_part(w)
    if isinstance(im, _mpf):
        ctx = im.context
        return int(ctx.ceil((im - ctx.pi) / (2 * ctx.pi)))
    if -math.pi < im <= math.pi:
        # Decided by comparison so that the principal range maps to 0 exactly.
        return 0
    return math.ceil((im - math.pi) / _TWO_PI)


def normalize_branch(w):
    """Return ``w - 2*pi*i*K(w)``, with imaginary part in ``(-pi, pi]``.

    Values already on the principal branch are returned unchanged, which
    makes the operation exactly idempotent.
    """
    k = unwinding_number(w)
    if isinstance(w, (_mpc, _mpf)):
        if k == 0:
            return w
        ctx = w.context
        return ctx.mpc(w.real, w.imag - 2 * ctx.pi * k)
    w = complex(w)
    if k == 0:
        return w
    im = w.imag - _TWO_PI * k
    # Rounding can leave the result a hair outside the interval.
    if im > math.pi:
        alt = w.imag - _TWO_PI * (k + 1)
        im = alt if alt > -math.pi else math.pi
    elif im <= -math.pi:
        alt = w.imag - _TWO_PI * (k - 1)
        im = alt if alt <= math.pi else math.nextafter(-math.pi, 0.0)
    return complex(w.real, im)
