"""Extended-precision context for the large-magnitude parts of a result.

The leading terms ``Z ln Z - Z`` dominate ``ln z!`` and reach magnitudes in the
thousands on the grids of interest, so they are formed (and combined with the
small series corrections) at 113 bits before a single rounding to double.
A private context is used so that nothing here depends on, or disturbs, the
global ``mpmath.mp`` settings.
"""

from __future__ import annotations

import math

import mpmath

HP = mpmath.MPContext()
HP.prec = 113

LN_SQRT_2PI = HP.log(2 * HP.pi) / 2


def hp(z) -> "mpmath.mpc":
    z = complex(z)
    return HP.mpc(z.real, z.imag)


def to_complex(w) -> complex:
    return complex(float(w.real), float(w.imag))


def to_principal(w) -> complex:
    """Round a principal-branch value to double, keeping ``Im`` in ``(-pi_d, pi_d]``.

    An imaginary part just above ``-pi`` can round to ``-pi_d``; it is moved
    one ulp inward so the result stays a fixed point of ``normalize_branch``.
    """
    c = to_complex(w)
    if c.imag == -math.pi:
        c = complex(c.real, math.nextafter(-math.pi, 0.0))
    return c
