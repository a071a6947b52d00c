"""Quadrature of the Binet-like remainder integral of Stirling's series.

For ``Re Z > 0``::

    ln z! = Z ln Z - Z + ln sqrt(2 pi) - J(Z),
    J(Z)  = int_0^inf (1/t) (1/t - 1/(2 sinh(t/2))) exp(-t Z) dt,

with ``Z = z + 1/2``.  ``J`` is evaluated by adaptive 15-point Gauss-Kronrod
quadrature on ``[0, T]`` plus an analytic bound on the discarded tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _hp
from .bernoulli import bernoulli
from .branch import normalize_branch
from .errors import AccuracyError, DomainError
from .series import SeriesKind, _prefix_hp

__all__ = [
    "QuadratureConfig",
    "T_SWITCH",
    "HEAD_TERMS",
    "maclaurin_coefficients",
    "binet_integrand",
    "binet_integral",
    "lnfactorial_binet",
]

# Below T_SWITCH the kernel comes from its Maclaurin series (radius 2 pi);
# above it the closed form has lost at most ~1 digit to cancellation.
T_SWITCH = 1.0
HEAD_TERMS = 10


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-12
    t_max_factor: float = 40.0
    max_panels: int = 2 ** 14

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if not self.t_max_factor > 0:
            raise ValueError(f"t_max_factor must be positive, got {self.t_max_factor}")
        if self.max_panels < 1:
            raise ValueError("max_panels must be positive")


def maclaurin_coefficients(n_terms: int = 4) -> list[Fraction]:
    """Coefficients ``c_n`` of ``(1/t)(1/t - 1/(2 sinh(t/2))) = sum c_n t^(2n-2)``.

    ``c_n = (1 - 2**(1-2n)) B_2n / (2n)!``, starting 1/24, -7/5760, 31/967680.
    """
    return [
        (1 - Fraction(1, 2 ** (2 * n - 1))) * bernoulli(2 * n) / math.factorial(2 * n)
        for n in range(1, n_terms + 1)
    ]


_HEAD = [float(c) for c in maclaurin_coefficients(HEAD_TERMS)]


def _kernel(t):
    t = np.asarray(t, dtype=float)
    small = t <= T_SWITCH
    out = np.empty_like(t)
    ts = t[small]
    t2 = ts * ts
    acc = np.zeros_like(ts)
    for c in reversed(_HEAD):
        acc = acc * t2 + c
    out[small] = acc
    tb = t[~small]
    # 1/(2 sinh(t/2)) written to stay finite for large t.
    out[~small] = (1.0 / tb - np.exp(-0.5 * tb) / -np.expm1(-tb)) / tb
    return out


def binet_integrand(t, Z: complex):
    """``(1/t)(1/t - 1/(2 sinh(t/2))) exp(-t Z)``, finite at ``t = 0``.

    Accepts a scalar or an array of ``t``; returns the same shape.
    """
    Z = complex(Z)
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    val = _kernel(t) * np.exp(-t * Z)
    return complex(val[0]) if scalar else val


# Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_W_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W_GAUSS = np.zeros(15)
_W_GAUSS[1:7:2] = _WG[:3]
_W_GAUSS[7] = _WG[3]
_W_GAUSS[9:15:2] = _WG[2::-1]


def _gk15(lo: np.ndarray, hi: np.ndarray, Z: complex):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    t = mid[:, None] + half[:, None] * _NODES[None, :]
    f = binet_integrand(t.ravel(), Z).reshape(t.shape)
    k = half * (f @ _W_KRONROD)
    g = half * (f @ _W_GAUSS)
    return k, np.abs(k - g)


def _upper_limit(Z: complex, cfg: QuadratureConfig) -> float:
    re = Z.real
    T = cfg.t_max_factor / max(re, 1.0)
    # Kernel is at most 1/24, so the tail beyond T is below e^{-T re}/(24 re).
    need = math.log(1.0 / (24.0 * re * 0.25 * cfg.abs_tol)) / re
    return max(T, need)


def binet_integral(Z: complex, cfg: QuadratureConfig | None = None) -> complex:
    """``J(Z)`` to an estimated absolute error of ``cfg.abs_tol``.

    >>> round(binet_integral(0.5).real, 12)
    0.072364942925
    """
    cfg = cfg or QuadratureConfig()
    Z = complex(Z)
    if not Z.real > 0:
        raise DomainError(f"binet_integral requires Re Z > 0, got Z = {Z!r}")
    T = _upper_limit(Z, cfg)
    tail = math.exp(-T * Z.real) / (24.0 * Z.real)
    budget = 0.5 * cfg.abs_tol

    width = min(math.pi / (4.0 * abs(Z.imag) + 1.0), T / 16.0)
    n0 = math.ceil(T / width)
    exhausted = n0 > cfg.max_panels
    edges = np.linspace(0.0, T, min(n0, cfg.max_panels) + 1)
    lo, hi = edges[:-1], edges[1:]
    done_val = 0j
    done_err = 0.0
    n_accepted = 0
    while True:
        val, err = _gk15(lo, hi, Z)
        bad = err > budget * (hi - lo) / T
        done_val += complex(val[~bad].sum())
        done_err += float(err[~bad].sum())
        n_accepted += int((~bad).sum())
        if not bad.any():
            break
        pending = int(bad.sum())
        if exhausted or n_accepted + 2 * pending > cfg.max_panels:
            estimate = done_val + complex(val[bad].sum())
            raise AccuracyError(
                f"panel budget {cfg.max_panels} exhausted for Z = {Z!r}",
                estimate=estimate,
                err_estimate=done_err + float(err[bad].sum()) + tail,
            )
        mid = 0.5 * (lo[bad] + hi[bad])
        lo = np.concatenate([lo[bad], mid])
        hi = np.concatenate([mid, hi[bad]])
    if exhausted or done_err + tail > cfg.abs_tol:
        raise AccuracyError(f"tolerance {cfg.abs_tol} not met for Z = {Z!r}",
                            estimate=done_val, err_estimate=done_err + tail)
    return done_val


def lnfactorial_binet(z: complex, cfg: QuadratureConfig | None = None) -> complex:
    """``ln z!`` on the principal branch via the integral, for ``Re z > -1/2``."""
    z = complex(z)
    if not z.real > -0.5:
        raise DomainError(f"Binet route requires Re z > -1/2, got z = {z!r}")
    J = binet_integral(z + 0.5, cfg)
    return _hp.to_principal(normalize_branch(_prefix_hp(SeriesKind.STIRLING_ORIGINAL, z) - _hp.hp(J)))
