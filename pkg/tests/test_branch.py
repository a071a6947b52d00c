import math
import random

import mpmath
import pytest
from hypothesis import given, strategies as st

from stirling.branch import normalize_branch, unwinding_number
from stirling.errors import DomainError

EPS = 2.0 ** -52
finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
complexes = st.builds(complex, finite, finite)


@pytest.mark.parametrize("w, k", [(1 + 1j, 0), (4j, 1), (-4j, -1), (math.pi * 1j, 0), (-math.pi * 1j, -1)])
def test_unwinding_examples(w, k):
    assert unwinding_number(w) == k


def test_normalize_examples():
    assert normalize_branch(2 + 0j) == 2 + 0j
    w = normalize_branch(1 + 4j)
    assert w.real == 1
    assert w.imag == pytest.approx(4 - 2 * math.pi, abs=1e-15)
    assert normalize_branch(complex(0, math.pi)) == complex(0, math.pi)


@pytest.mark.parametrize("bad", [complex(math.inf, 0), complex(0, math.nan), complex(1, -math.inf)])
def test_non_finite_rejected(bad):
    with pytest.raises(DomainError):
        unwinding_number(bad)
    with pytest.raises(DomainError):
        normalize_branch(bad)


@given(complexes)
def test_idempotent(w):
    once = normalize_branch(w)
    assert normalize_branch(once) == once


@given(complexes)
def test_real_part_unchanged_and_range(w):
    out = normalize_branch(w)
    assert out.real == w.real
    assert -math.pi - 4 * EPS < out.imag <= math.pi


@given(st.builds(complex, st.floats(-1e3, 1e3), st.floats(-1e3, 1e3)), st.integers(-10, 10))
def test_equivariant_under_full_turns(w, m):
    shifted = complex(w.real, w.imag + 2 * math.pi * m)
    a, b = normalize_branch(shifted), normalize_branch(w)
    # Either the same representative or the two sides of the +-pi seam.
    gap = abs(a - b)
    seam = abs(abs(a.imag - b.imag) - 2 * math.pi)
    assert min(gap, seam) <= 4 * EPS * max(abs(w), 1.0) * (abs(m) + 1)


@given(finite)
def test_real_fixpoint(x):
    assert normalize_branch(complex(x, 0.0)) == complex(x, 0.0)


def test_million_random_points_in_range():
    rng = random.Random(20261014)
    lo = -math.pi - 4 * EPS
    for _ in range(10 ** 6):
        w = complex(rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4))
        out = normalize_branch(w)
        assert lo < out.imag <= math.pi


def test_boundary_values():
    for im in (math.pi, -math.pi, math.nextafter(math.pi, 4), math.nextafter(-math.pi, -4), 3 * math.pi):
        out = normalize_branch(complex(0, im))
        assert -math.pi - 4 * EPS < out.imag <= math.pi
        assert normalize_branch(out) == out


def test_mpmath_arguments():
    ctx = mpmath.MPContext()
    ctx.prec = 113
    w = ctx.mpc(1, 4)
    assert unwinding_number(w) == 1
    out = normalize_branch(w)
    assert abs(out.imag - (4 - 2 * ctx.pi)) < ctx.mpf(2) ** -100
    assert normalize_branch(ctx.mpc(2, 0)) == ctx.mpc(2, 0)
