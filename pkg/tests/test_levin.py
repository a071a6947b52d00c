import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from stirling.errors import ZeroTermError
from stirling.levin import (
    EPS,
    LevinConfig,
    Status,
    levin_u,
    partial_sums,
    u_direct,
    u_recursive,
)
from stirling.series import SeriesKind, iter_terms


def geometric(r, count=80):
    return [r ** j for j in range(count)]


def test_divergent_geometric_demo():
    res = levin_u(geometric(-2.0))
    assert res.status is Status.CONVERGED
    assert abs(res.value - 1 / 3) < 1e-9
    assert f"{res.value.real:.10f}" == "0.3333333333"


def test_convergent_geometric():
    res = levin_u(geometric(0.5))
    assert res.converged
    assert res.value == pytest.approx(2.0, abs=1e-14)


def test_stirling_terms_at_reference_point():
    Z = 11.5 + 0.5j
    res = levin_u(iter_terms(SeriesKind.STIRLING_ORIGINAL, Z))
    assert res.converged
    value = (0.5 * math.log(2 * math.pi) + Z * complex(math.log(abs(Z)), math.atan2(Z.imag, Z.real))
             - Z - Z * res.value)
    assert abs(value - (17.4914485209 + 1.22148798j)) < 1e-8


def test_stirling_terms_fail_in_lozenge():
    res = levin_u(iter_terms(SeriesKind.STIRLING_ORIGINAL, 1.5 + 0.1j))
    assert res.status is Status.FAILED


def test_partial_sums_examples():
    assert partial_sums([1, 1, 1, 1], 3) == [1, 2, 3]
    assert partial_sums(geometric(-2), 4) == [1, -1, 3, -5]
    ps = partial_sums([1 / j ** 2 for j in range(1, 10)], 3)
    assert ps[:2] == [1, 1.25]
    assert ps[2] == pytest.approx(1.3611111111111112, abs=1e-15)
    with pytest.raises(ValueError):
        partial_sums([1], 0)
    with pytest.raises(ValueError):
        partial_sums([1, 2], 3)


@pytest.mark.parametrize("r", [-2, 0.5, -0.9, 1.5j])
def test_geometric_exact_from_second_order(r):
    a = geometric(r, 12)
    S = partial_sums(a, 12)
    lim = 1 / (1 - r)
    for k in range(2, 8):
        assert abs(u_direct(S, a, k)[0] - lim) <= 100 * EPS * max(1, abs(lim)) ** 2 * k


@pytest.mark.parametrize("r", [-2, 0.5, -0.9, 1.5j])
def test_first_order_is_not_exact_on_geometric(r):
    # With the (beta+n+j)^(k-2) weighting, order 1 models S_n - S as
    # proportional to (beta+n) a_n, which a geometric series does not satisfy.
    a = geometric(r, 4)
    S = partial_sums(a, 4)
    assert abs(u_direct(S, a, 1)[0] - 1 / (1 - r)) > 1e-3


def test_random_geometric_second_order():
    rng = random.Random(7)
    for _ in range(2000):
        while True:
            r = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if abs(1 - r) >= 0.1 and abs(r) >= 1e-3:
                break
        a = geometric(r, 3)
        lim = 1 / (1 - r)
        assert abs(u_direct(partial_sums(a, 3), a, 2)[0] - lim) <= 100 * EPS * max(1, abs(lim)) ** 2


@settings(max_examples=200)
@given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False),
       st.sampled_from([-2.0, 0.5, -0.9, 1.5j, 0.3 + 0.3j]))
def test_scaling_linearity(c, r):
    # Fixed-order transforms: the stopping rule itself sits at roundoff level,
    # so whether it fires can change with the last bit of the input.
    a = geometric(r, 10)
    ca = [c * t for t in a]
    for k in range(1, 8):
        u, _ = u_direct(partial_sums(a, 10), a, k)
        cu, _ = u_direct(partial_sums(ca, 10), ca, k)
        assert abs(cu - c * u) <= 1e-12 * abs(c) * max(1, abs(u))


@pytest.mark.parametrize("Z", [11.5 + 0.5j, 3.5 + 1j, 1.5 + 0.1j, 40 - 30j])
def test_direct_and_recursive_agree(Z):
    a = list(iter_terms(SeriesKind.STIRLING_ORIGINAL, Z, 25))
    S = partial_sums(a, len(a))
    for k in range(1, min(20, len(a) - 1)):
        d, _ = u_direct(S, a, k)
        r = u_recursive(S, a, k)
        assert abs(d - r) <= 1e3 * EPS * abs(d)


def test_direct_and_recursive_agree_on_random_sequences():
    rng = random.Random(3)
    for _ in range(200):
        a = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) * 0.7 ** j for j in range(10)]
        S = partial_sums(a, 10)
        for k in (1, 2, 4):
            d, _ = u_direct(S, a, k)
            assert abs(d - u_recursive(S, a, k)) <= 1e3 * EPS * max(abs(d), abs(S[-1]))


def test_zero_term_raises():
    with pytest.raises(ZeroTermError):
        levin_u([1.0, 0.5, 0.0, 0.125])


def test_k_max_exhaustion_fails():
    res = levin_u((float(math.factorial(j)) * (-1) ** j * 3.0 ** j for j in range(200)),
                  LevinConfig(k_max=3, rel_tol=1e-15))
    assert res.status is Status.FAILED
    assert res.order_used == 3


def test_short_sequence_fails():
    res = levin_u([1.0, 0.5])
    assert res.status is Status.FAILED


def test_non_finite_term_stops():
    res = levin_u([1.0, 0.5, math.inf, 0.1])
    assert res.status is Status.FAILED


def test_converged_error_within_tolerance():
    cfg = LevinConfig()
    res = levin_u(geometric(-0.9), cfg)
    assert res.converged
    assert res.err_estimate <= cfg.rel_tol * abs(res.value)


@pytest.mark.parametrize("kwargs", [dict(beta=0), dict(k_max=1), dict(rel_tol=0), dict(rel_tol=1),
                                    dict(stabilization_count=0)])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        LevinConfig(**kwargs)


def test_beta_changes_path_not_limit():
    for beta in (0.5, 1.0, 2.0):
        res = levin_u(geometric(-2.0), LevinConfig(beta=beta))
        assert res.converged
        assert abs(res.value - 1 / 3) < 1e-14
