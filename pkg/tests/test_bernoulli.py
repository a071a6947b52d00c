import importlib
import threading
from fractions import Fraction
from math import comb

import pytest

from stirling.bernoulli import bernoulli, bernoulli_upto

bmod = importlib.import_module("stirling.bernoulli")


def akiyama_tanigawa(n_max):
    # Independent route to B_n; yields the B_1 = +1/2 convention, fixed below.
    out = []
    a = [Fraction(0)] * (n_max + 1)
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n_max >= 1:
        out[1] = -out[1]
    return out


@pytest.mark.parametrize("n, expected", [
    (0, Fraction(1)),
    (2, Fraction(1, 6)),
    (3, Fraction(0)),
    (4, Fraction(-1, 30)),
])
def test_examples(n, expected):
    assert bernoulli(n) == expected


def test_upto_examples():
    assert bernoulli_upto(0) == [Fraction(1)]
    assert bernoulli_upto(4) == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    assert bernoulli_upto(12)[-1] == Fraction(-691, 2730)


def test_zero_is_zero_over_one():
    b = bernoulli(5)
    assert (b.numerator, b.denominator) == (0, 1)


def test_matches_independent_algorithm():
    assert bernoulli_upto(60) == akiyama_tanigawa(60)


def test_upto_agrees_with_single_calls_and_is_idempotent():
    first = list(bernoulli_upto(40))
    assert first == [bernoulli(n) for n in range(41)]
    assert list(bernoulli_upto(40)) == first


def test_odd_indices_vanish():
    assert all(bernoulli(n) == 0 for n in range(3, 201, 2))


def test_even_signs_alternate():
    for n in range(1, 101):
        assert (bernoulli(2 * n) > 0) == (n % 2 == 1)


def test_recurrence_residual_is_exactly_zero():
    b = bernoulli_upto(200)
    for n in range(1, 201):
        assert sum(comb(n + 1, k) * b[k] for k in range(n + 1)) == 0


def test_lowest_terms_positive_denominator():
    for b in bernoulli_upto(80):
        assert b.denominator > 0
        assert Fraction(b.numerator, b.denominator) == b


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        bernoulli(-1)


def test_concurrent_growth_is_consistent(monkeypatch):
    monkeypatch.setattr(bmod, "_cache", [Fraction(1), Fraction(-1, 2)])
    expected = akiyama_tanigawa(120)
    results = []

    def worker(n):
        results.append((n, bernoulli(n)))

    threads = [threading.Thread(target=worker, args=(n,)) for n in range(0, 121, 7)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(v == expected[n] for n, v in results)
    assert bernoulli_upto(120) == expected
