from math import comb

import numpy as np
from hypothesis import given, settings, strategies as st

from raolab.gf import rank
from raolab.hilbert import HilbertSeries, hilbert_numerator, minimalize
from raolab.ideal import Ideal
from raolab.poly import LEX, monomial_basis
from strategies import P, forms, ring

R = ring(4)


def _linear_algebra_dim(gens, t):
    """dim I_t from the span of all monomial multiples of the generators."""
    basis = monomial_basis(R, t)
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in gens:
        d = t - g.degree()
        if d < 0:
            continue
        for mono in monomial_basis(R, d):
            h = g.mul_monomial(mono)
            row = np.zeros(len(basis), dtype=np.int64)
            for e, c in h.terms.items():
                row[index[e]] = c
            rows.append(row)
    return rank(np.array(rows), P) if rows else 0


monomials = st.lists(st.tuples(*[st.integers(0, 3)] * 3), min_size=1, max_size=5)


def _count(mons, t, n=3):
    basis = [m for m in monomial_basis(ring(n), t)]
    return sum(1 for b in basis if not any(all(x >= y for x, y in zip(b, g)) for g in mons))


@given(monomials)
def test_numerator_matches_counting(mons):
    hs = HilbertSeries(3, tuple(hilbert_numerator(mons, 3)))
    for t in range(9):
        assert hs.value(t) == _count(mons, t)


@given(monomials)
def test_minimalize_preserves_series(mons):
    assert hilbert_numerator(minimalize(mons), 3) == hilbert_numerator(mons, 3)


@given(monomials)
def test_stable_from(mons):
    hs = HilbertSeries(3, tuple(hilbert_numerator(mons, 3)))
    k = hs.krull_dim
    if k <= 0:
        return
    # beyond stable_from the value is a polynomial of degree k-1: k-th differences vanish
    s = hs.stable_from()
    vals = [hs.value(t) for t in range(s, s + k + 3)]
    for _ in range(k):
        vals = [b - a for a, b in zip(vals, vals[1:])]
    assert all(v == 0 for v in vals)


@settings(max_examples=15)
@given(st.lists(forms(R, degrees=(1, 2, 3)), min_size=1, max_size=3))
def test_order_independence_and_linear_algebra(gens):
    I = Ideal(R, gens)
    J = Ideal(R.with_order(LEX), [g.change_ring(R.with_order(LEX)) for g in gens])
    for t in range(6):
        assert I.dim_quotient(t) == J.dim_quotient(t)
        assert I.dim_ideal(t) == _linear_algebra_dim(gens, t)


def test_quadric_surface():
    Q = Ideal.parse(R, ["x0*x3 - x1*x2"])
    assert [Q.dim_quotient(t) for t in range(5)] == [(t + 1) ** 2 for t in range(5)]
    assert Q.krull_dim() == 3 and Q.degree() == 2


def test_unit_and_zero():
    assert Ideal.unit(R).krull_dim() == -1
    assert Ideal.unit(R).dim_quotient(3) == 0
    Z = Ideal(R, [])
    assert Z.krull_dim() == 4 and Z.dim_quotient(3) == comb(6, 3)


def test_hilbert_data_json():
    hd = Ideal.parse(R, ["x0", "x1"]).hilbert_function(4)
    assert [hd.dims_quotient[t] for t in range(5)] == [1, 2, 3, 4, 5]
    assert hd.to_json()["degree"] == 1 and hd.to_json()["dim"] == 1
