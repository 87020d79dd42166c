"""Hypothesis strategies shared by the polynomial and ideal suites."""

from hypothesis import strategies as st

from raolab.gf import FieldSpec
from raolab.poly import Polynomial, RingSpec, monomial_basis

P = 32003


def ring(n=3, p=P, **kw):
    return RingSpec(n, FieldSpec(p), **kw)


@st.composite
def polys(draw, R, max_deg=3, max_terms=5, homogeneous=False):
    if homogeneous:
        d = draw(st.integers(0, max_deg))
        mons = monomial_basis(R, d)
    else:
        mons = [m for d in range(max_deg + 1) for m in monomial_basis(R, d)]
    chosen = draw(st.lists(st.sampled_from(mons), min_size=0, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(1, R.p - 1), min_size=len(chosen), max_size=len(chosen)))
    return Polynomial(R, dict(zip(chosen, coeffs)))


@st.composite
def forms(draw, R, degrees=(1, 2), max_terms=4):
    d = draw(st.sampled_from(degrees))
    mons = monomial_basis(R, d)
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(1, R.p - 1), min_size=len(chosen), max_size=len(chosen)))
    return Polynomial(R, dict(zip(chosen, coeffs)))
