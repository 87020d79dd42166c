import pytest
from hypothesis import given, strategies as st

from raolab.poly import (LEX, ParseError, dim_forms, elim, monomial_basis, parse,
                         read_ideal_text, substitute, to_string, write_ideal_text)
from strategies import P, polys, ring

R = ring(3)


@given(polys(R), polys(R), polys(R))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R.zero()
    assert f * R.one() == f


@given(polys(R), polys(R))
def test_degree_of_product(f, g):
    if f.is_zero() or g.is_zero():
        assert (f * g).is_zero()
    else:
        assert (f * g).degree() == f.degree() + g.degree()


@given(polys(R), st.lists(st.integers(0, P - 1), min_size=3, max_size=3),
       polys(R))
def test_evaluation_is_a_homomorphism(f, pt, g):
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt) % P
    assert (f + g).evaluate(pt) == (f.evaluate(pt) + g.evaluate(pt)) % P


@given(polys(R, max_deg=4))
def test_print_parse_roundtrip(f):
    assert parse(to_string(f), R) == f


@given(polys(R), polys(R))
def test_leibniz(f, g):
    for i in range(3):
        assert (f * g).diff(i) == f.diff(i) * g + f * g.diff(i)


@given(polys(R, homogeneous=True, max_deg=4))
def test_euler_identity(f):
    if f.is_zero():
        return
    lhs = sum((R.var(i) * f.diff(i) for i in range(3)), R.zero())
    assert lhs == f.scale(f.degree())


def test_parser_features():
    f = parse("(x+y)^2 - 2*x*y + 3", R)
    assert f == parse("x0^2 + x1^2 + 3", R)
    assert parse("x0 - x0", R).is_zero()
    assert parse("-1", R) == R.const(P - 1)
    with pytest.raises(ParseError):
        parse("x0 +", R)
    with pytest.raises(ParseError):
        parse("x7", R)
    with pytest.raises(ParseError):
        parse("", R)


@pytest.mark.parametrize("n,t", [(3, 0), (3, 4), (4, 5), (2, 7)])
def test_basis_sizes(n, t):
    assert len(monomial_basis(ring(n), t)) == dim_forms(n, t)
    assert dim_forms(n, -1) == 0


def test_orders():
    for order in ("grevlex", LEX, elim(1)):
        Ro = R.with_order(order)
        basis = monomial_basis(Ro, 3)
        assert basis == sorted(basis, key=Ro.sort_key(), reverse=True)
    # grevlex: x1^2 > x0*x2 ; lex: x0*x2 > x1^2
    assert monomial_basis(R, 2).index((0, 2, 0)) < monomial_basis(R, 2).index((1, 0, 1))
    lexb = monomial_basis(R.with_order(LEX), 2)
    assert lexb.index((1, 0, 1)) < lexb.index((0, 2, 0))


def test_weighted_grading():
    Rw = ring(3, weights=(1, 1, 2))
    assert parse("x2 - x0^2", Rw).is_homogeneous()
    assert not parse("x2 - x0", Rw).is_homogeneous()


def test_substitute_twisted_cubic():
    S = ring(2)
    s, u = S.gens()
    images = [s ** 3, s * s * u, s * u * u, u ** 3]
    R4 = ring(4)
    q = parse("x0*x2 - x1^2", R4)
    assert substitute(q, images).is_zero()
    assert not substitute(parse("x0*x3 - x1^2", R4), images).is_zero()
    with pytest.raises(ValueError):
        substitute(q, [s, u, s * s, u])


def test_ideal_file_roundtrip():
    polys_ = [parse("x0^2 - 3*x1*x2", R), parse("x2^3", R)]
    text = write_ideal_text(R, polys_)
    R2, back = read_ideal_text("# comment\n" + text)
    assert R2.n_vars == 3 and R2.p == P
    assert back == polys_
    with pytest.raises(ParseError):
        read_ideal_text("x0 + 1\n")
