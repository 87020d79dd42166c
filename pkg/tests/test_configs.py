import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from raolab import configs as cf
from raolab.audit import component_ideal, groebner_ideal
from raolab.ideal import Ideal, quotient
from raolab.lefschetz import h_vector_of_points, h_vector_of_section
from raolab.restriction import FLAT_FAT, LINE

P = 32003


@pytest.mark.parametrize("make", [
    lambda s: cf.general_skew_lines(6, s),
    lambda s: cf.quadric_ruling_lines(6, s),
    lambda s: cf.quadric_plus_general(5, 2, s),
    lambda s: cf.flat_fat_points_plane(4, 3, s),
    lambda s: cf.rational_curve(5, s),
    lambda s: cf.bidegree_curve_on_quadric(1, 3, s),
])
def test_constructors_validate_on_100_seeds(make):
    for seed in range(100):
        make(seed)   # raises on validation failure or resample exhaustion


def test_arith_genus_zero_on_many_seeds():
    for seed in range(20):
        cfg = cf.arith_genus_zero(seed)
        assert cfg.degree == 10 and cfg.arithmetic_genus() == 0 and len(cfg.nodes) == 2


@settings(max_examples=20)
@given(st.sampled_from(sorted(cf.RECIPES)), st.integers(0, 2**31))
def test_determinism_and_roundtrip(recipe, seed):
    params = {"general-skew-lines": {"r": 4}, "quadric-ruling-lines": {"r": 4},
              "quadric-plus-general": {"r": 4, "n": 2}, "flat-fat-points-plane": {"s": 3, "m": 2},
              "rational-curve": {"d": 4}, "bidegree-curve-on-quadric": {"a": 1, "b": 3},
              "arith-genus-0": {}}[recipe]
    a = cf.build(recipe, params, seed)
    b = cf.build(recipe, params, seed)
    assert cf.dumps(a) == cf.dumps(b)
    assert cf.dumps(cf.from_json(cf.to_json(a))) == cf.dumps(a)


def test_recipe_errors():
    with pytest.raises(cf.UnsupportedRecipe):
        cf.build("no-such-recipe", {})
    with pytest.raises(ValueError, match="missing parameter"):
        cf.build("general-skew-lines", {})
    with pytest.raises(cf.UnsupportedRecipe):
        cf.bidegree_curve_on_quadric(2, 3)
    with pytest.raises(ValueError):
        cf.from_json({"ambient": "P5", "components": []})
    with pytest.raises(ValueError):
        cf.from_json({"components": [{"kind": "conic"}]})


def test_ruling_lines_lie_on_quadric():
    cfg = cf.quadric_ruling_lines(5, 1)
    Q = cfg.ring.parse(cf.QUADRIC)
    for i in range(5):
        assert component_ideal(cfg, i).contains(Q)
    other = cf.quadric_ruling_lines(3, 1, ruling=1)
    assert all(component_ideal(other, i).contains(Q) for i in range(3))


def test_general_lines_avoid_quadric():
    cfg = cf.quadric_plus_general(4, 3, 2)
    Q = cfg.ring.parse(cf.QUADRIC)
    assert [component_ideal(cfg, i).contains(Q) for i in range(7)] == [True] * 4 + [False] * 3


@pytest.mark.parametrize("r", [3, 4])
def test_ruling_lines_link_to_other_ruling(r):
    """(Q, F) : I_C is r lines of the opposite ruling, each meeting every line of C once."""
    cfg = cf.quadric_ruling_lines(r, 1)
    I = groebner_ideal(cfg)
    R = I.ring
    F = cf._random_element(I, r, np.random.default_rng(5))
    residual = quotient(Ideal(R, [R.parse(cf.QUADRIC), F]), I)
    assert residual.degree() == r and residual.krull_dim() == 2
    assert residual.hilbert_function(8).hilbert_polynomial == (r, 1)
    for i in range(r):
        meet = residual + component_ideal(cfg, i)
        assert meet.krull_dim() == 1 and meet.degree() == r


def _h0(k):
    return max(0, k + 1)


def _h1(k):
    return max(0, -k - 1)


@pytest.mark.parametrize("a,b", [(1, 3), (1, 4), (1, 5), (3, 1)])
def test_bidegree_curve_module_matches_kunneth(a, b):
    """M_t = h^1(O_Q(t-a, t-b)) by the Kunneth formula on P^1 x P^1."""
    from raolab.restriction import rao_profile
    cfg = cf.bidegree_curve_on_quadric(a, b, 3)
    assert cfg.degree == a + b
    prof = rao_profile(cfg, range(0, 8))
    for t in range(8):
        assert prof.dim(t) == _h0(t - a) * _h1(t - b) + _h1(t - a) * _h0(t - b)


def test_flat_fat_points_structure():
    cfg = cf.flat_fat_points_plane(3, [1, 2, 3], 4)
    assert [c.multiplicity for c in cfg.components] == [1, 2, 3]
    assert all(c.kind == FLAT_FAT for c in cfg.components)
    assert h_vector_of_points(cfg).degree == 6


def test_specialization_shapes():
    lines = cf.general_skew_lines(10, 2)
    L = cf.generic_plane_form(np.random.default_rng(1), P)
    sp = cf.specialize(lines, L, 3, 2, seed=5)
    assert len(sp.x2_lines.components) == 8
    assert all(c.kind == LINE for c in sp.x2_lines.components)
    assert sum(c.multiplicity for c in sp.x1.components) == 8 + 2 * 3
    assert h_vector_of_points(sp.x1).degree == 14
    assert h_vector_of_section(sp.x2_lines, L, 2).degree == 16
