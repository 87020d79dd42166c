"""Pipelines that recompute the reference tables, keyed by short tags.

Each pipeline returns a JSON-ready dict of computed values.  Expected values
live in ``data/goldens.json``; :func:`compare` diffs the two.
"""

from __future__ import annotations

import json
from importlib import resources
from math import comb

import numpy as np

from . import configs as cf
from .gf import DEFAULT_PRIME, FieldSpec
from .ideal import Ideal, intersect_all
from .lefschetz import (genericity_test_flatfat, h_vector_of_points, h_vector_of_section,
                        hilbert_function_of_section, slp_range_verdict, wlp_verdict)
from .poly import RingSpec
from .restriction import (h1_section, ideal_dimension, multiplication_rank, rao_profile,
                          section_scheme_dimension)


def _plane_form(seed, p):
    return cf.generic_plane_form(np.random.default_rng((int(seed), 99)), p)


def lines29_sections(p=DEFAULT_PRIME, seed=0, trials=5, budget=None) -> dict:
    cfg = cf.general_skew_lines(29, seed, p)
    L = _plane_form(seed, p)
    z2_ideal = [section_scheme_dimension(cfg, L, 2, t - 1) for t in range(3, 9)]
    z1_rel = [section_scheme_dimension(cfg, L, 1, t) - comb(t + 2, 3) for t in (7, 8)]
    return {
        "h_vector_z1": list(h_vector_of_section(cfg, L, 1).entries),
        "h_vector_z2": list(h_vector_of_section(cfg, L, 2).entries),
        "dim_I_z2_shifted_t3_to_8": z2_ideal,
        "dim_I_z1_in_plane_t7_t8": z1_rel,
        "h1_I_z2_6": h1_section(cfg, L, 2, 6),
    }


def lines29_z3(p=DEFAULT_PRIME, seed=0, trials=5, budget=None) -> dict:
    cfg = cf.general_skew_lines(29, seed, p)
    L = _plane_form(seed, p)
    hf = hilbert_function_of_section(cfg, L, 3, 9)
    formula = [min(87, 3 * comb(j + 1, 2) + 1) for j in range(10)]
    return {"hf_z3": hf, "matches_formula": hf == formula}


def lines25_specialization(p=DEFAULT_PRIME, seed=0, trials=5, budget=None) -> dict:
    cfg = cf.general_skew_lines(25, seed, p)
    L = _plane_form(seed, p)
    out = {}
    for k in (0, 1, 2):
        sp = cf.specialize(cfg, L, 3, k, seed=(int(seed), k))
        out[f"k{k}"] = [list(h_vector_of_points(sp.x1).entries),
                        list(h_vector_of_section(sp.x2_lines, L, 2).entries)]
    return out


def general_lines_slp(p=DEFAULT_PRIME, seed=0, trials=5, budget=None) -> dict:
    out = {}
    for r in range(4, 13):
        cfg = cf.general_skew_lines(r, seed, p)
        prof = rao_profile(cfg, with_socle=False)
        out[str(r)] = [slp_range_verdict(cfg, m, trials, seed, prof).satisfied for m in (1, 2, 3)]
    return out


def lines_on_quadric(p=DEFAULT_PRIME, seed=0, trials=5, budget=None) -> dict:
    out = {}
    for r in range(4, 11):
        cfg = cf.quadric_ruling_lines(r, seed, p)
        prof = rao_profile(cfg)
        supp = prof.support
        dims = [prof.dim(t) for t in range(supp[0], supp[-1] + 1)]
        socle = {t: d for t, d in prof.socle.items() if d}
        out[str(r)] = {
            "dim_M0": prof.dim(0),
            "support": [supp[0], supp[-1]],
            "symmetric": dims == dims[::-1],
            "socle_degrees": sorted(socle),
            "wlp": wlp_verdict(cfg, trials, seed, prof).verdict,
        }
    return out


def all_but_one(p=DEFAULT_PRIME, seed=0, trials=5, budget=None) -> dict:
    out = {}
    for r in range(6, 11):
        cfg = cf.quadric_plus_general(r, 1, seed, p)
        prof = rao_profile(cfg, with_socle=False)
        ok = all(prof.dim(t) == (t + 1) * (r + 1) - comb(t + 3, 3) + comb(t + 1, 3) - (t - 1)
                 for t in range(1, r))
        out[str(r)] = {"formula": ok, "wlp": wlp_verdict(cfg, trials, seed, prof).verdict}
    return out


def all_but_two(s: int, p=DEFAULT_PRIME, seed=0, trials=5, budget=None) -> dict:
    cfg = cf.quadric_plus_general(s - 2, 2, seed, p)
    prof = rao_profile(cfg, with_socle=False)
    rep = wlp_verdict(cfg, trials, seed, prof)
    row = next(r for r in rep.rows if r.t == 3)
    return {"dim_M2": prof.dim(2), "dim_M3": prof.dim(3), "verdict": rep.verdict,
            "failing_degrees": rep.failing_degrees, "rank_2_to_3": row.rank,
            "samples_failing_at_3": sum(
                multiplication_rank(prof, L, 1, 3) < min(row.dim_src, row.dim_tgt)
                for _, L in rep.samples)}


def quadric_10_plus_3(p=DEFAULT_PRIME, seed=0, trials=5, budget=None) -> dict:
    cfg = cf.quadric_plus_general(10, 3, seed, p)
    prof = rao_profile(cfg, with_socle=False)
    L = _plane_form(seed, p)
    rep = wlp_verdict(cfg, trials, seed, prof)
    return {"dim_M3": prof.dim(3), "dim_M4": prof.dim(4),
            "dim_I_z_in_plane_4": section_scheme_dimension(cfg, L, 1, 4) - comb(6, 3),
            "dim_I_C_4": ideal_dimension(cfg, 4),
            "fails_3_to_4": 4 in rep.failing_degrees}


def quadric_11_plus_4(p=DEFAULT_PRIME, seed=0, trials=5, budget=None) -> dict:
    cfg = cf.quadric_plus_general(11, 4, seed, p)
    prof = rao_profile(cfg, with_socle=False)
    rep = wlp_verdict(cfg, trials, seed, prof)
    row = next(r for r in rep.rows if r.t == 4)
    return {"dim_M3": prof.dim(3), "dim_M4": prof.dim(4), "rank_3_to_4": row.rank}


def arith_genus_0(p=DEFAULT_PRIME, seed=0, trials=5, budget=None) -> dict:
    cfg = cf.arith_genus_zero(seed, p)
    prof = rao_profile(cfg, range(0, 8), with_socle=False)
    rep = wlp_verdict(cfg, trials, seed, prof)
    return {"dims_t0_to_3": [prof.dim(t) for t in range(4)],
            "arithmetic_genus": cfg.arithmetic_genus(), "degree": cfg.degree,
            "failing_degrees": [t for t in rep.failing_degrees if t <= 3]}


def flat_fat(p=DEFAULT_PRIME, seed=0, trials=3, budget=None) -> dict:
    out = {}
    for m in (1, 2, 3, 4):
        out[str(m)] = [genericity_test_flatfat(s, m, trials, seed, p)["generic"] for s in range(1, 11)]
    return out


def cubic_intersection(p=DEFAULT_PRIME, seed=0, trials=5, budget=None) -> dict:
    R = RingSpec(3, FieldSpec(p), names=("x", "y", "z"))
    kw = {} if budget is None else {"budget": budget}
    parts = [Ideal.parse(R, g, **kw)
             for g in (["(x+y)^3", "z"], ["(x+z)^3", "y"], ["(y-z)^3", "x"])]
    K = intersect_all(parts)
    return {"dim_degree_3": K.dim_ideal(3), "contains_xyz": K.contains(R.parse("x*y*z")),
            "dim_degree_2": K.dim_ideal(2)}


def liaison(p=DEFAULT_PRIME, seed=0, trials=5, budget=None) -> dict:
    res = cf.liaison_pipeline(seed, p, budget=budget)
    return {"degrees": list(res.degrees), "dim_I_C3_5": res.dim_I5, "smooth": res.smooth}


PIPELINES = {
    "lines29-sections": lines29_sections,
    "lines29-z3": lines29_z3,
    "lines25-specialization": lines25_specialization,
    "general-lines-slp": general_lines_slp,
    "lines-on-quadric": lines_on_quadric,
    "all-but-one": all_but_one,
    "all-but-two-s10": lambda **kw: all_but_two(10, **kw),
    "all-but-two-s11": lambda **kw: all_but_two(11, **kw),
    "all-but-two-s12": lambda **kw: all_but_two(12, **kw),
    "quadric-10-plus-3": quadric_10_plus_3,
    "quadric-11-plus-4": quadric_11_plus_4,
    "arith-genus-0": arith_genus_0,
    "flat-fat": flat_fat,
    "cubic-intersection": cubic_intersection,
    "liaison-triple-line": liaison,
}


def goldens() -> dict:
    text = resources.files("raolab").joinpath("data/goldens.json").read_text()
    return json.loads(text)["goldens"]


def expected(tag: str) -> dict:
    """Reference and derived expected values for ``tag``, merged."""
    entry = goldens()[tag]
    return {**entry.get("reference", {}), **entry.get("derived", {})}


def compare(computed: dict, expected: dict) -> list:
    """List of (key, expected, computed) for every mismatching expected key."""
    diffs = []
    for key, want in expected.items():
        got = computed.get(key)
        if isinstance(want, dict) and isinstance(got, dict):
            diffs += [(f"{key}.{k}", w, g) for k, w, g in compare(got, want)]
        elif got != want:
            diffs.append((key, want, got))
    return diffs


def run(tag: str, p: int = DEFAULT_PRIME, seed=0, trials: int = 5, budget=None) -> dict:
    if tag not in PIPELINES:
        raise KeyError(tag)
    return PIPELINES[tag](p=p, seed=seed, trials=trials, budget=budget)
