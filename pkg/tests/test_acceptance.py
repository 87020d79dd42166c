"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import time
from math import comb

import numpy as np

from acceptance_log import check
from raolab import configs as cf
from raolab import reproduce as rp
from raolab.audit import cross_engine_audit
from raolab.gf import SECOND_PRIME, nullspace, rank
from raolab.ideal import Ideal
from raolab.lefschetz import genericity_test_flatfat, slp_range_verdict, wlp_verdict
from raolab.poly import LEX, RingSpec
from raolab.restriction import multiplication_rank, rao_profile

SEEDS = (0, 1, 2)


def timed(fn, *a, **kw):
    t = time.perf_counter()
    out = fn(*a, **kw)
    return out, time.perf_counter() - t


def test_01_sections_of_29_lines():
    got, dt = timed(rp.lines29_sections)
    ok = (got["h_vector_z1"] == [1, 2, 3, 4, 5, 6, 7, 1]
          and got["h_vector_z2"] == [1, 3, 5, 7, 9, 11, 13, 9]
          and got["dim_I_z2_shifted_t3_to_8"] == [1, 4, 10, 20, 35, 62]
          and got["dim_I_z1_in_plane_t7_t8"] == [7, 16]
          and got["h1_I_z2_6"] == 9 and dt < 5)
    check(1, "29 general lines: h-vectors of Z1, Z2, ideal column, h1", ok, f"{dt:.2f}s")


def test_02_z3_hilbert_function():
    got, dt = timed(rp.lines29_z3)
    hf = got["hf_z3"]
    ok = (hf[:9] == [1, 4, 10, 19, 31, 46, 64, 85, 87]
          and all(v == min(87, 3 * comb(j + 1, 2) + 1) for j, v in enumerate(hf)) and dt < 5)
    check(2, "Hilbert function of Z3 for 29 lines equals min(87, 3C(j+1,2)+1)", ok,
          f"{hf}, {dt:.2f}s")


def test_03_specialization():
    got = rp.lines25_specialization()
    want = {"k0": [[1, 2, 3, 4, 5, 6, 4], [1, 3, 5, 7, 9, 11, 13, 1]],
            "k1": [[1, 2, 3, 4, 5, 6, 6], [1, 3, 5, 7, 9, 11, 12]],
            "k2": [[1, 2, 3, 4, 5, 6, 7, 1], [1, 3, 5, 7, 9, 11, 10]]}
    check(3, "25 lines: h-vectors before and after specializing 1 and 2 lines", got == want)


def test_04_general_lines_slp():
    t0 = time.perf_counter()
    bad = []
    for seed in SEEDS:
        for r in range(4, 13):
            cfg = cf.general_skew_lines(r, seed)
            prof = rao_profile(cfg, with_socle=False)
            for m in (1, 2, 3):
                rep = slp_range_verdict(cfg, m, 5, seed, prof)
                if not rep.satisfied:
                    bad.append((seed, r, m, rep.verdict))
    dt = time.perf_counter() - t0
    check(4, "general lines r=4..12, m=1,2,3: maximal rank across 3 seeds",
          not bad and dt < 60, f"{dt:.1f}s, failures {bad}")


def test_05_lines_on_quadric():
    bad = []
    for r in range(4, 11):
        cfg = cf.quadric_ruling_lines(r, r)
        prof = rao_profile(cfg)
        dims = [prof.dim(t) for t in range(r - 1)]
        socle = {t for t, d in prof.socle.items() if d}
        ok = (prof.dim(0) == r - 1 and prof.support == list(range(r - 1))
              and dims == dims[::-1] and socle == {r - 2}
              and wlp_verdict(cfg, 5, 0, prof).verdict == "holds")
        if not ok:
            bad.append(r)
    check(5, "ruling lines r=4..10: M_0, support, symmetry, socle, WLP", not bad, f"bad {bad}")


def test_06_all_but_one():
    bad = []
    for r in range(6, 11):
        cfg = cf.quadric_plus_general(r, 1, r)
        prof = rao_profile(cfg, with_socle=False)
        formula = all(prof.dim(t) == (t + 1) * (r + 1) - comb(t + 3, 3) + comb(t + 1, 3) - (t - 1)
                      for t in range(1, r))
        if not (formula and wlp_verdict(cfg, 5, 0, prof).verdict == "holds"):
            bad.append(r)
    check(6, "r ruling lines + 1 general, r=6..10: dimension formula and WLP", not bad)


def test_07_all_but_two_failure():
    details = []
    ok = True
    for s in (10, 11, 12):
        cfg = cf.quadric_plus_general(s - 2, 2, s)
        prof = rao_profile(cfg, with_socle=False)
        rep = wlp_verdict(cfg, 8, s, prof)
        want = min(prof.dim(2), prof.dim(3))
        fails = [multiplication_rank(prof, L, 1, 3) < want for _, L in rep.samples]
        ok &= (prof.dim(2) == 3 * s - 10 and prof.dim(3) == 4 * s - 20
               and len(fails) >= 5 and all(fails))
        details.append(f"s={s}: {prof.dim(2)},{prof.dim(3)} fails {sum(fails)}/{len(fails)}")
    check(7, "s-2 ruling + 2 general, s=10,11,12: dims and 2->3 failure for every L", ok,
          "; ".join(details))


def test_08_remark_tables():
    a, b = rp.quadric_10_plus_3(), rp.quadric_11_plus_4()
    ok = (a == {"dim_M3": 32, "dim_M4": 31, "dim_I_z_in_plane_4": 3, "dim_I_C_4": 1,
                "fails_3_to_4": True}
          and b == {"dim_M3": 40, "dim_M4": 40, "rank_3_to_4": 38})
    check(8, "10+3 and 11+4 configurations: dims, ideal dims, ranks", ok, f"{a} {b}")


def test_09_arith_genus_zero():
    got = rp.arith_genus_0()
    ok = got["dims_t0_to_3"] == [0, 7, 11, 11] and got["failing_degrees"] == [3] \
        and got["arithmetic_genus"] == 0
    check(9, "(1,7) curve + two incident lines: dims 0,7,11,11 and WLP fails 2->3", ok, str(got))


def test_10_flat_fat_points():
    mismatched, evidence = [], []
    for m in (1, 2, 3):
        for s in range(1, 11):
            generic = genericity_test_flatfat(s, m, trials=3)["generic"]
            predicted = m <= 2 or s >= 3
            if generic != predicted:
                mismatched.append((s, m))
    for s in range(1, 11):
        generic = genericity_test_flatfat(s, 4, trials=3)["generic"]
        if s <= 4 and generic:
            mismatched.append((s, 4))
        if s >= 5:
            evidence.append(f"s={s}:{'generic' if generic else 'special'}")
    check(10, "flat fat points m<=3 match the genericity statement; m=4 special for s<=4",
          not mismatched, f"mismatched {mismatched}; m=4 evidence only: {' '.join(evidence)}")


def test_11_cubic_intersection():
    got, dt = timed(rp.cubic_intersection)
    ok = got["dim_degree_3"] == 1 and got["contains_xyz"] and dt < 1
    check(11, "three cubic flat points: degree-3 part spanned by xyz", ok, f"{dt:.2f}s")


def test_12_liaison_two_primes():
    runs = {}
    t0 = time.perf_counter()
    for p in (32003, SECOND_PRIME):
        res = cf.liaison_pipeline(seed=0, p=p)
        runs[p] = (res.degrees[2], res.dim_I5, res.smooth)
    dt = time.perf_counter() - t0
    ok = all(v == (16, 2, True) for v in runs.values()) and dt < 300
    check(12, "triple line linked twice: deg C3 = 16, pencil of quintics, smooth; two primes",
          ok, f"{runs}, {dt:.1f}s")


def _bookkeeping_failures():
    from test_restriction import random_configs
    from raolab.lefschetz import sample_forms
    from raolab.poly import dim_forms
    from raolab.restriction import ideal_dimension, section_scheme_dimension
    bad = 0
    for cfg in random_configs():
        prof = rao_profile(cfg, with_socle=False)
        L = sample_forms(4, cfg.p, 1, 1)[0][1]
        for m in (1, 2, 3):
            for t in range(max(prof.support or [0]) + 4 + m):
                i_rel = section_scheme_dimension(cfg, L, m, t) - dim_forms(4, t - m)
                ker = prof.dim(t - m) - multiplication_rank(prof, L, m, t)
                bad += ideal_dimension(cfg, t - m) - ideal_dimension(cfg, t) + i_rel - ker != 0
    return bad


def _invariant_failures(n=25):
    rng = np.random.default_rng(13)
    bad = 0
    for _ in range(n):
        p = int(rng.choice([2, 7, 32003, 65537]))
        a = rng.integers(0, p, size=tuple(rng.integers(1, 8, size=2)))
        K = nullspace(a, p)
        bad += rank(a, p) + len(K) != a.shape[1]
        bad += bool(len(K) and (a @ K.T % p).any())
        bad += rank(a, p) != rank(a.T.copy(), p)
    R = RingSpec(4)
    for _ in range(8):
        gens = []
        for _ in range(int(rng.integers(1, 4))):
            f = R.zero()
            d = int(rng.integers(1, 3))
            for _ in range(3):
                e = [0, 0, 0, 0]
                for _ in range(d):
                    e[int(rng.integers(0, 4))] += 1
                f = f + R.const(int(rng.integers(1, R.p))).mul_monomial(tuple(e))
            gens.append(f)
        I = Ideal(R, gens)
        J = Ideal(R.with_order(LEX), [g.change_ring(R.with_order(LEX)) for g in gens])
        bad += any(I.dim_quotient(t) != J.dim_quotient(t) for t in range(6))
    return bad


def test_13_property_suites():
    book = _bookkeeping_failures()
    audit = cross_engine_audit(max_r=6, max_t=8, m_max=3, seed=0)
    inv = _invariant_failures()
    ok = book == 0 and audit.ok and inv == 0
    check(13, "bookkeeping identity, cross-engine audit, linear-algebra and order invariants",
          ok, f"bookkeeping violations {book}, audit {audit.checks} checks / "
              f"{len(audit.discrepancies)} discrepancies, invariant violations {inv}")
