"""Maximal-rank verdicts for multiplication by powers of a linear form on M(C).

Linear forms are sampled from seeded generators.  A degree passes as soon as
one sample gives maximal rank (maximal rank is an open condition on L); it
fails only if every sample falls short, and the report then carries the
"probabilistic" caveat.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .configs import flat_fat_points_plane, general_skew_lines
from .gf import DEFAULT_PRIME
from .poly import dim_forms
from .restriction import (Configuration, RaoProfile, engine, h1_section, multiplication_rank,
                          rao_profile)

DEFAULT_TRIALS = 5
PROBABILISTIC = "probabilistic"


@dataclass(frozen=True)
class HVector:
    entries: tuple
    provenance: str = ""

    @property
    def degree(self) -> int:
        return sum(self.entries)

    @classmethod
    def from_hilbert_function(cls, hf, provenance: str = "") -> "HVector":
        diffs = [b - a for a, b in zip([0] + list(hf[:-1]), hf)]
        while diffs and diffs[-1] == 0:
            diffs.pop()
        return cls(tuple(diffs), provenance)

    def socle_degree(self) -> int:
        return len(self.entries) - 1


@dataclass(frozen=True)
class Row:
    t: int
    dim_src: int
    dim_tgt: int
    rank: int
    maximal: bool

    def to_json(self) -> dict:
        return {"t": self.t, "dim_src": self.dim_src, "dim_tgt": self.dim_tgt,
                "rank": self.rank, "maximal": self.maximal}


@dataclass
class LefschetzReport:
    m: int
    rows: list
    verdict: str                      # holds | fails | vacuous
    failing_degrees: list
    samples: list                     # (sample seed, coefficients of L)
    caveat: str | None = None
    recipe: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        """Maximal rank in every degree (vacuously so counts)."""
        return self.verdict in ("holds", "vacuous")

    def to_json(self) -> dict:
        return {
            "recipe": self.recipe,
            "m": self.m,
            "rows": [r.to_json() for r in self.rows],
            "verdict": self.verdict,
            "failing_degrees": list(self.failing_degrees),
            "seeds": [list(s) for s, _ in self.samples],
            "forms": [list(L) for _, L in self.samples],
            "caveat": self.caveat,
        }


def sample_forms(n_vars: int, p: int, trials: int, seed) -> list:
    """``trials`` random linear forms, each with its own replayable seed."""
    out = []
    for k in range(trials):
        s = (int(seed), k)
        L = tuple(int(x) for x in np.random.default_rng(s).integers(1, p, size=n_vars))
        out.append((s, L))
    return out


def _support_window(profile: RaoProfile, m: int) -> list:
    supp = profile.support
    if not supp:
        return []
    lo, hi = supp[0], supp[-1] + m
    return [t for t in range(lo, hi + 1) if profile.dim(t - m) + profile.dim(t) > 0]


def slp_range_verdict(cfg: Configuration, m: int, trials: int = DEFAULT_TRIALS, seed=0,
                      profile: RaoProfile | None = None) -> LefschetzReport:
    """Sweep x L^m over every degree where source or target is nonzero."""
    if m < 1:
        raise ValueError("m must be positive")
    if trials < 1:
        raise ValueError("trials must be positive")
    profile = profile or rao_profile(cfg, with_socle=False)
    samples = sample_forms(cfg.n_vars, cfg.p, trials, seed)
    rows = []
    for t in _support_window(profile, m):
        src, tgt = profile.dim(t - m), profile.dim(t)
        want = min(src, tgt)
        best = 0
        if want:
            for _, L in samples:
                best = max(best, multiplication_rank(profile, L, m, t))
                if best == want:
                    break
        rows.append(Row(t, src, tgt, best, best == want))
    nontrivial = [r for r in rows if r.dim_src and r.dim_tgt]
    failing = [r.t for r in rows if not r.maximal]
    if not nontrivial:
        verdict = "vacuous"
    elif failing:
        verdict = "fails"
    else:
        verdict = "holds"
    return LefschetzReport(m, rows, verdict, failing, samples,
                           PROBABILISTIC if failing else None, cfg.info())


def wlp_verdict(cfg: Configuration, trials: int = DEFAULT_TRIALS, seed=0,
                profile: RaoProfile | None = None) -> LefschetzReport:
    return slp_range_verdict(cfg, 1, trials, seed, profile)


def section_dichotomy(cfg: Configuration, L, m: int, t_range) -> dict:
    """Per t: (dim [I_{Z_m|H^m}]_t, h^1(I_{Z_m}(t)))."""
    eng = engine(cfg)
    out = {}
    for t in t_range:
        i_rel = eng.section_dimension(L, m, t) - dim_forms(cfg.n_vars, t - m)
        out[t] = (i_rel, h1_section(cfg, L, m, t))
    return out


def shortcut_holds(cfg: Configuration, L, t_range, m: int = 1) -> bool:
    """True when, at every t, [I_{Z|H}]_t = 0 or h^1(I_Z(t)) = 0.

    Then x L^m is injective or surjective in each degree, so it has maximal
    rank everywhere without computing any map.
    """
    return all(a == 0 or b == 0 for a, b in section_dichotomy(cfg, L, m, t_range).values())


def injectivity_certificate(profile: RaoProfile, L, upto: int) -> bool:
    """Symmetric dims plus injectivity of x L up to degree ``upto``."""
    supp = profile.support
    if not supp:
        return True
    lo, hi = supp[0], supp[-1]
    if any(profile.dim(lo + k) != profile.dim(hi - k) for k in range(hi - lo + 1)):
        return False
    for t in range(lo + 1, upto + 1):
        if multiplication_rank(profile, L, 1, t) != profile.dim(t - 1):
            return False
    return True


# --- h-vectors ---------------------------------------------------------------


def hilbert_function_of_section(cfg: Configuration, L, m: int, t_max: int | None = None) -> list:
    eng = engine(cfg)
    total = m * cfg.degree
    hf = []
    t = 0
    while True:
        v = dim_forms(cfg.n_vars, t) - eng.section_dimension(L, m, t)
        hf.append(v)
        if (t_max is None and v >= total) or (t_max is not None and t >= t_max):
            return hf
        t += 1


def h_vector_of_section(cfg: Configuration, L, m: int) -> HVector:
    """First differences of the Hilbert function of Z_m = C cap H^m."""
    hf = hilbert_function_of_section(cfg, L, m)
    return HVector.from_hilbert_function(hf, f"section m={m}")


def hilbert_function_of_points(cfg: Configuration, t_max: int | None = None) -> list:
    """Hilbert function of a zero-dimensional configuration (flat fat points)."""
    eng = engine(cfg)
    total = sum(c.multiplicity for c in cfg.components)
    hf = []
    t = 0
    while True:
        v = dim_forms(cfg.n_vars, t) - eng.ideal_dimension(t)
        hf.append(v)
        if (t_max is None and v >= total) or (t_max is not None and t >= t_max):
            return hf
        t += 1


def h_vector_of_points(cfg: Configuration) -> HVector:
    return HVector.from_hilbert_function(hilbert_function_of_points(cfg), "points")


# --- flat fat points ---------------------------------------------------------


def expected_flatfat_hf(s: int, m: int, j: int) -> int:
    return min(m * s, comb(j + 2, 2))


def _hf_horizon(s: int, m: int) -> int:
    j = 0
    while comb(j + 2, 2) < m * s:
        j += 1
    return j + 1


def genericity_test_flatfat(s: int, m: int, trials: int = 3, seed=0,
                            p: int = DEFAULT_PRIME) -> dict:
    """Compare the Hilbert function of s general flat fat points with min{ms, C(j+2,2)}."""
    J = _hf_horizon(s, m)
    expected = [expected_flatfat_hf(s, m, j) for j in range(J + 1)]
    observed_all = []
    for k in range(trials):
        cfg = flat_fat_points_plane(s, m, seed=(int(seed), k), p=p)
        observed_all.append(hilbert_function_of_points(cfg, J))
    # the generic Hilbert function is the pointwise maximum over samples
    best = [max(col) for col in zip(*observed_all)]
    return {"s": s, "m": m, "generic": best == expected, "observed": best,
            "expected": expected, "trials": trials, "seed": seed}


# --- scans -------------------------------------------------------------------


def conjecture_scan(kind: str, values, powers=(1,), trials: int = 3, seed=0,
                    p: int = DEFAULT_PRIME) -> list:
    """Evidence table; never asserts anything, only tabulates verdicts.

    ``kind`` is "lines" (values = r, one cell per (r, m)) or "flatfat"
    (values = (s, m) pairs).
    """
    table = []
    for v in values:
        if kind == "lines":
            for m in powers:
                cell = {"r": v, "m": m}
                try:
                    cfg = general_skew_lines(int(v), seed=seed, p=p)
                    rep = slp_range_verdict(cfg, m, trials, seed)
                    cell.update(verdict=rep.verdict, failing=rep.failing_degrees,
                                seeds=[list(s) for s, _ in rep.samples])
                except Exception as e:  # recorded per cell; the scan continues
                    cell.update(verdict="error", error=repr(e))
                table.append(cell)
        elif kind == "flatfat":
            s, m = v
            cell = {"s": s, "m": m}
            try:
                res = genericity_test_flatfat(s, m, trials, seed, p)
                cell.update(verdict="generic" if res["generic"] else "not generic",
                            observed=res["observed"], expected=res["expected"])
            except Exception as e:
                cell.update(verdict="error", error=repr(e))
            table.append(cell)
        else:
            raise ValueError(f"unknown scan kind {kind!r}")
    return table
