"""Named constructors for the curve and point configurations studied here.

Every constructor is deterministic in ``(parameters, seed, p)``.  Random
choices are uniform in the prime field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .gf import DEFAULT_PRIME, FieldSpec, rank
from .ideal import Ideal, is_smooth, quotient
from .poly import Polynomial, RingSpec, monomial_basis
from .restriction import (FLAT_FAT, LINE, RATIONAL, Configuration, Node, ParamComponent,
                          beval, bmul, is_base_point_free, validate)

QUADRIC = "x0*x3 - x1*x2"
MAX_RESAMPLE = 10


class ResampleExhausted(RuntimeError):
    pass


class UnsupportedRecipe(ValueError):
    pass


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _point(rng, n: int, p: int) -> tuple:
    while True:
        v = tuple(int(x) for x in rng.integers(0, p, size=n))
        if any(v):
            return v


def line_through(P, Q, kind: str = LINE, m: int = 1, label: str = "") -> ParamComponent:
    """The line s*P + u*Q (so phi(1,0) = P)."""
    return ParamComponent(kind, tuple((int(a), int(b)) for a, b in zip(P, Q)), m, label)


def _det_nonzero(rows, p: int) -> bool:
    a = np.array(rows, dtype=np.int64)
    return rank(a, p) == a.shape[0]


def _lines_disjoint(a: ParamComponent, b: ParamComponent, p: int) -> bool:
    A = np.array(a.forms).T
    B = np.array(b.forms).T
    return _det_nonzero(np.vstack([A, B]), p)


def _on_quadric(c: ParamComponent, p: int) -> bool:
    x = c.array()
    return not ((bmul(x[0], x[3], p) - bmul(x[1], x[2], p)) % p).any()


def _config(n_vars, comps, p, nodes=(), **meta) -> Configuration:
    cfg = Configuration(n_vars, tuple(comps), tuple(nodes), p, tuple(sorted(meta.items())))
    validate(cfg)
    return cfg


# --- lines ------------------------------------------------------------------


def _general_line(rng, p, existing, off_quadric=False) -> ParamComponent:
    for _ in range(MAX_RESAMPLE):
        c = line_through(_point(rng, 4, p), _point(rng, 4, p))
        if not is_base_point_free(c.forms, p):
            continue
        if off_quadric and _on_quadric(c, p):
            continue
        if all(_lines_disjoint(c, e, p) for e in existing):
            return c
    raise ResampleExhausted("could not sample a disjoint line")


def general_skew_lines(r: int, seed=0, p: int = DEFAULT_PRIME) -> Configuration:
    if r < 1:
        raise ValueError("r must be positive")
    rng = _rng(seed)
    comps: list = []
    for _ in range(r):
        comps.append(_general_line(rng, p, comps))
    return _config(4, comps, p, recipe="general-skew-lines", r=r, seed=seed)


def ruling_line(c: int, p: int, ruling: int = 0) -> ParamComponent:
    """Line of V(x0*x3 - x1*x2) with ruling parameter c.

    Ruling 0: (s, c s, u, c u).  Ruling 1: (s, u, c s, c u).
    """
    c %= p
    if ruling == 0:
        forms = ((1, 0), (c, 0), (0, 1), (0, c))
    else:
        forms = ((1, 0), (0, 1), (c, 0), (0, c))
    return ParamComponent(LINE, forms, 1, f"ruling{ruling}:{c}")


def _ruling_params(rng, r, p) -> list:
    for _ in range(MAX_RESAMPLE):
        cs = [int(x) for x in rng.integers(1, p, size=r)]
        if len(set(cs)) == r:
            return cs
    raise ResampleExhausted("ruling parameters collide")


def quadric_ruling_lines(r: int, seed=0, p: int = DEFAULT_PRIME, ruling: int = 0) -> Configuration:
    if r < 2:
        raise ValueError("r must be at least 2")
    rng = _rng(seed)
    comps = [ruling_line(c, p, ruling) for c in _ruling_params(rng, r, p)]
    return _config(4, comps, p, recipe="quadric-ruling-lines", r=r, seed=seed, ruling=ruling)


def quadric_plus_general(r_on_quadric: int, n_general: int, seed=0,
                         p: int = DEFAULT_PRIME) -> Configuration:
    if r_on_quadric < 2 or n_general < 0:
        raise ValueError("need r_on_quadric >= 2 and n_general >= 0")
    rng = _rng(seed)
    comps = [ruling_line(c, p) for c in _ruling_params(rng, r_on_quadric, p)]
    for _ in range(n_general):
        comps.append(_general_line(rng, p, comps, off_quadric=True))
    return _config(4, comps, p, recipe="quadric-plus-general", r=r_on_quadric,
                   n=n_general, seed=seed)


# --- flat fat points in the plane -----------------------------------------


def flat_fat_points_plane(s: int, m, seed=0, p: int = DEFAULT_PRIME,
                          directions=None) -> Configuration:
    """s flat fat points in P^2 at random points with random directions.

    ``m`` is a multiplicity or a list of s multiplicities.  ``directions``
    optionally fixes the second point of each supporting line.
    """
    if s < 0:
        raise ValueError("s must be nonnegative")
    ms = [m] * s if isinstance(m, int) else list(m)
    if len(ms) != s or min(ms, default=1) < 1:
        raise ValueError("bad multiplicities")
    rng = _rng(seed)
    comps = []
    for k, mk in enumerate(ms):
        for _ in range(MAX_RESAMPLE):
            P = _point(rng, 3, p)
            Q = tuple(directions[k]) if directions is not None else _point(rng, 3, p)
            if rank(np.array([P, Q]), p) == 2:
                break
        else:
            raise ResampleExhausted("degenerate flat fat point")
        comps.append(line_through(P, Q, FLAT_FAT, mk))
    return _config(3, comps, p, recipe="flat-fat-points-plane", s=s,
                   m=m if isinstance(m, int) else tuple(ms), seed=seed)


# --- rational curves --------------------------------------------------------


def _random_form(rng, d, p) -> tuple:
    return tuple(int(x) for x in rng.integers(0, p, size=d + 1))


def rational_curve(d: int, seed=0, p: int = DEFAULT_PRIME) -> Configuration:
    if d < 3:
        raise ValueError("d must be at least 3 for a nondegenerate curve in P^3")
    rng = _rng(seed)
    for _ in range(MAX_RESAMPLE):
        forms = tuple(_random_form(rng, d, p) for _ in range(4))
        if is_base_point_free(forms, p):
            comp = ParamComponent(RATIONAL, forms, 1, f"rational-{d}")
            return _config(4, [comp], p, recipe="rational-curve", d=d, seed=seed)
    raise ResampleExhausted("base point in every sample")


def bidegree_curve_on_quadric(a: int, b: int, seed=0, p: int = DEFAULT_PRIME) -> Configuration:
    """Smooth rational curve of bidegree (a, b) on V(x0*x3 - x1*x2), min(a,b) = 1.

    The curve is the graph of a degree-b map P^1 -> P^1 pushed through the
    Segre embedding, so its degree is a + b.
    """
    if a < 1 or b < 1:
        raise ValueError("bidegree entries must be positive")
    if min(a, b) != 1:
        raise UnsupportedRecipe("only bidegrees (1, b) and (a, 1) are supported")
    rng = _rng(seed)
    e = max(a, b)
    for _ in range(MAX_RESAMPLE):
        f0, f1 = _random_form(rng, e, p), _random_form(rng, e, p)
        if not is_base_point_free((f0, f1), p):
            continue
        s_, u_ = np.array([1, 0]), np.array([0, 1])
        if a == 1:   # (s, u) x (f0, f1)
            forms = [bmul(s_, f0, p), bmul(s_, f1, p), bmul(u_, f0, p), bmul(u_, f1, p)]
        else:        # (f0, f1) x (s, u)
            forms = [bmul(f0, s_, p), bmul(f0, u_, p), bmul(f1, s_, p), bmul(f1, u_, p)]
        comp = ParamComponent(RATIONAL, tuple(tuple(int(x) for x in f) for f in forms), 1,
                              f"bidegree-{a}-{b}")
        return _config(4, [comp], p, recipe="bidegree-curve-on-quadric", a=a, b=b, seed=seed)
    raise ResampleExhausted("graph map has a base point in every sample")


def incident_line(cfg: Configuration, index: int, seed=0) -> Configuration:
    """Add a line through a random point of component ``index`` and a random point."""
    p = cfg.p
    if not 0 <= index < len(cfg.components):
        raise IndexError("no such component")
    rng = _rng(seed)
    target = cfg.components[index]
    others = list(cfg.components)
    for _ in range(MAX_RESAMPLE):
        param = (int(rng.integers(1, p)), int(rng.integers(1, p)))
        P = target.point(param, p)
        Q = _point(rng, cfg.n_vars, p)
        line = line_through(P, Q)
        if not is_base_point_free(line.forms, p):
            continue
        # the new line should meet nothing else: check by disjointness from the
        # other lines (curves of higher degree are checked via node validation)
        if any(c.kind == LINE and k != index and not _lines_disjoint(line, c, p)
               for k, c in enumerate(others)):
            continue
        node = Node(index, len(others), param, (1, 0))
        meta = dict(cfg.meta)
        meta["incident"] = tuple(meta.get("incident", ())) + ((index, seed),)
        out = Configuration(cfg.n_vars, tuple(others + [line]), cfg.nodes + (node,), p,
                            tuple(sorted(meta.items())))
        validate(out)
        return out
    raise ResampleExhausted("could not place an incident line")


def arith_genus_zero(seed=0, p: int = DEFAULT_PRIME) -> Configuration:
    """The (1,7) curve on the quadric plus two lines each meeting it once."""
    rng = _rng(seed)
    s1, s2, s3 = (int(x) for x in rng.integers(0, 2**31, size=3))
    cfg = bidegree_curve_on_quadric(1, 7, s1, p)
    cfg = incident_line(cfg, 0, s2)
    cfg = incident_line(cfg, 0, s3)
    meta = dict(cfg.meta)
    meta.update(recipe="arith-genus-0", seed=seed)
    return Configuration(cfg.n_vars, cfg.components, cfg.nodes, p, tuple(sorted(meta.items())))


# --- specialization of section schemes --------------------------------------


@dataclass(frozen=True)
class Specialization:
    """Schemes obtained by moving k of the lines into H = V(L).

    ``x1`` is the union in H (plane coordinates) of the simple points where
    the unmoved lines meet H and k general multiplicity-m flat fat points;
    ``x2_lines`` are the unmoved lines, whose section scheme of multiplicity
    m - 1 is the residual X2.
    """

    x1: Configuration
    x2_lines: Configuration
    L: tuple
    m: int
    k: int


def generic_plane_form(rng, p: int) -> tuple:
    while True:
        L = tuple(int(x) for x in rng.integers(0, p, size=4))
        if L[3] % p:
            return L


def specialize(lines: Configuration, L, m: int, k: int, seed=0) -> Specialization:
    """Move the last k lines into H = V(L); L must have nonzero x3-coefficient.

    Plane coordinates on H are (x0, x1, x2), which is a valid chart because
    x3 is determined on H.
    """
    p = lines.p
    if L[3] % p == 0:
        raise ValueError("L needs a nonzero x3 coefficient")
    r = len(lines.components)
    if not 0 <= k <= r:
        raise ValueError("k out of range")
    rng = _rng(seed)
    kept = lines.components[:r - k]
    comps = []
    for c in kept:
        A = c.array()
        lp, lq = (int(v) for v in (np.asarray(L) @ A % p))
        point = (lq, (-lp) % p)          # parameter of the point on H
        P = c.point(point, p)
        comps.append(line_through(P[:3], _point(rng, 3, p), FLAT_FAT, 1))
    for _ in range(k):
        comps.append(line_through(_point(rng, 3, p), _point(rng, 3, p), FLAT_FAT, m))
    x1 = _config(3, comps, p, recipe="specialized-section", r=r, k=k, m=m, seed=seed)
    x2 = Configuration(4, tuple(kept), (), p, tuple(sorted(dict(lines.meta, k=k).items())))
    return Specialization(x1, x2, tuple(int(v) for v in L), m, k)


# --- liaison pipeline (Gröbner route) ----------------------------------------


@dataclass
class LiaisonResult:
    C3: Ideal
    degrees: tuple      # degrees of the triple line, of the residual C2, of C3
    dim_I5: int
    smooth: bool | None


def _random_element(I: Ideal, d: int, rng) -> Polynomial:
    R = I.ring
    p = R.p
    f = R.zero()
    for g in I.gens:
        for mono in monomial_basis(R, d - g.degree()):
            f = f + g.mul_monomial(mono, int(rng.integers(1, p)))
    return f


def liaison_pipeline(seed=0, p: int = DEFAULT_PRIME, check_smooth: bool = True,
                         budget: int | None = None) -> LiaisonResult:
    """Link the triple line I_lambda^3 by two quintics, then strip I_lambda^2."""
    R = RingSpec(4, FieldSpec(p))
    kw = {} if budget is None else {"budget": budget}
    rng = _rng(seed)
    lam = Ideal(R, [R.var(0), R.var(1)], **kw)
    C1 = lam.power(3)
    F = _random_element(C1, 5, rng)
    G = _random_element(C1, 5, rng)
    CI = Ideal(R, [F, G], **kw)
    C2 = quotient(CI, C1)
    sq = lam.power(2)
    C3 = quotient(C2, sq)
    smooth = is_smooth(C3, 2, rng) if check_smooth else None
    return LiaisonResult(C3, (C1.degree(), C2.degree(), C3.degree()), C3.dim_ideal(5), smooth)


# --- serialization and recipes -----------------------------------------------


def to_json(cfg: Configuration) -> dict:
    comps = []
    for c in cfg.components:
        if c.kind in (LINE, FLAT_FAT):
            pts = [[beval(f, (1, 0), cfg.p) for f in c.forms],
                   [beval(f, (0, 1), cfg.p) for f in c.forms]]
            entry = {"kind": "line" if c.kind == LINE else "flat-fat", "points": pts}
            if c.kind == FLAT_FAT:
                entry["m"] = c.multiplicity
        else:
            entry = {"kind": "rational", "degree": c.degree, "forms": [list(f) for f in c.forms]}
        if c.label:
            entry["label"] = c.label
        comps.append(entry)
    meta = cfg.info()
    return {
        "ambient": f"P{cfg.n_vars - 1}",
        "p": cfg.p,
        "seed": meta.get("seed"),
        "meta": {k: v for k, v in meta.items() if k != "seed"},
        "components": comps,
        "nodes": [[n.i, n.j, list(n.param_i), list(n.param_j)] for n in cfg.nodes],
    }


def dumps(cfg: Configuration) -> str:
    return json.dumps(to_json(cfg), sort_keys=True, default=list)


def from_json(data: dict) -> Configuration:
    amb = data.get("ambient", "P3")
    if amb not in ("P2", "P3"):
        raise ValueError(f"unsupported ambient {amb!r}")
    n = int(amb[1:]) + 1
    p = int(data.get("p", DEFAULT_PRIME))
    seed = data.get("seed", 0)
    rng = _rng(seed)
    comps = []
    for entry in data.get("components", []):
        kind = entry["kind"]
        if kind in ("line", "flat-fat"):
            P, Q = entry["points"]
            if len(P) != n or len(Q) != n:
                raise ValueError("point has the wrong number of coordinates")
            comps.append(line_through(P, Q, LINE if kind == "line" else FLAT_FAT,
                                      int(entry.get("m", 1)), entry.get("label", "")))
        elif kind == "ruling-line":
            q = entry.get("quadric", QUADRIC).replace(" ", "")
            if q != QUADRIC.replace(" ", ""):
                raise ValueError("only the quadric x0*x3 - x1*x2 is supported")
            comps.append(ruling_line(int(entry["param"]), p, int(entry.get("ruling", 0))))
        elif kind == "rational":
            d = int(entry["degree"])
            forms = entry.get("forms")
            if forms is None:
                forms = tuple(_random_form(rng, d, p) for _ in range(n))
            comps.append(ParamComponent(RATIONAL, tuple(tuple(int(x) % p for x in f)
                                                        for f in forms),
                                        1, entry.get("label", "")))
        else:
            raise ValueError(f"unknown component kind {kind!r}")
    nodes = [Node(int(i), int(j), tuple(a), tuple(b)) for i, j, a, b in data.get("nodes", [])]
    meta = dict(data.get("meta", {}))
    meta["seed"] = seed
    meta = {k: tuple(v) if isinstance(v, list) else v for k, v in meta.items()}
    return _config(n, comps, p, nodes, **meta)


RECIPES = {
    "general-skew-lines": lambda prm, seed, p: general_skew_lines(int(prm["r"]), seed, p),
    "quadric-ruling-lines": lambda prm, seed, p: quadric_ruling_lines(
        int(prm["r"]), seed, p, int(prm.get("ruling", 0))),
    "quadric-plus-general": lambda prm, seed, p: quadric_plus_general(
        int(prm["r"]), int(prm.get("n", 0)), seed, p),
    "flat-fat-points-plane": lambda prm, seed, p: flat_fat_points_plane(
        int(prm["s"]), prm["m"] if isinstance(prm["m"], int) else list(prm["m"]), seed, p),
    "rational-curve": lambda prm, seed, p: rational_curve(int(prm["d"]), seed, p),
    "bidegree-curve-on-quadric": lambda prm, seed, p: bidegree_curve_on_quadric(
        int(prm["a"]), int(prm["b"]), seed, p),
    "arith-genus-0": lambda prm, seed, p: arith_genus_zero(seed, p),
}


def build(recipe: str, params: dict, seed=0, p: int = DEFAULT_PRIME) -> Configuration:
    try:
        fn = RECIPES[recipe]
    except KeyError:
        raise UnsupportedRecipe(f"unknown recipe {recipe!r}; known: {sorted(RECIPES)}") from None
    try:
        return fn(params, seed, p)
    except KeyError as e:
        raise ValueError(f"recipe {recipe!r} is missing parameter {e.args[0]!r}") from None
