"""Degree-wise linear algebra for configurations of rational components.

A component is given by a parametrization ``phi: P^1 -> P^n`` whose
coordinates are binary forms of degree ``d`` in ``(s, u)``.  A binary form of
degree ``D`` is stored as its coefficient vector of length ``D + 1``; entry
``k`` is the coefficient of ``s^(D-k) u^k``.

For a degree-``t`` form ``F`` on the ambient space, ``F o phi`` is a binary
form of degree ``d t``.  Stacking these restrictions over the monomial basis
of ``[R]_t`` gives the restriction matrix; its kernel is ``[I_C]_t``.  The
Rao module in degree ``t`` is the cokernel of restriction inside the space of
node-compatible tuples of binary forms, which is ``H^0(O_C(t))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .gf import FieldSpec, image_sum_dimension, left_nullspace, nullspace, rank
from .poly import Polynomial, RingSpec, dim_forms, monomial_basis

LINE = "line"
RATIONAL = "rational"
FLAT_FAT = "flat-fat"
KINDS = (LINE, RATIONAL, FLAT_FAT)


class DegenerateSection(ValueError):
    """The linear form vanishes identically on a component."""


class DegenerateConfiguration(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    """Two independent computations of the same quantity disagree."""


# --- binary forms -----------------------------------------------------------


def bmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) % p


def bpow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.ones(1, dtype=np.int64)
    for _ in range(k):
        out = bmul(out, a, p)
    return out


def beval(a, point, p: int) -> int:
    """Value of the binary form ``a`` at ``(s, u)``."""
    s, u = (int(x) % p for x in point)
    D = len(a) - 1
    return sum(int(c) * pow(s, D - k, p) * pow(u, k, p) for k, c in enumerate(a)) % p


def eval_row(D: int, point, p: int) -> np.ndarray:
    """Row vector v with v . a = a(s, u) for forms of degree D."""
    s, u = (int(x) % p for x in point)
    return np.array([pow(s, D - k, p) * pow(u, k, p) % p for k in range(D + 1)], dtype=np.int64)


# --- configuration data -----------------------------------------------------


@dataclass(frozen=True)
class ParamComponent:
    """A rational curve, line, or flat fat point given by a parametrization.

    ``forms`` holds one binary form per ambient coordinate.  For the
    ``flat-fat`` kind the parametrization is a line ``s*P + u*Q`` with the
    support point ``P = phi(1, 0)``; the scheme is the length-``multiplicity``
    curvilinear scheme on that line at ``P``, i.e. the conditions are that
    ``F o phi`` is divisible by ``u^multiplicity``.
    """

    kind: str
    forms: tuple
    multiplicity: int = 1
    label: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown component kind {self.kind!r}")
        lens = {len(f) for f in self.forms}
        if len(lens) != 1:
            raise ValueError("parametrizing forms must share one degree")
        if self.kind in (LINE, FLAT_FAT) and self.degree != 1:
            raise ValueError(f"{self.kind} components need degree-1 parametrizations")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def degree(self) -> int:
        return len(self.forms[0]) - 1

    @property
    def is_curve(self) -> bool:
        return self.kind != FLAT_FAT

    def array(self) -> np.ndarray:
        return np.array(self.forms, dtype=np.int64)

    def point(self, param, p: int) -> tuple:
        return tuple(beval(f, param, p) for f in self.forms)

    def pullback(self, coeffs, p: int) -> np.ndarray:
        """Restriction of the linear form with the given coefficients."""
        A = self.array()
        return (np.asarray(coeffs, dtype=np.int64) % p) @ A % p


@dataclass(frozen=True)
class Node:
    i: int
    j: int
    param_i: tuple
    param_j: tuple


@dataclass(frozen=True)
class Configuration:
    n_vars: int
    components: tuple
    nodes: tuple = ()
    p: int = 32003
    meta: tuple = ()          # sorted (key, value) pairs: recipe, seed, labels

    @property
    def ring(self) -> RingSpec:
        return RingSpec(self.n_vars, FieldSpec(self.p))

    @property
    def degree(self) -> int:
        return sum(c.degree for c in self.components if c.is_curve)

    @property
    def curve_components(self) -> list:
        return [c for c in self.components if c.is_curve]

    def info(self) -> dict:
        return dict(self.meta)

    def arithmetic_genus(self) -> int:
        """Genus bookkeeping for nodal unions of rational curves.

        Components are smooth rational (genus 0).  Each node beyond what is
        needed to connect the components adds one to the genus; disjoint
        pieces subtract one each.
        """
        return len(self.nodes) - len(self.curve_components) + 1

    def with_components(self, comps, nodes=None, **meta) -> "Configuration":
        m = dict(self.meta)
        m.update(meta)
        return Configuration(self.n_vars, tuple(comps),
                             self.nodes if nodes is None else tuple(nodes),
                             self.p, tuple(sorted(m.items())))


def node_scale(cfg: Configuration, node: Node) -> int:
    """lambda with phi_i(param_i) = lambda * phi_j(param_j); error if not proportional."""
    p = cfg.p
    a = cfg.components[node.i].point(node.param_i, p)
    b = cfg.components[node.j].point(node.param_j, p)
    k = next((k for k, v in enumerate(b) if v), None)
    if k is None or not any(a):
        raise DegenerateConfiguration("node maps to the zero vector")
    lam = a[k] * pow(b[k], p - 2, p) % p
    if any((x - lam * y) % p for x, y in zip(a, b)):
        raise DegenerateConfiguration(f"node {node} joins different points")
    return lam


def is_base_point_free(forms, p: int) -> bool:
    """Binary forms of degree d without a common zero.

    They have none exactly when the forms of degree 2d-1 are all combinations
    ``sum a_i f_i`` with ``deg a_i = d-1``.
    """
    A = np.array(forms, dtype=np.int64) % p
    d = A.shape[1] - 1
    if d == 0:
        return bool(A.any())
    rows = []
    for f in A:
        for k in range(d):
            r = np.zeros(2 * d, dtype=np.int64)
            r[k:k + d + 1] = f
            rows.append(r)
    return rank(np.array(rows), p) == 2 * d


def validate(cfg: Configuration) -> None:
    """Raise if the configuration breaks its structural invariants."""
    p = cfg.p
    for idx, c in enumerate(cfg.components):
        if len(c.forms) != cfg.n_vars:
            raise DegenerateConfiguration(f"component {idx} has the wrong number of forms")
        if not is_base_point_free(c.forms, p):
            raise DegenerateConfiguration(f"component {idx} has a base point")
    for nd in cfg.nodes:
        node_scale(cfg, nd)
    if cfg.nodes:
        eng = engine(cfg)
        for t in (1, 2):
            if rank(eng.node_matrix(t), p) != len(cfg.nodes):
                raise DegenerateConfiguration("node conditions are dependent")


# --- the engine -------------------------------------------------------------


class Engine:
    """Per-configuration caches of restriction and condition matrices."""

    def __init__(self, cfg: Configuration):
        self.cfg = cfg
        self.p = cfg.p
        self.n = cfg.n_vars
        self.ring = cfg.ring
        self._restr: dict = {}     # (component, t) -> (d t + 1) x N_t
        self._scale = [node_scale(cfg, nd) for nd in cfg.nodes]

    # restriction of every degree-t monomial through one component
    def restriction(self, i: int, t: int) -> np.ndarray:
        key = (i, t)
        hit = self._restr.get(key)
        if hit is not None:
            return hit
        comp = self.cfg.components[i]
        p, d = self.p, comp.degree
        if t == 0:
            out = np.ones((1, 1), dtype=np.int64)
        else:
            prev = self.restriction(i, t - 1)
            parents, var = _parent_map(self.n, t)
            A = comp.array()
            out = np.zeros((d * t + 1, len(parents)), dtype=np.int64)
            for v in range(self.n):
                cols = np.flatnonzero(var == v)
                if cols.size == 0:
                    continue
                P = prev[:, parents[cols]]
                acc = np.zeros((d * t + 1, cols.size), dtype=np.int64)
                for j, a in enumerate(A[v]):
                    if a:
                        acc[j:j + P.shape[0]] += int(a) * P
                out[:, cols] = acc % p
        self._restr[key] = out
        return out

    def n_forms(self, t: int) -> int:
        return dim_forms(self.n, t)

    def conditions(self, i: int, t: int) -> np.ndarray:
        """Linear conditions that component i imposes on [R]_t."""
        comp = self.cfg.components[i]
        R = self.restriction(i, t)
        if comp.kind == FLAT_FAT:
            return R[:comp.multiplicity]
        return R

    def condition_matrix(self, t: int) -> np.ndarray:
        N = self.n_forms(t)
        if t < 0:
            return np.zeros((0, 0), dtype=np.int64)
        rows = [self.conditions(i, t) for i in range(len(self.cfg.components))]
        return np.vstack(rows) if rows else np.zeros((0, N), dtype=np.int64)

    def ideal_dimension(self, t: int) -> int:
        if t < 0:
            return 0
        return self.n_forms(t) - rank(self.condition_matrix(t), self.p)

    def ideal_basis(self, t: int) -> list:
        """A basis of [I]_t as polynomials."""
        if t < 0:
            return []
        K = nullspace(self.condition_matrix(t), self.p)
        mons = monomial_basis(self.ring, t)
        out = []
        for row in K:
            out.append(Polynomial(self.ring, {mons[k]: int(c) for k, c in enumerate(row) if c}))
        return out

    # section schemes Z_m = C cap H^m, component by component
    def section_conditions(self, i: int, L, m: int, t: int) -> np.ndarray:
        comp = self.cfg.components[i]
        if not comp.is_curve:
            raise ValueError("section schemes are defined for curve components")
        p = self.p
        ell = comp.pullback(L, p)
        if not ell.any():
            raise DegenerateSection(f"linear form vanishes on component {i}")
        g = bpow(ell, m, p)
        R = self.restriction(i, t)
        D = comp.degree * t
        deg_g = len(g) - 1
        if D < deg_g:
            return R
        G = np.zeros((D + 1, D - deg_g + 1), dtype=np.int64)
        for k in range(D - deg_g + 1):
            G[k:k + deg_g + 1, k] = g
        Lam = left_nullspace(G, p)
        return Lam @ R % p

    def section_dimension(self, L, m: int, t: int) -> int:
        if t < 0:
            return 0
        mats = [self.section_conditions(i, L, m, t)
                for i, c in enumerate(self.cfg.components) if c.is_curve]
        if not mats:
            return self.n_forms(t)
        return self.n_forms(t) - rank(np.vstack(mats), self.p)

    # H^0(O_C(t)) and the presentation of M(C)
    def block_sizes(self, t: int) -> list:
        return [c.degree * t + 1 for c in self.cfg.components]

    def node_matrix(self, t: int) -> np.ndarray:
        sizes = self.block_sizes(t)
        offs = np.concatenate([[0], np.cumsum(sizes)])
        M = np.zeros((len(self.cfg.nodes), int(offs[-1])), dtype=np.int64)
        p = self.p
        for r, (nd, lam) in enumerate(zip(self.cfg.nodes, self._scale)):
            Di = sizes[nd.i] - 1
            Dj = sizes[nd.j] - 1
            M[r, offs[nd.i]:offs[nd.i + 1]] = eval_row(Di, nd.param_i, p)
            M[r, offs[nd.j]:offs[nd.j + 1]] = (M[r, offs[nd.j]:offs[nd.j + 1]]
                                               - pow(lam, t, p) * eval_row(Dj, nd.param_j, p)) % p
        return M

    def h0(self, t: int) -> int:
        if t < 0:
            return 0
        total = sum(self.block_sizes(t))
        if not self.cfg.nodes:
            return total
        return total - rank(self.node_matrix(t), self.p)

    def image_matrix(self, t: int) -> np.ndarray:
        """W_t: columns are restrictions of the monomials of [R]_t."""
        return np.vstack([self.restriction(i, t) for i in range(len(self.cfg.components))])

    def h0_basis(self, t: int) -> np.ndarray:
        """V_t as columns (node-compatible tuples of binary forms)."""
        total = sum(self.block_sizes(t))
        if not self.cfg.nodes:
            return np.eye(total, dtype=np.int64)
        return nullspace(self.node_matrix(t), self.p).T

    def multiply(self, coeffs, m: int, t_src: int) -> np.ndarray:
        """Block-diagonal matrix of multiplication by (L o phi_i)^m, degree t_src -> t_src+m."""
        p = self.p
        src = self.block_sizes(t_src)
        tgt = self.block_sizes(t_src + m)
        X = np.zeros((sum(tgt), sum(src)), dtype=np.int64)
        ro = co = 0
        for comp, a, b in zip(self.cfg.components, src, tgt):
            g = bpow(comp.pullback(coeffs, p), m, p)
            for k in range(a):
                X[ro + k:ro + k + len(g), co + k] = g
            ro += b
            co += a
        return X


@lru_cache(maxsize=None)
def _parent_map(n: int, t: int):
    """For each degree-t monomial: index of m / x_v in degree t-1 and the variable v."""
    ring = RingSpec(n)
    prev = {m: k for k, m in enumerate(monomial_basis(ring, t - 1))}
    parents, var = [], []
    for m in monomial_basis(ring, t):
        v = next(k for k, a in enumerate(m) if a)
        q = list(m)
        q[v] -= 1
        parents.append(prev[tuple(q)])
        var.append(v)
    return np.array(parents, dtype=np.int64), np.array(var, dtype=np.int64)


@lru_cache(maxsize=64)
def engine(cfg: Configuration) -> Engine:
    return Engine(cfg)


# --- public operations ------------------------------------------------------


def ideal_dimension(cfg: Configuration, t: int) -> int:
    """dim [I_C]_t."""
    return engine(cfg).ideal_dimension(t)


def section_scheme_dimension(cfg: Configuration, L, m: int, t: int) -> int:
    """dim [I_{Z_m}]_t for Z_m = C cap H^m, H = V(L)."""
    return engine(cfg).section_dimension(_coeffs(L, cfg), m, t)


def h0_structure_sheaf(cfg: Configuration, t: int) -> int:
    return engine(cfg).h0(t)


def _coeffs(L, cfg: Configuration) -> tuple:
    if isinstance(L, Polynomial):
        out = [0] * cfg.n_vars
        for e, c in L.terms.items():
            if sum(e) != 1:
                raise ValueError("expected a linear form")
            out[e.index(1)] = c
        return tuple(out)
    return tuple(int(x) % cfg.p for x in L)


@dataclass
class GradedPresentation:
    """M_t = V_t / W_t for the degrees that were materialized."""

    cfg: Configuration
    V: dict = field(default_factory=dict)      # t -> basis columns of H^0(O_C(t))
    W: dict = field(default_factory=dict)      # t -> restriction image columns
    rank_W: dict = field(default_factory=dict)

    def ensure(self, t: int) -> None:
        if t in self.W or t < 0:
            return
        eng = engine(self.cfg)
        self.W[t] = eng.image_matrix(t)
        self.V[t] = eng.h0_basis(t)
        self.rank_W[t] = rank(self.W[t], self.cfg.p)

    def dim(self, t: int) -> int:
        if t < 0:
            return 0
        self.ensure(t)
        return self.V[t].shape[1] - self.rank_W[t]


@dataclass
class RaoProfile:
    dims: dict
    socle: dict
    presentation: GradedPresentation
    provenance: dict

    @property
    def support(self) -> list:
        return sorted(t for t, d in self.dims.items() if d)

    def dim(self, t: int) -> int:
        if t in self.dims:
            return self.dims[t]
        return self.presentation.dim(t)

    def to_json(self) -> dict:
        return {"dims": {str(t): d for t, d in sorted(self.dims.items())},
                "socle": {str(t): d for t, d in sorted(self.socle.items())},
                "provenance": self.provenance}


MIN_HORIZON = 6


def rao_dims(cfg: Configuration, t_range=None) -> tuple[dict, GradedPresentation]:
    """dim [M(C)]_t by both routes.

    With ``t_range=None`` degrees are computed from 0 until two consecutive
    zeros after the first positive value (and at least up to MIN_HORIZON).
    """
    eng = engine(cfg)
    pres = GradedPresentation(cfg)
    dims: dict = {}

    def one(t):
        formula = eng.h0(t) - eng.n_forms(t) + eng.ideal_dimension(t)
        direct = pres.dim(t)
        if formula != direct:
            raise InternalInconsistency(
                f"dim M_{t}: {formula} (exact sequence) vs {direct} (presentation)")
        dims[t] = direct

    if t_range is not None:
        for t in t_range:
            one(t)
        return dims, pres
    cap = max(MIN_HORIZON, cfg.degree + 2)
    first_pos = None
    t = 0
    while True:
        one(t)
        if dims[t] and first_pos is None:
            first_pos = t
        zeros = t >= 1 and dims[t] == 0 and dims[t - 1] == 0
        settled = (first_pos is not None and t - 1 > first_pos) or t >= cap
        if zeros and settled and t >= MIN_HORIZON:
            return dims, pres
        t += 1


def socle_dimensions(pres: GradedPresentation, t_range) -> dict:
    """dim of {v in M_t : x_i v = 0 in M_{t+1} for every variable}."""
    cfg = pres.cfg
    p = cfg.p
    eng = engine(cfg)
    out = {}
    for t in t_range:
        if pres.dim(t) == 0:
            out[t] = 0
            continue
        pres.ensure(t + 1)
        Q = left_nullspace(pres.W[t + 1], p)     # functionals killing W_{t+1}
        B = pres.V[t]
        blocks = []
        for v in range(cfg.n_vars):
            e = [0] * cfg.n_vars
            e[v] = 1
            X = eng.multiply(e, 1, t)
            blocks.append(Q @ (X @ B % p) % p)
        S = np.vstack(blocks)
        kernel = B.shape[1] - rank(S, p)
        out[t] = kernel - pres.rank_W[t]
    return out


def rao_profile(cfg: Configuration, t_range=None, with_socle: bool = True) -> RaoProfile:
    dims, pres = rao_dims(cfg, t_range)
    socle = socle_dimensions(pres, sorted(dims)) if with_socle else {}
    return RaoProfile(dims, socle, pres, cfg.info())


def multiplication_rank(profile: RaoProfile, L, m: int, t: int) -> int:
    """Rank of x L^m : [M]_{t-m} -> [M]_t, computed by two independent routes."""
    cfg = profile.presentation.cfg
    pres = profile.presentation
    p = cfg.p
    coeffs = _coeffs(L, cfg)
    src = pres.dim(t - m)
    if src == 0 or pres.dim(t) == 0:
        return 0
    eng = engine(cfg)
    # presentation route
    pres.ensure(t - m)
    pres.ensure(t)
    X = eng.multiply(coeffs, m, t - m)
    img = X @ pres.V[t - m] % p
    direct = image_sum_dimension(img, pres.W[t], p) - pres.rank_W[t]
    # exact-sequence route
    via_section = section_rank(cfg, coeffs, m, t, src)
    if via_section != direct:
        raise InternalInconsistency(
            f"rank of x L^{m} at t={t}: {direct} (presentation) vs {via_section} (section scheme)")
    return direct


def section_rank(cfg: Configuration, coeffs, m: int, t: int, dim_src: int) -> int:
    """dim M_{t-m} - dim ker, with the kernel read off the section scheme."""
    eng = engine(cfg)
    i_zm_h = eng.section_dimension(coeffs, m, t) - eng.n_forms(t - m)
    ker = i_zm_h - eng.ideal_dimension(t) + eng.ideal_dimension(t - m)
    return dim_src - ker


def h1_section(cfg: Configuration, L, m: int, t: int) -> int:
    """h^1(I_{Z_m}(t)) = deg Z_m - (dim [R]_t - dim [I_{Z_m}]_t)."""
    eng = engine(cfg)
    deg = m * cfg.degree
    return deg - (eng.n_forms(t) - eng.section_dimension(_coeffs(L, cfg), m, t))
