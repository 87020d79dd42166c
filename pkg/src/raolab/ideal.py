"""Homogeneous ideals with cached Gröbner bases, and the operations built on them.

Everything here goes through :func:`raolab.groebner.groebner_basis`; it is the
slow, general route used to cross-check the restriction engine and to run
liaison constructions.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass

import numpy as np

from .groebner import DEFAULT_BUDGET, Reducer, groebner_basis
from .hilbert import HilbertSeries, hilbert_numerator
from .poly import GREVLEX, Polynomial, RingSpec, dim_forms, elim


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class HilbertData:
    dims_quotient: dict
    dims_ideal: dict
    h_vector: tuple | None
    hilbert_polynomial: tuple | None   # (degree, projective dimension)
    krull_dim: int

    def to_json(self) -> dict:
        deg, dim = self.hilbert_polynomial or (0, -1)
        return {
            "dims_quotient": {str(t): d for t, d in sorted(self.dims_quotient.items())},
            "h_vector": list(self.h_vector) if self.h_vector is not None else None,
            "degree": deg,
            "dim": dim,
        }


class Ideal:
    """A homogeneous ideal; generators are kept as given (zeros dropped)."""

    def __init__(self, ring: RingSpec, gens, budget: int = DEFAULT_BUDGET):
        gens = [g.change_ring(ring) for g in gens]
        gens = [g for g in gens if not g.is_zero()]
        for g in gens:
            if not g.is_homogeneous():
                raise ValueError(f"generator is not homogeneous: {g}")
        self.ring = ring
        self.gens = tuple(gens)
        self.budget = budget
        self._gb: dict = {}
        self._lock = threading.Lock()
        self._series = None

    @classmethod
    def parse(cls, ring: RingSpec, texts, **kw) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts], **kw)

    @classmethod
    def unit(cls, ring: RingSpec) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def maximal(cls, ring: RingSpec) -> "Ideal":
        return cls(ring, ring.gens())

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"

    def _check(self, other: "Ideal"):
        a, b = self.ring, other.ring
        if a.n_vars != b.n_vars or a.p != b.p or a.w != b.w:
            raise RingMismatch("ideals live in different rings")

    # -- Gröbner bases
    def gb(self, order=None) -> list:
        """Reduced Gröbner basis for ``order`` (default: the ring's order)."""
        order = self.ring.order if order is None else order
        with self._lock:
            hit = self._gb.get(order)
            if hit is None:
                ring = self.ring.with_order(order)
                hit = groebner_basis(list(self.gens), ring, self.budget) if self.gens else []
                self._gb[order] = hit
        return hit

    def groebner(self, order=None) -> "Ideal":
        self.gb(order)
        return self

    def is_unit(self) -> bool:
        return any(g.degree() == 0 for g in self.gb())

    def is_zero(self) -> bool:
        return not self.gens

    def normal_form(self, f: Polynomial) -> Polynomial:
        return Reducer(self.gb(), self.ring).normal_form(f)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        self._check(other)
        red = Reducer(self.gb(), self.ring)
        return all(red.normal_form(g).is_zero() for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        self._check(other)
        return self.gb(GREVLEX) == other.gb(GREVLEX)

    # -- Hilbert functions
    def lead_monomials(self, order=None) -> list:
        return [g.lead()[0] for g in self.with_order(order).gb()] if order is not None \
            else [g.lead()[0] for g in self.gb()]

    def with_order(self, order) -> "Ideal":
        """Same ideal viewed in the ring with another order (shares no cache)."""
        if order == self.ring.order:
            return self
        J = Ideal(self.ring.with_order(order), self.gens, self.budget)
        if order in self._gb:
            J._gb[order] = [g.change_ring(J.ring) for g in self._gb[order]]
        return J

    def hilbert_series(self) -> HilbertSeries:
        if self.ring.weights is not None:
            raise ValueError("Hilbert series only for the standard grading")
        if self._series is None:
            lms = [g.lead()[0] for g in self.gb()]
            self._series = HilbertSeries(self.ring.n_vars,
                                         tuple(hilbert_numerator(lms, self.ring.n_vars)))
        return self._series

    def dim_quotient(self, t: int) -> int:
        return self.hilbert_series().value(t)

    def dim_ideal(self, t: int) -> int:
        return dim_forms(self.ring.n_vars, t) - self.dim_quotient(t)

    def hilbert_function(self, t_max: int) -> HilbertData:
        hs = self.hilbert_series()
        n = self.ring.n_vars
        dq = {t: hs.value(t) for t in range(t_max + 1)}
        di = {t: dim_forms(n, t) - d for t, d in dq.items()}
        h_vec = tuple(hs.reduced) if hs.krull_dim == 1 else None
        poly = (hs.degree, hs.krull_dim - 1) if hs.krull_dim >= 0 else (0, -1)
        return HilbertData(dq, di, h_vec, poly, hs.krull_dim)

    def krull_dim(self) -> int:
        return self.hilbert_series().krull_dim

    def degree(self) -> int:
        return self.hilbert_series().degree

    # -- ideal arithmetic
    def __add__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.ring, self.gens + other.gens, self.budget)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens], self.budget)

    def power(self, k: int) -> "Ideal":
        out = Ideal.unit(self.ring)
        for _ in range(k):
            out = out * self
        return Ideal(self.ring, out.gens, self.budget)

    def intersect(self, other: "Ideal") -> "Ideal":
        return intersect(self, other)

    def quotient(self, other: "Ideal") -> "Ideal":
        return quotient(self, other)

    def saturate(self, other: "Ideal | None" = None):
        return saturate(self, other)


# --- intersection, quotient, saturation, elimination -------------------------


def _drop_redundant(polys) -> list:
    """Drop elements whose leading monomial is divisible by another's.

    Applied to a Gröbner basis this leaves a minimal Gröbner basis.
    """
    polys = [p for p in polys if not p.is_zero()]
    lms = [p.lead()[0] for p in polys]
    kept = []
    for k, (f, m) in enumerate(zip(polys, lms)):
        if any(j != k and all(a <= b for a, b in zip(lms[j], m)) and (lms[j] != m or j < k)
               for j in range(len(polys))):
            continue
        kept.append(f)
    return kept


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via the homogenized trick ideal t*I + (u - t)*J, eliminating t."""
    I._check(J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [], I.budget)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    n = ring.n_vars
    w = None if ring.weights is None else (1,) + ring.w + (1,)
    big = RingSpec(n + 2, ring.field, elim(1), None, w)

    def lift(f, t_exp, u_exp):
        return Polynomial(big, {(t_exp,) + e + (u_exp,): c for e, c in f.terms.items()})

    gens = [lift(f, 1, 0) for f in I.gb()]
    for g in J.gb():
        gens.append(lift(g, 0, 1) - lift(g, 1, 0))
    basis = groebner_basis(gens, big, min(I.budget, J.budget))
    out = []
    for b in basis:
        if b.lead()[0][0]:
            continue
        out.append(Polynomial(ring, {e[1:-1]: c for e, c in b.terms.items()}))
    # The t-free part of the elimination basis is a Gröbner basis of I ∩ J
    # for the weighted grevlex order on the original variables.
    return Ideal(ring, _drop_redundant(out), I.budget)


def intersect_all(ideals) -> Ideal:
    """Left fold of pairwise intersections."""
    ideals = list(ideals)
    if not ideals:
        raise ValueError("nothing to intersect")
    acc = ideals[0]
    for J in ideals[1:]:
        acc = intersect(acc, J)
    return acc


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, assuming g divides f exactly."""
    ring = f.ring
    lg, cg = g.lead()
    inv = ring.field.inv(cg)
    q: dict = {}
    r = f
    while not r.is_zero():
        lr, cr = r.lead()
        m = tuple(a - b for a, b in zip(lr, lg))
        if min(m) < 0:
            raise ValueError("divisor does not divide dividend")
        c = cr * inv % ring.p
        q[m] = c
        r = r - g.mul_monomial(m, c)
    return Polynomial(ring, q)


def _colon_variable(I: Ideal, i: int) -> Ideal:
    """I : x_i from a grevlex basis with x_i ordered last."""
    ring = I.ring
    n = ring.n_vars
    perm = [k for k in range(n) if k != i] + [i]
    w = None if ring.weights is None else tuple(ring.w[k] for k in perm)
    pring = RingSpec(n, ring.field, GREVLEX, None, w)

    def to_perm(f):
        return Polynomial(pring, {tuple(e[k] for k in perm): c for e, c in f.terms.items()})

    def from_perm(f):
        back = {}
        for e, c in f.terms.items():
            orig = [0] * n
            for pos, k in enumerate(perm):
                orig[k] = e[pos]
            back[tuple(orig)] = c
        return Polynomial(ring, back)

    basis = groebner_basis([to_perm(f) for f in I.gens], pring, I.budget)
    out = []
    for b in basis:
        if all(e[-1] >= 1 for e in b.terms):
            b = Polynomial(pring, {e[:-1] + (e[-1] - 1,): c for e, c in b.terms.items()})
        out.append(from_perm(b))
    return Ideal(ring, out, I.budget)


def _single_variable(g: Polynomial):
    if len(g.terms) == 1:
        (e, _), = g.terms.items()
        if sum(e) == 1 and max(e) == 1:
            return e.index(1)
    return None


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """I : J, generator by generator via (I ∩ (g)) / g, then intersected."""
    I._check(J)
    ring = I.ring
    if J.is_zero():
        return Ideal.unit(ring)
    parts = []
    for g in J.gens:
        if g.degree() == 0:
            parts.append(I)
            continue
        v = _single_variable(g) if ring.weights is None else None
        if v is not None:
            parts.append(_colon_variable(I, v))
            continue
        K = intersect(I, Ideal(ring, [g], I.budget))
        parts.append(Ideal(ring, [exact_divide(f, g) for f in K.gens], I.budget))
    return intersect_all(parts)


def saturate(I: Ideal, J: Ideal | None = None) -> tuple[Ideal, int]:
    """(I : J^∞, index); J defaults to the irrelevant ideal."""
    ring = I.ring
    irrelevant = J is None
    if J is None:
        J = Ideal.maximal(ring)
    I._check(J)
    if irrelevant and ring.weights is None:
        if I.is_unit():
            return I, 0
        if I.krull_dim() == 0:
            hs = I.hilbert_series()
            return Ideal.unit(ring), len(hs.reduced)
    cur, k = I, 0
    while True:
        nxt = quotient(cur, J)
        if nxt.equals(cur):
            return cur, k
        cur, k = nxt, k + 1


def eliminate(I: Ideal, drop) -> Ideal:
    """I ∩ K[kept variables]; returns an ideal in the ring of the kept variables."""
    ring = I.ring
    n = ring.n_vars
    drop = sorted(set(drop))
    if not drop:
        return I
    keep = [k for k in range(n) if k not in drop]
    perm = drop + keep
    w = None if ring.weights is None else tuple(ring.w[k] for k in perm)
    names = tuple(ring.var_names[k] for k in perm)
    big = RingSpec(n, ring.field, elim(len(drop)), names, w)
    gens = [Polynomial(big, {tuple(e[k] for k in perm): c for e, c in f.terms.items()})
            for f in I.gens]
    basis = groebner_basis(gens, big, I.budget)
    kw = None if ring.weights is None else tuple(ring.w[k] for k in keep)
    if kw is not None and len(set(kw)) == 1:
        kw = None  # uniform weights: the standard grading
    small = RingSpec(len(keep), ring.field, GREVLEX,
                     tuple(ring.var_names[k] for k in keep), kw)
    nd = len(drop)
    out = [Polynomial(small, {e[nd:]: c for e, c in b.terms.items()})
           for b in basis if not any(b.lead()[0][:nd])]
    return Ideal(small, out, I.budget)


# --- Jacobian criterion ------------------------------------------------------


def _det(rows: list) -> Polynomial:
    if len(rows) == 1:
        return rows[0][0]
    total = None
    for j in range(len(rows)):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def jacobian_minors(I: Ideal, c: int) -> list:
    n = I.ring.n_vars
    jac = [[f.diff(j) for j in range(n)] for f in I.gens]
    out = []
    for rows in itertools.combinations(range(len(jac)), c):
        for cols in itertools.combinations(range(n), c):
            m = _det([[jac[r][k] for k in cols] for r in rows])
            if not m.is_zero():
                out.append(m)
    return out


def singular_locus(I: Ideal, codim: int) -> Ideal:
    """I + (codim x codim minors of the Jacobian of the generators)."""
    return Ideal(I.ring, list(I.gens) + jacobian_minors(I, codim), I.budget)


def is_smooth(I: Ideal, codim: int, rng: np.random.Generator | None = None,
              n_combos: int | None = None) -> bool:
    """True iff the singular locus of V(I) is empty.

    First tries I plus a few random combinations of the minors: if that is
    already irrelevant-primary, so is the full singular-locus ideal.  Falls
    back to all minors otherwise.
    """
    rng = rng or np.random.default_rng(0)
    ring = I.ring
    minors = jacobian_minors(I, codim)
    if not minors:
        return I.krull_dim() <= 0
    p = ring.p
    by_deg: dict = {}
    for m in minors:
        by_deg.setdefault(m.degree(), []).append(m)
    k = n_combos or ring.n_vars
    combos = []
    for d, ms in by_deg.items():
        for _ in range(min(k, len(ms))):
            coef = rng.integers(1, p, size=len(ms))
            f = ring.zero()
            for a, m in zip(coef, ms):
                f = f + m.scale(int(a))
            combos.append(f)
    if Ideal(ring, list(I.gens) + combos, I.budget).krull_dim() <= 0:
        return True
    return Ideal(ring, list(I.gens) + minors, I.budget).krull_dim() <= 0
