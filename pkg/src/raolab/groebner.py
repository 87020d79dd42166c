"""Buchberger's algorithm for homogeneous ideals over GF(p).

Every ideal handled by the toolkit is homogeneous for the ring's (possibly
weighted) grading, so S-pairs are processed in increasing degree (the sugar
of a homogeneous pair is its degree).  Within a degree, polynomials are held
as dense vectors over the degree's monomial basis sorted by the monomial
order, which turns each reduction step into one numpy update.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .poly import Polynomial, RingSpec, monomial_basis

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    """Raised when a Gröbner computation exceeds its S-pair budget."""


class NotHomogeneous(ValueError):
    pass


class _Degree:
    """Monomial basis of one degree, largest monomial first."""

    def __init__(self, ring: RingSpec, d: int, radix: np.ndarray):
        mons = monomial_basis(ring, d)
        self.d = d
        self.mons = mons
        self.N = len(mons)
        self.E = np.array(mons, dtype=np.int64).reshape(self.N, ring.n_vars)
        codes = self.E @ radix
        self.order = np.argsort(codes, kind="stable")
        self.sorted_codes = codes[self.order]
        self.mask = None
        self.rows: dict = {}

    def lookup(self, E: np.ndarray, radix: np.ndarray) -> np.ndarray:
        codes = E @ radix
        pos = np.searchsorted(self.sorted_codes, codes)
        return self.order[pos]


@dataclass
class _Elem:
    deg: int
    lm: tuple
    E: np.ndarray      # exponents of terms
    c: np.ndarray      # coefficients (monic: leading coefficient 1)


class _Engine:
    def __init__(self, ring: RingSpec, budget: int):
        self.ring = ring
        self.p = ring.p
        self.n = ring.n_vars
        self.budget = budget
        self.work = 0
        # radix large enough for every exponent we will meet
        self.base = 512
        self.radix = np.array([self.base ** i for i in range(self.n)], dtype=np.int64)
        if self.base ** self.n >= 2**62:
            self.base = 64
            self.radix = np.array([self.base ** i for i in range(self.n)], dtype=np.int64)
        self.degrees: dict = {}
        self.elems: list[_Elem] = []
        self.lms = np.zeros((0, self.n), dtype=np.int64)

    def space(self, d: int) -> _Degree:
        sp = self.degrees.get(d)
        if sp is None:
            sp = _Degree(self.ring, d, self.radix)
            self.degrees[d] = sp
        return sp

    # -- divisibility masks and reducer rows
    def mask(self, sp: _Degree) -> np.ndarray:
        if sp.mask is None:
            m = np.zeros(sp.N, dtype=bool)
            k = len(self.elems)
            if k and sp.N:
                step = max(1, 2_000_000 // (k * self.n + 1))
                for s in range(0, sp.N, step):
                    blk = sp.E[s:s + step]
                    m[s:s + step] = np.any(np.all(blk[:, None, :] >= self.lms[None, :, :], axis=2), axis=1)
            sp.mask = m
        return sp.mask

    def row(self, sp: _Degree, idx: int):
        r = sp.rows.get(idx)
        if r is None:
            mono = sp.E[idx]
            ok = np.flatnonzero(np.all(mono[None, :] >= self.lms, axis=1))
            g = self.elems[int(ok[0])]
            shift = mono - np.array(g.lm, dtype=np.int64)
            cols = sp.lookup(g.E + shift, self.radix)
            r = (cols, g.c)
            sp.rows[idx] = r
        return r

    def reduce(self, v: np.ndarray, sp: _Degree, start: int = 0) -> np.ndarray:
        """Fully reduce dense vector ``v`` (in place) from position ``start``."""
        p = self.p
        mask = self.mask(sp)
        pos = start
        while True:
            hit = np.flatnonzero((v[pos:] != 0) & mask[pos:])
            if hit.size == 0:
                return v
            j = pos + int(hit[0])
            cols, coef = self.row(sp, j)
            v[cols] = (v[cols] - int(v[j]) * coef) % p
            pos = j + 1

    def to_elem(self, v: np.ndarray, sp: _Degree) -> _Elem:
        nz = np.flatnonzero(v)
        lead = int(nz[0])
        inv = pow(int(v[lead]), self.p - 2, self.p)
        c = v[nz] * inv % self.p
        return _Elem(sp.d, sp.mons[lead], sp.E[nz].copy(), c)

    def add(self, e: _Elem, sp: _Degree):
        self.elems.append(e)
        self.lms = np.vstack([self.lms, np.array(e.lm, dtype=np.int64)[None, :]])
        # degree spaces above sp.d are rebuilt lazily; only sp's mask needs patching
        idx = int(sp.lookup(np.array(e.lm, dtype=np.int64)[None, :], self.radix)[0])
        if sp.mask is not None:
            sp.mask[idx] = True
        for d, other in self.degrees.items():
            if d > sp.d:
                other.mask = None
                other.rows.clear()

    def vec_from_poly(self, f: Polynomial, sp: _Degree) -> np.ndarray:
        v = np.zeros(sp.N, dtype=np.int64)
        if f.terms:
            E = np.array(list(f.terms.keys()), dtype=np.int64)
            cols = sp.lookup(E, self.radix)
            v[cols] = np.array(list(f.terms.values()), dtype=np.int64) % self.p
        return v

    def shifted(self, e: _Elem, lcm: np.ndarray, sp: _Degree) -> np.ndarray:
        v = np.zeros(sp.N, dtype=np.int64)
        shift = lcm - np.array(e.lm, dtype=np.int64)
        cols = sp.lookup(e.E + shift, self.radix)
        v[cols] = e.c
        return v

    # -- main loop
    def run(self, gens: list[Polynomial]) -> list[_Elem]:
        by_deg: dict = {}
        for f in gens:
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise NotHomogeneous(f"generator is not homogeneous: {f}")
            by_deg.setdefault(f.degree(), []).append(f)
        pairs: list = []   # (deg, lcm tuple, i, j), i < j
        while by_deg or pairs:
            d = min(list(by_deg) + [q[0] for q in pairs])
            sp = self.space(d)
            vecs = [self.vec_from_poly(f, sp) for f in by_deg.pop(d, [])]
            while True:
                if vecs:
                    v = vecs.pop(0)
                else:
                    now = [q for q in pairs if q[0] == d]
                    if not now:
                        break
                    q = min(now, key=lambda q: (q[3], q[2]))
                    pairs.remove(q)
                    _, lcm, i, j = q
                    lcm_a = np.array(lcm, dtype=np.int64)
                    v = (self.shifted(self.elems[i], lcm_a, sp)
                         - self.shifted(self.elems[j], lcm_a, sp)) % self.p
                self.work += 1
                if self.work > self.budget:
                    raise BudgetExceeded(f"S-pair budget {self.budget} exceeded")
                self.reduce(v, sp)
                if not v.any():
                    continue
                e = self.to_elem(v, sp)
                h = len(self.elems)
                self.add(e, sp)
                pairs = self._prune(pairs, h) + self._update(h)
        return self._reduced()

    def _prune(self, pairs: list, h: int) -> list:
        """Drop old pairs made redundant by the new leading monomial."""
        lh = self.elems[h].lm
        out = []
        for q in pairs:
            _, lcm, i, j = q
            if all(a <= b for a, b in zip(lh, lcm)):
                li, lj = self.elems[i].lm, self.elems[j].lm
                lih = tuple(max(a, b) for a, b in zip(li, lh))
                ljh = tuple(max(a, b) for a, b in zip(lj, lh))
                if lih != lcm and ljh != lcm:
                    continue
            out.append(q)
        return out

    def _update(self, h: int) -> list:
        """Gebauer-Möller: pairs (g, h) that survive both criteria."""
        lh = self.elems[h].lm
        cand = []
        for g in range(h):
            lg = self.elems[g].lm
            lcm = tuple(max(a, b) for a, b in zip(lh, lg))
            coprime = all(a == 0 or b == 0 for a, b in zip(lh, lg))
            cand.append((g, lcm, coprime))
        kept = []
        for idx, (g, lcm, coprime) in enumerate(cand):
            if coprime:
                kept.append((g, lcm, coprime))
                continue
            dominated = False
            for jdx, (g2, lcm2, cop2) in enumerate(cand):
                if jdx == idx:
                    continue
                if all(a <= b for a, b in zip(lcm2, lcm)):
                    if lcm2 != lcm or jdx < idx:
                        dominated = True
                        break
            if not dominated:
                kept.append((g, lcm, coprime))
        out = []
        for g, lcm, coprime in kept:
            if coprime:
                continue
            out.append((self.ring.wdeg(lcm), lcm, g, h))
        return out

    def _reduced(self) -> list[_Elem]:
        """Tail-reduce every element against the others."""
        out = []
        for d in sorted({e.deg for e in self.elems}):
            sp = self.space(d)
            sp.mask = None
            sp.rows.clear()
            for e in [e for e in self.elems if e.deg == d]:
                v = self.shifted(e, np.array(e.lm, dtype=np.int64), sp)
                lead = int(sp.lookup(np.array(e.lm, dtype=np.int64)[None, :], self.radix)[0])
                self.reduce(v, sp, start=lead + 1)
                out.append(self.to_elem(v, sp))
        return out


def groebner_basis(gens: list[Polynomial], ring: RingSpec | None = None,
                   budget: int = DEFAULT_BUDGET) -> list[Polynomial]:
    """Reduced Gröbner basis of homogeneous ``gens`` for ``ring.order``."""
    gens = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    gens = [g.change_ring(ring) for g in gens]
    if not gens:
        return []
    eng = _Engine(ring, budget)
    elems = eng.run(gens)
    out = []
    for e in elems:
        terms = {tuple(int(a) for a in row): int(c) for row, c in zip(e.E, e.c)}
        out.append(Polynomial(ring, terms))
    key = ring.sort_key()
    out.sort(key=lambda f: key(f.lead()[0]))
    return out


class Reducer:
    """Normal forms modulo a fixed Gröbner basis."""

    def __init__(self, gb: list[Polynomial], ring: RingSpec):
        self.ring = ring
        self._eng = _Engine(ring, budget=0)
        for g in gb:
            if g.is_zero():
                continue
            g = g.change_ring(ring).monic()
            lm = g.lead()[0]
            E = np.array(list(g.terms.keys()), dtype=np.int64)
            c = np.array(list(g.terms.values()), dtype=np.int64)
            d = ring.wdeg(lm)
            self._eng.add(_Elem(d, lm, E, c), self._eng.space(d))

    def normal_form(self, f: Polynomial) -> Polynomial:
        f = f.change_ring(self.ring)
        by_deg: dict = {}
        for e, c in f.terms.items():
            by_deg.setdefault(self.ring.wdeg(e), {})[e] = c
        out: dict = {}
        eng = self._eng
        for d, terms in by_deg.items():
            sp = eng.space(d)
            v = eng.vec_from_poly(Polynomial(self.ring, terms), sp)
            eng.reduce(v, sp)
            for i in np.flatnonzero(v):
                out[sp.mons[int(i)]] = int(v[i])
        return Polynomial(self.ring, out)
