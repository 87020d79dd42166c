"""Hilbert series of monomial ideals (standard grading).

For a monomial ideal ``I`` in ``n`` variables, ``HS(R/I) = N(T) / (1-T)^n``
with an integer numerator ``N``.  The numerator is computed with the pivot
recursion ``N(I) = N(I + (m)) + T^deg(m) * N(I : m)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

Numerator = tuple  # integer coefficients, index = power of T


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def minimalize(mons) -> list:
    """Minimal generators of the monomial ideal generated by ``mons``."""
    mons = sorted(set(tuple(m) for m in mons), key=sum)
    out: list = []
    for m in mons:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def _numerator(gens: tuple) -> list:
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return []  # unit ideal: zero quotient
    # pairwise coprime generators: product of (1 - T^deg)
    support = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    coprime = True
    seen: set = set()
    for s in support:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for g in gens:
            f = [0] * (sum(g) + 1)
            f[0] = 1
            f[-1] -= 1
            out = _pmul(out, f)
        return out
    # Pivot x_i^a with x_i^a dividing a non-pure-power generator m: such a
    # pivot is never in the ideal, so both branches make progress.
    n = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    mixed = [g for g in gens if sum(1 for a in g if a) > 1]
    m = max(mixed, key=lambda g: sum(counts[i] for i, a in enumerate(g) if a))
    i = max((k for k in range(n) if m[k]), key=lambda k: counts[k])
    exps = sorted(g[i] for g in gens if g[i])
    a = min(exps[len(exps) // 2], m[i])
    piv = tuple(a if k == i else 0 for k in range(n))
    plus = tuple(minimalize(list(gens) + [piv]))
    colon = tuple(minimalize([tuple(max(0, x - y) for x, y in zip(g, piv)) for g in gens]))
    left = _numerator(plus)
    right = [0] * a + _numerator(colon)
    return _trim(_padd(left, right))


def hilbert_numerator(mons, n_vars: int) -> list:
    """Numerator N(T) of the Hilbert series of R/(mons), R in n_vars variables."""
    gens = tuple(minimalize(mons))
    if gens and len(gens[0]) != n_vars:
        raise ValueError("exponent length differs from n_vars")
    return _trim(_numerator(gens))


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator / (1-T)^n_vars``, with the reduced form precomputed."""

    n_vars: int
    numerator: tuple
    reduced: tuple = field(init=False)
    krull_dim: int = field(init=False)

    def __post_init__(self):
        num = list(self.numerator)
        k = self.n_vars
        if not num:
            object.__setattr__(self, "reduced", ())
            object.__setattr__(self, "krull_dim", -1)
            return
        while k > 0 and sum(num) == 0:
            # divide by (1 - T): prefix sums
            q, acc = [], 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num = _trim(q)
            k -= 1
        object.__setattr__(self, "reduced", tuple(num))
        object.__setattr__(self, "krull_dim", k)

    @property
    def degree(self) -> int:
        """Multiplicity of R/I (0 for the zero module)."""
        return sum(self.reduced)

    def value(self, t: int) -> int:
        """dim [R/I]_t."""
        if t < 0 or not self.reduced:
            return 0
        k = self.krull_dim
        if k == 0:
            return self.reduced[t] if t < len(self.reduced) else 0
        return sum(c * comb(t - i + k - 1, k - 1) for i, c in enumerate(self.reduced) if i <= t)

    def stable_from(self) -> int:
        """Degree from which the Hilbert function equals the Hilbert polynomial."""
        return max(0, len(self.reduced) - self.krull_dim)
