"""Sparse multivariate polynomials over GF(p).

A polynomial is a dict ``{exponent tuple: coefficient}`` with no zero
coefficients, attached to a :class:`RingSpec`.  Variables are named
``x0..x{n-1}``; the parser also accepts ``x, y, z, w`` positionally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from .gf import FieldSpec

ALIASES = ("x", "y", "z", "w")

GREVLEX = "grevlex"
LEX = "lex"


def elim(k: int) -> tuple:
    """Block order tag eliminating the first ``k`` variables."""
    return ("elim", k)


@dataclass(frozen=True)
class RingSpec:
    n_vars: int
    field: FieldSpec = field(default_factory=FieldSpec)
    order: object = GREVLEX
    names: tuple | None = None
    weights: tuple | None = None

    def __post_init__(self):
        if self.names is not None and len(self.names) != self.n_vars:
            raise ValueError("names length must equal n_vars")
        if self.weights is not None:
            if len(self.weights) != self.n_vars or min(self.weights) < 1:
                raise ValueError("weights must be positive, one per variable")
        o = self.order
        if not (o in (GREVLEX, LEX) or (isinstance(o, tuple) and o[0] == "elim"
                                         and 0 <= o[1] <= self.n_vars)):
            raise ValueError(f"unknown monomial order {o!r}")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def var_names(self) -> tuple:
        return self.names or tuple(f"x{i}" for i in range(self.n_vars))

    @property
    def w(self) -> tuple:
        return self.weights or (1,) * self.n_vars

    def with_order(self, order) -> "RingSpec":
        return RingSpec(self.n_vars, self.field, order, self.names, self.weights)

    def with_field(self, fs: FieldSpec) -> "RingSpec":
        return RingSpec(self.n_vars, fs, self.order, self.names, self.weights)

    def standard(self) -> "RingSpec":
        """Same variables, grevlex, standard grading."""
        return RingSpec(self.n_vars, self.field, GREVLEX, self.names, None)

    def sort_key(self):
        return order_key(self.order, self.w)

    def wdeg(self, e) -> int:
        if self.weights is None:
            return sum(e)
        return sum(a * b for a, b in zip(e, self.weights))

    def var(self, i: int) -> "Polynomial":
        e = [0] * self.n_vars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.n_vars)]

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {(0,) * self.n_vars: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def linear_form(self, coeffs) -> "Polynomial":
        terms = {}
        for i, c in enumerate(coeffs):
            c = int(c) % self.p
            if c:
                e = [0] * self.n_vars
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        return parse(text, self)


@lru_cache(maxsize=None)
def order_key(order, weights):
    """Return a sort key on exponent tuples; larger key = larger monomial."""

    def wdeg(e, lo=0, hi=None):
        return sum(a * w for a, w in zip(e[lo:hi], weights[lo:hi]))

    if order == GREVLEX:
        return lambda e: (wdeg(e), tuple(-a for a in reversed(e)))
    if order == LEX:
        return lambda e: e
    k = order[1]
    return lambda e: (wdeg(e, 0, k), tuple(-a for a in reversed(e[:k])),
                      wdeg(e, k), tuple(-a for a in reversed(e[k:])))


class Polynomial:
    """An element of GF(p)[x0..x{n-1}]; treat instances as immutable."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: dict | None = None):
        self.ring = ring
        self.terms = terms if terms is not None else {}
        self._hash = None

    # -- basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.wdeg(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.wdeg(e) for e in self.terms}) <= 1

    def monomials(self) -> list:
        return sorted(self.terms, key=self.ring.sort_key(), reverse=True)

    def lead(self):
        """(exponent, coefficient) of the leading term under the ring's order."""
        e = max(self.terms, key=self.ring.sort_key())
        return e, self.terms[e]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.lead()
        return self.scale(self.ring.field.inv(c))

    def coefficient(self, e) -> int:
        return self.terms.get(tuple(e), 0)

    def variables(self) -> set:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring.n_vars != self.ring.n_vars or other.ring.p != self.ring.p:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = (t.get(e, 0) + c) % p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def mul_monomial(self, m, c: int = 1) -> "Polynomial":
        p = self.ring.p
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(e, m)): v * c % p
                                      for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = (t.get(e, 0) + c1 * c2) % p
        return Polynomial(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.n_vars == other.ring.n_vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def diff(self, i: int) -> "Polynomial":
        p = self.ring.p
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                v = c * e[i] % p
                if v:
                    e2 = list(e)
                    e2[i] -= 1
                    t[tuple(e2)] = v
        return Polynomial(self.ring, t)

    def evaluate(self, point) -> int:
        p = self.ring.p
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, a in zip(point, e):
                if a:
                    v = v * pow(int(x), a, p) % p
            total += v
        return total % p

    def divide_monomial(self, m) -> "Polynomial":
        """Exact division by the monomial with exponent ``m``."""
        t = {}
        for e, c in self.terms.items():
            q = tuple(a - b for a, b in zip(e, m))
            if min(q) < 0:
                raise ValueError("monomial does not divide polynomial")
            t[q] = c
        return Polynomial(self.ring, t)

    def change_ring(self, ring: RingSpec) -> "Polynomial":
        if ring.n_vars != self.ring.n_vars:
            raise ValueError("variable count mismatch")
        p = ring.p
        return Polynomial(ring, {e: c % p for e, c in self.terms.items() if c % p})

    def __repr__(self):
        return f"Polynomial({to_string(self)!r})"

    def __str__(self):
        return to_string(self)


# --- monomial bases ----------------------------------------------------------


@lru_cache(maxsize=None)
def _monomials(n: int, t: int) -> tuple:
    out = []
    for combo in combinations_with_replacement(range(n), t):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


def monomial_basis(ring: RingSpec, t: int) -> list:
    """All monomials of degree t, largest first in the ring's order."""
    if t < 0:
        return []
    return list(_sorted_basis(ring.n_vars, ring.order, ring.weights, t))


@lru_cache(maxsize=4096)
def _sorted_basis(n: int, order, weights, t: int) -> tuple:
    mons = _monomials(n, t) if weights is None else weighted_monomials(weights, t)
    return tuple(sorted(mons, key=order_key(order, weights or (1,) * n), reverse=True))


@lru_cache(maxsize=None)
def weighted_monomials(weights: tuple, d: int) -> tuple:
    n = len(weights)
    out = []

    def rec(i, rem, acc):
        if i == n - 1:
            if rem % weights[i] == 0:
                out.append(tuple(acc + [rem // weights[i]]))
            return
        for a in range(rem // weights[i] + 1):
            rec(i + 1, rem - a * weights[i], acc + [a])

    if n == 0:
        return ((),) if d == 0 else ()
    rec(0, d, [])
    return tuple(out)


def dim_forms(n_vars: int, t: int) -> int:
    """dim of degree-t forms in n_vars variables (0 for t < 0)."""
    return comb(t + n_vars - 1, n_vars - 1) if t >= 0 else 0


# --- substitution ------------------------------------------------------------


def substitute(f: Polynomial, images, require_homogeneous: bool = True) -> Polynomial:
    """Compose f with ``x_i -> images[i]``."""
    if len(images) != f.ring.n_vars:
        raise ValueError(f"expected {f.ring.n_vars} images, got {len(images)}")
    if not images:
        raise ValueError("no images")
    target = images[0].ring
    if require_homogeneous:
        degs = {g.degree() for g in images if not g.is_zero()}
        if any(not g.is_homogeneous() for g in images) or len(degs) > 1:
            raise ValueError("images must be homogeneous of one common degree")
    powers: list[dict] = [dict() for _ in images]

    def pw(i, a):
        cache = powers[i]
        if a not in cache:
            cache[a] = images[i] ** a
        return cache[a]

    result = target.zero()
    for e, c in f.terms.items():
        term = target.const(c)
        for i, a in enumerate(e):
            if a:
                term = term * pw(i, a)
        result = result + term
    return result


# --- parsing and printing ----------------------------------------------------


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("var", m.group(2), start))
        elif m.group(3):
            if m.group(3).isspace():
                pos = m.end()
                continue
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: RingSpec):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        names = {name: k for k, name in enumerate(ring.var_names)}
        if ring.names is None:
            for k, a in enumerate(ALIASES[:ring.n_vars]):
                names.setdefault(a, k)
        self.names = names

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, value=None):
        t = self.take()
        if t[0] != kind or (value is not None and t[1] != value):
            raise ParseError(f"expected {value or kind!r}, got {t[1]!r}", t[2])
        return t

    def expression(self):
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term().scale(sign)
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                nxt = self.term()
                acc = acc + nxt if t[1] == "+" else acc - nxt
            else:
                return acc

    def term(self):
        t = self.peek()
        acc = self.ring.one()
        started = False
        if t[0] == "num":
            self.take()
            acc = self.ring.const(int(t[1]))
            started = True
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                raise ParseError("rational literals are not supported", self.peek()[2])
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                if not started:
                    raise ParseError("unexpected '*'", t[2])
                self.take()
                acc = acc * self.factor()
            elif t[0] == "var" or (t[0] == "op" and t[1] == "("):
                acc = acc * self.factor()
            elif t[0] == "op" and t[1] == "/":
                raise ParseError("division is not supported", t[2])
            else:
                if not started:
                    raise ParseError(f"unexpected {t[1]!r}" if t[1] else "unexpected end", t[2])
                return acc
            started = True

    def factor(self):
        t = self.take()
        if t[0] == "var":
            if t[1] not in self.names:
                raise ParseError(f"unknown variable {t[1]!r}", t[2])
            base = self.ring.var(self.names[t[1]])
        elif t[0] == "op" and t[1] == "(":
            base = self.expression()
            self.expect("op", ")")
        elif t[0] == "num":
            base = self.ring.const(int(t[1]))
        else:
            raise ParseError(f"unexpected {t[1]!r}" if t[1] else "unexpected end", t[2])
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            e = self.expect("num")
            base = base ** int(e[1])
        return base


def parse(text: str, ring: RingSpec) -> Polynomial:
    """Parse ``text`` per the polynomial grammar; coefficients reduced mod p."""
    ps = _Parser(text, ring)
    if ps.peek()[0] == "end":
        raise ParseError("empty expression", 0)
    f = ps.expression()
    t = ps.peek()
    if t[0] != "end":
        raise ParseError(f"unexpected {t[1]!r}", t[2])
    return f


def _mono_str(e, names) -> str:
    parts = []
    for a, nm in zip(e, names):
        if a == 1:
            parts.append(nm)
        elif a > 1:
            parts.append(f"{nm}^{a}")
    return "*".join(parts)


def to_string(f: Polynomial) -> str:
    """Canonical text: terms in decreasing order, coefficients in (-p/2, p/2]."""
    if not f.terms:
        return "0"
    p = f.ring.p
    names = f.ring.var_names
    out = []
    for e in f.monomials():
        c = f.terms[e]
        neg = c > p // 2
        mag = p - c if neg else c
        mono = _mono_str(e, names)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# --- ideal files -------------------------------------------------------------

_HEADER = re.compile(r"^\s*ring:\s*n_vars\s*=\s*(\d+)\s+p\s*=\s*(\d+)\s*$")


def read_ideal_text(text: str) -> tuple[RingSpec, list]:
    ring = None
    polys = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ring is None:
            m = _HEADER.match(line)
            if not m:
                raise ParseError(f"line {lineno}: missing 'ring: n_vars=<k> p=<prime>' header", 0)
            ring = RingSpec(int(m.group(1)), FieldSpec(int(m.group(2))))
            continue
        try:
            polys.append(parse(line, ring))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}", exc.pos) from None
    if ring is None:
        raise ParseError("empty ideal file", 0)
    return ring, polys


def write_ideal_text(ring: RingSpec, polys) -> str:
    lines = [f"ring: n_vars={ring.n_vars} p={ring.p}"]
    lines += [to_string(f) for f in polys]
    return "\n".join(lines) + "\n"
