"""Buchberger's algorithm and the ideal operations built on it.

Orders are described by a *sort key* on exponent tuples: a smaller key means a
larger monomial, so ``min(terms, key=order.skey)`` is the leading monomial and
Python's min-heap pops terms from largest to smallest.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .exactalg import Polynomial, Ring, RingMismatchError

__all__ = [
    "Budget",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "MonomialOrder",
    "GRevLex",
    "BlockOrder",
    "Ideal",
    "buchberger",
    "normal_form",
    "divide_exact",
    "eliminate",
    "intersect",
    "intersect_all",
    "colon",
    "colon_ideal",
    "saturate",
    "hilbert_function",
    "krull_dimension",
    "maximal_ideal",
    "monomials_of_degree",
    "count_monomials",
]


class BudgetExceeded(RuntimeError):
    """A Gröbner computation outgrew its degree or basis-size budget."""


@dataclass(frozen=True)
class Budget:
    max_degree: int = 60
    max_basis: int = 20_000


DEFAULT_BUDGET = Budget()


# ---------------------------------------------------------------------------
# monomial orders

class MonomialOrder:
    nvars: int
    weights: tuple | None

    def skey(self, exp: tuple) -> tuple:  # pragma: no cover - overridden
        raise NotImplementedError

    def selection_degree(self, exp: tuple) -> int:
        w = self.weights
        if w is None:
            return sum(exp)
        return sum(a * b for a, b in zip(w, exp))


@dataclass(frozen=True)
class GRevLex(MonomialOrder):
    """Graded reverse lexicographic order.

    ``perm`` lists the variables from most to least significant (default: ring
    order).  ``weights`` only steer pair selection, not the order itself.
    """

    nvars: int
    perm: tuple | None = None
    weights: tuple | None = None
    _key: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.perm is None:
            key = _plain_grevlex
        else:
            rev = tuple(self.perm[::-1])
            if sorted(rev) != list(range(self.nvars)):
                raise ValueError("perm must be a permutation of the variables")

            def key(e, rev=rev):
                return (-sum(e),) + tuple([e[i] for i in rev])

        object.__setattr__(self, "_key", key)

    def skey(self, exp):
        return self._key(exp)


def _plain_grevlex(e):
    return (-sum(e),) + e[::-1]


@dataclass(frozen=True)
class BlockOrder(MonomialOrder):
    """Two-block elimination order: grevlex on ``first``, ties broken by
    grevlex on the remaining variables.  Any monomial involving a first-block
    variable is larger than every monomial free of them."""

    nvars: int
    first: tuple
    weights: tuple | None = None
    _key: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        b1 = tuple(self.first)
        b2 = tuple(i for i in range(self.nvars) if i not in b1)
        r1, r2 = b1[::-1], b2[::-1]

        def key(e):
            return (
                (-sum([e[i] for i in b1]),)
                + tuple([e[i] for i in r1])
                + (-sum([e[i] for i in b2]),)
                + tuple([e[i] for i in r2])
            )

        object.__setattr__(self, "_key", key)

    def skey(self, exp):
        return self._key(exp)


# ---------------------------------------------------------------------------
# raw-dict kernels

def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Elem:
    __slots__ = ("lm", "terms", "tail")

    def __init__(self, terms: dict, key):
        lm = min(terms, key=key)
        c = terms[lm]
        if c != 1:
            inv = 1 / c
            terms = {e: v * inv for e, v in terms.items()}
        self.lm = lm
        self.terms = terms
        self.tail = [(e, v) for e, v in terms.items() if e != lm]


def _reduce(f: dict, elems: Sequence[_Elem], key) -> dict:
    """Full reduction of ``f`` by monic ``elems``; returns the remainder."""
    f = dict(f)
    rem = {}
    heap = [(key(e), e) for e in f]
    heapq.heapify(heap)
    while heap:
        _, e = heapq.heappop(heap)
        c = f.pop(e, None)
        if c is None:
            continue
        red = None
        for g in elems:
            if _divides(g.lm, e):
                red = g
                break
        if red is None:
            rem[e] = c
            continue
        q = tuple([a - b for a, b in zip(e, red.lm)])
        for ge, gc in red.tail:
            ne = tuple([a + b for a, b in zip(ge, q)])
            old = f.get(ne)
            if old is None:
                f[ne] = -c * gc
                heapq.heappush(heap, (key(ne), ne))
            else:
                v = old - c * gc
                if v:
                    f[ne] = v
                else:
                    del f[ne]
    return rem


def _spoly(g1: _Elem, g2: _Elem, lcm: tuple) -> dict:
    m1 = tuple([a - b for a, b in zip(lcm, g1.lm)])
    m2 = tuple([a - b for a, b in zip(lcm, g2.lm)])
    out: dict = {}
    for e, c in g1.tail:
        out[tuple([a + b for a, b in zip(e, m1)])] = c
    for e, c in g2.tail:
        ne = tuple([a + b for a, b in zip(e, m2)])
        v = out.get(ne, 0) - c
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    return out


def _groebner_raw(polys: Iterable[dict], order: MonomialOrder, budget: Budget) -> list[dict]:
    key = order.skey
    seldeg = order.selection_degree
    G: list[_Elem] = []
    active: list[int] = []
    pairs: list = []
    counter = itertools.count()

    def update(h_idx: int):
        nonlocal pairs, active
        h = G[h_idx]
        hlm = h.lm
        cand = [(g, _lcm(hlm, G[g].lm)) for g in active]
        keep = []
        for pos, (g, l) in enumerate(cand):
            if _coprime(hlm, G[g].lm):
                keep.append((g, l))
                continue
            dominated = any(
                _divides(l2, l) for _, l2 in itertools.chain(cand[pos + 1 :], keep)
            )
            if not dominated:
                keep.append((g, l))
        new_pairs = [
            (seldeg(l), key(l), next(counter), g, h_idx, l)
            for g, l in keep
            if not _coprime(hlm, G[g].lm)
        ]
        kept_old = []
        for item in pairs:
            _, _, _, a, b, l = item
            if (
                _divides(hlm, l)
                and _lcm(G[a].lm, hlm) != l
                and _lcm(hlm, G[b].lm) != l
            ):
                continue
            kept_old.append(item)
        pairs = kept_old + new_pairs
        heapq.heapify(pairs)
        active = [g for g in active if not _divides(hlm, G[g].lm)] + [h_idx]
        if len(active) > budget.max_basis:
            raise BudgetExceeded(f"Gröbner basis exceeded {budget.max_basis} elements")

    inputs = sorted((p for p in polys if p), key=lambda p: seldeg(min(p, key=key)))
    for p in inputs:
        h = _reduce(p, [G[i] for i in active], key)
        if h:
            G.append(_Elem(h, key))
            update(len(G) - 1)

    while pairs:
        _, _, _, a, b, l = heapq.heappop(pairs)
        if sum(l) > budget.max_degree:
            raise BudgetExceeded(f"S-pair degree {sum(l)} exceeds budget {budget.max_degree}")
        s = _spoly(G[a], G[b], l)
        h = _reduce(s, [G[i] for i in active], key)
        if h:
            G.append(_Elem(h, key))
            update(len(G) - 1)

    basis = [G[i] for i in active]
    out = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1 :]
        tail = _reduce(dict(g.tail), others, key)
        tail[g.lm] = Fraction(1)
        out.append(tail)
    out.sort(key=lambda t: key(min(t, key=key)))
    return out


# ---------------------------------------------------------------------------
# public API

def _default_order(ring: Ring) -> GRevLex:
    return GRevLex(ring.ngens)


def buchberger(gens, order: MonomialOrder | None = None, budget: Budget | None = None) -> list[Polynomial]:
    """Reduced Gröbner basis of an :class:`Ideal` or a list of polynomials."""
    if isinstance(gens, Ideal):
        return list(gens.groebner(order, budget))
    gens = list(gens)
    if not gens:
        return []
    ring = gens[0].ring
    return list(Ideal(ring, gens).groebner(order, budget))


def normal_form(p: Polynomial, G: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of ``p`` on division by the Gröbner basis ``G``."""
    order = order or _default_order(p.ring)
    for g in G:
        if g.ring != p.ring:
            raise RingMismatchError(f"{g.ring} vs {p.ring}")
    elems = [_Elem(dict(g.raw), order.skey) for g in G if g]
    return Polynomial._clean(p.ring, _reduce(p.raw, elems, order.skey))


def divide_exact(p: Polynomial, q: Polynomial) -> Polynomial:
    """``p / q``; raises ValueError if ``q`` does not divide ``p``."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    key = _plain_grevlex
    qlm = min(q.raw, key=key)
    qlc = q.raw[qlm]
    rem = dict(p.raw)
    quo: dict = {}
    while rem:
        lm = min(rem, key=key)
        if not _divides(qlm, lm):
            raise ValueError(f"{q} does not divide {p}")
        m = tuple(a - b for a, b in zip(lm, qlm))
        c = rem[lm] / qlc
        quo[m] = c
        for e, v in q.raw.items():
            ne = tuple(a + b for a, b in zip(e, m))
            nv = rem.get(ne, 0) - c * v
            if nv:
                rem[ne] = nv
            else:
                rem.pop(ne, None)
    return Polynomial._clean(p.ring, quo)


class Ideal:
    """Ideal of ``ring`` given by generators; Gröbner bases are cached per order."""

    def __init__(self, ring: Ring, gens: Iterable[Polynomial] = ()):
        clean = []
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"generator in {g.ring}, ideal in {ring}")
            if g:
                clean.append(g)
        self.ring = ring
        self.gens = tuple(clean)
        self._gb: dict = {}

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: Ring) -> "Ideal":
        return cls(ring, [])

    def groebner(self, order: MonomialOrder | None = None, budget: Budget | None = None) -> tuple:
        order = order or _default_order(self.ring)
        if order.nvars != self.ring.ngens:
            raise ValueError("order and ring disagree on the number of variables")
        gb = self._gb.get(order)
        if gb is None:
            raw = _groebner_raw([dict(g.raw) for g in self.gens], order, budget or DEFAULT_BUDGET)
            gb = tuple(Polynomial._clean(self.ring, t) for t in raw)
            self._gb[order] = gb
        return gb

    def leading_monomials(self, order: MonomialOrder | None = None) -> list[tuple]:
        order = order or _default_order(self.ring)
        return [min(g.raw, key=order.skey) for g in self.groebner(order)]

    def reduce(self, p: Polynomial, order: MonomialOrder | None = None,
               budget: Budget | None = None) -> Polynomial:
        order = order or _default_order(self.ring)
        return normal_form(p, self.groebner(order, budget), order)

    def contains(self, p: Polynomial, budget: Budget | None = None) -> bool:
        return self.reduce(p, budget=budget).is_zero()

    def __contains__(self, p: Polynomial) -> bool:
        return self.contains(p)

    def is_subset(self, other: "Ideal", budget: Budget | None = None) -> bool:
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return all(other.contains(g, budget) for g in self.gens)

    def equals(self, other: "Ideal", budget: Budget | None = None) -> bool:
        """Ideal equality by membership of each side's generators in the other."""
        return self.is_subset(other, budget) and other.is_subset(self, budget)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.groebner())

    def is_homogeneous(self, weights=None) -> bool:
        return all(g.is_homogeneous(weights) for g in self.gens)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def __pow__(self, e: int) -> "Ideal":
        if e == 0:
            return Ideal.unit(self.ring)
        out = self
        for _ in range(e - 1):
            out = Ideal(out.ring, _dedupe(a * b for a in out.gens for b in self.gens))
        return out

    def minimal_generators(self) -> list[Polynomial]:
        """Minimal homogeneous generators (degree by degree linear algebra)."""
        if not self.is_homogeneous():
            raise ValueError("minimal generators need a homogeneous ideal")
        chosen: list[Polynomial] = []
        for d in sorted({g.degree() for g in self.gens}):
            lower = Ideal(self.ring, chosen)
            for g in self.gens:
                if g.degree() == d and not lower.contains(g):
                    chosen.append(g)
                    lower = Ideal(self.ring, chosen)
        return chosen

    def __repr__(self):
        body = ", ".join(str(g) for g in self.gens[:6])
        more = ", ..." if len(self.gens) > 6 else ""
        return f"Ideal(<{body}{more}> in {self.ring})"


def _dedupe(polys: Iterable[Polynomial]) -> list[Polynomial]:
    seen = set()
    out = []
    for p in polys:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def maximal_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, ring.gens())


def monomials_of_degree(nvars: int, d: int) -> list[tuple]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def count_monomials(nvars: int, d: int) -> int:
    if d < 0:
        return 0
    if nvars == 0:
        return 1 if d == 0 else 0
    return comb(d + nvars - 1, nvars - 1)


def hilbert_function(I: Ideal, d_max: int) -> list[int]:
    """dim_Q (R/I)_d for d = 0..d_max, counted as standard monomials."""
    n = I.ring.ngens
    lms = I.leading_monomials()
    out = []
    for d in range(d_max + 1):
        if not lms:
            out.append(count_monomials(n, d))
            continue
        out.append(sum(1 for e in monomials_of_degree(n, d) if not any(_divides(m, e) for m in lms)))
    return out


def krull_dimension(I: Ideal) -> int:
    """Largest set of variables containing the support of no leading monomial."""
    if I.is_unit():
        raise ValueError("the unit ideal has no Krull dimension")
    n = I.ring.ngens
    supports = {sum(1 << i for i, a in enumerate(m) if a) for m in I.leading_monomials()}
    # supports contained in others are redundant
    minimal = [s for s in supports if not any(t != s and t & s == t for t in supports)]
    full = (1 << n) - 1
    for size in range(n, -1, -1):
        for combo in itertools.combinations(range(n), size):
            mask = sum(1 << i for i in combo)
            if all(s & ~mask & full for s in minimal):
                return size
    return 0


def eliminate(I: Ideal, drop: Sequence, selection_weights: Sequence[int] | None = None,
              budget: Budget | None = None) -> Ideal:
    """Intersection of ``I`` with the subring without the ``drop`` variables.

    ``drop`` holds names or indices.  The result lives in the ring of the
    remaining variables (in their original order).
    """
    ring = I.ring
    idx = tuple(ring.index(v) if isinstance(v, str) else int(v) for v in drop)
    keep = [i for i in range(ring.ngens) if i not in idx]
    order = BlockOrder(ring.ngens, idx, tuple(selection_weights) if selection_weights else None)
    gb = I.groebner(order, budget)
    sub = Ring(tuple(ring.names[i] for i in keep))
    gens = []
    for g in gb:
        if any(e[i] for e in g.raw for i in idx):
            continue
        gens.append(
            Polynomial._clean(sub, {tuple(e[i] for i in keep): c for e, c in g.raw.items()})
        )
    return Ideal(sub, gens)


def _with_aux(ring: Ring, name: str = "_u") -> tuple[Ring, list[int]]:
    while name in ring.names:
        name = "_" + name
    big = ring.extend([name], front=True)
    return big, [i + 1 for i in range(ring.ngens)]


def intersect(I: Ideal, J: Ideal, budget: Budget | None = None) -> Ideal:
    if I.ring != J.ring:
        raise RingMismatchError(f"{I.ring} vs {J.ring}")
    if I.is_zero() or J.is_zero():
        return Ideal.zero(I.ring)
    big, pos = _with_aux(I.ring)
    u = big.gen(0)
    gens = [u * g.change_ring(big, pos) for g in I.gens]
    gens += [(1 - u) * g.change_ring(big, pos) for g in J.gens]
    weights = (0,) + (1,) * I.ring.ngens
    res = eliminate(Ideal(big, gens), [0], weights, budget)
    return Ideal(I.ring, [g.change_ring(I.ring, range(I.ring.ngens)) for g in res.gens])


def intersect_all(ideals: Sequence[Ideal], budget: Budget | None = None) -> Ideal:
    if not ideals:
        raise ValueError("need at least one ideal")
    # unit ideals are neutral
    nontrivial = [I for I in ideals if not I.is_unit()]
    if not nontrivial:
        return Ideal.unit(ideals[0].ring)
    out = nontrivial[0]
    for J in nontrivial[1:]:
        out = intersect(out, J, budget)
    return out


def colon(I: Ideal, g: Polynomial, budget: Budget | None = None) -> Ideal:
    """I : g."""
    if g.is_zero() or I.contains(g):
        return Ideal.unit(I.ring)
    meet = intersect(I, Ideal(I.ring, [g]), budget)
    return Ideal(I.ring, [divide_exact(h, g) for h in meet.gens])


def colon_ideal(I: Ideal, J: Ideal, budget: Budget | None = None) -> Ideal:
    """I : J as the intersection of the colons by the generators of J."""
    if J.is_zero():
        return Ideal.unit(I.ring)
    return intersect_all([colon(I, g, budget) for g in J.gens], budget)


def _saturate_variable(I: Ideal, i: int, budget: Budget | None) -> Ideal:
    # grevlex with x_i least significant: dividing the basis by powers of x_i
    # gives a basis of I : x_i^infinity (homogeneous I only)
    n = I.ring.ngens
    perm = tuple(j for j in range(n) if j != i) + (i,)
    gb = I.groebner(GRevLex(n, perm), budget)
    gens = []
    for g in gb:
        a = min(e[i] for e in g.raw)
        if a:
            g = Polynomial._clean(
                I.ring,
                {e[:i] + (e[i] - a,) + e[i + 1 :]: c for e, c in g.raw.items()},
            )
        gens.append(g)
    return Ideal(I.ring, gens)


def saturate(I: Ideal, budget: Budget | None = None) -> Ideal:
    """I : m^infinity for the irrelevant maximal ideal m."""
    if I.is_zero() or I.is_unit():
        return I
    if I.is_homogeneous():
        return intersect_all([_saturate_variable(I, i, budget) for i in range(I.ring.ngens)], budget)
    m = maximal_ideal(I.ring)
    cur = I
    while True:
        nxt = colon_ideal(cur, m, budget)
        if nxt.is_subset(cur):
            return cur
        cur = nxt
