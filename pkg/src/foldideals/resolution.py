"""Schreyer resolutions, their minimalization, and graded Betti tables.

Module elements are dicts ``{(component, exponent): coefficient}``.  The
Schreyer order on level ``L`` compares ``x^a e_i`` through the ring-level
monomial ``x^a * T_i`` (``T_i`` = product of the leading monomials down the
chain) and breaks ties by the chain of basis indices, smaller index first.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactalg import Polynomial, Ring, row_reduce
from .groebner import (
    Budget,
    BudgetExceeded,
    DEFAULT_BUDGET,
    GRevLex,
    Ideal,
    _divides,
    _lcm,
    _plain_grevlex,
    count_monomials,
    hilbert_function,
)

__all__ = [
    "BettiTable",
    "FreeResolution",
    "syzygies",
    "schreyer_frame",
    "minimal_free_resolution",
    "minimize",
    "betti_via_tor",
    "check_resolution",
]


@dataclass
class BettiTable:
    """Graded Betti numbers beta[i, j] of a minimal free resolution of R/I."""

    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {k: v for k, v in sorted(self.entries.items()) if v}

    def __getitem__(self, ij) -> int:
        return self.entries.get(tuple(ij), 0)

    def __eq__(self, other):
        if isinstance(other, BettiTable):
            return self.entries == other.entries
        if isinstance(other, dict):
            return self.entries == {k: v for k, v in other.items() if v}
        return NotImplemented

    def ranks(self) -> list[int]:
        if not self.entries:
            return []
        top = max(i for i, _ in self.entries)
        return [sum(v for (i, _), v in self.entries.items() if i == h) for h in range(top + 1)]

    def projective_dimension(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def regularity(self) -> int | None:
        """max(j - i) over nonzero entries; None for the zero module."""
        if not self.entries:
            return None
        return max(j - i for i, j in self.entries)

    def is_linear(self) -> bool:
        """True when beta[i, j] != 0 (i >= 1) forces j = d + i - 1 for one d."""
        shifts = {j - i for (i, j) in self.entries if i >= 1}
        return len(shifts) <= 1

    def hilbert_numerator(self) -> dict[int, int]:
        """Coefficients of sum (-1)^i beta[i, j] T^j."""
        out: dict[int, int] = {}
        for (i, j), v in self.entries.items():
            out[j] = out.get(j, 0) + (-1) ** i * v
        return {j: v for j, v in sorted(out.items()) if v}

    def as_dict(self) -> dict[str, int]:
        return {f"{i},{j}": v for (i, j), v in self.entries.items()}

    def __str__(self):
        if not self.entries:
            return "(zero module)"
        top = self.projective_dimension()
        rows = sorted({j - i for i, j in self.entries})
        width = max(len(str(v)) for v in self.entries.values()) + 1
        lines = ["      " + "".join(str(i).rjust(width) for i in range(top + 1))]
        for r in rows:
            cells = []
            for i in range(top + 1):
                v = self[(i, i + r)]
                cells.append((str(v) if v else "-").rjust(width))
            lines.append(f"{r:>4}: " + "".join(cells))
        return "\n".join(lines)


@dataclass
class FreeResolution:
    """Graded free resolution F_0 <- F_1 <- ... <- F_N of R/I.

    ``degrees[L]`` lists the twists of the basis of F_L (F_0 = R).
    ``maps[L-1]`` is d_L as a list of columns; column c maps basis element c
    of F_L to ``{row: Polynomial}`` in F_{L-1}.
    """

    ring: Ring
    degrees: list
    maps: list

    def length(self) -> int:
        return len(self.maps)

    def rank(self, L: int) -> int:
        return len(self.degrees[L]) if L < len(self.degrees) else 0

    def matrix(self, L: int) -> list[list[Polynomial]]:
        """d_L as a dense row-major matrix (rows = basis of F_{L-1})."""
        cols = self.maps[L - 1]
        nrows = self.rank(L - 1)
        zero = self.ring.zero()
        return [[col.get(r, zero) for col in cols] for r in range(nrows)]

    def betti(self) -> BettiTable:
        entries: dict = {}
        for L, degs in enumerate(self.degrees):
            for d in degs:
                entries[(L, d)] = entries.get((L, d), 0) + 1
        return BettiTable(entries)

    def composition_is_zero(self) -> bool:
        ring = self.ring
        for L in range(2, len(self.maps) + 1):
            prev = self.maps[L - 2]
            for col in self.maps[L - 1]:
                acc: dict = {}
                for r, entry in col.items():
                    for rr, e2 in prev[r].items():
                        acc[rr] = acc.get(rr, ring.zero()) + entry * e2
                if any(not v.is_zero() for v in acc.values()):
                    return False
        return True


# ---------------------------------------------------------------------------
# Schreyer machinery

class _Level:
    """Basis data of one free module in the frame."""

    __slots__ = ("total", "chain", "deg")

    def __init__(self, total, chain, deg):
        self.total = total  # ring monomial T_i per basis element
        self.chain = chain  # tie-break tuple per basis element
        self.deg = deg      # twist per basis element


def _module_key(level: _Level):
    total, chain = level.total, level.chain

    def key(t):
        c, e = t
        return _plain_grevlex(tuple([a + b for a, b in zip(e, total[c])])) + chain[c]

    return key


class _Vec:
    __slots__ = ("lead", "lc", "terms", "tail")

    def __init__(self, terms: dict, key):
        self.terms = terms
        self.lead = min(terms, key=key)
        self.lc = terms[self.lead]
        self.tail = [(t, v) for t, v in terms.items() if t != self.lead]


def _divide(vec: dict, basis: Sequence[_Vec], by_comp: dict, key) -> dict:
    """Division with quotients; the remainder must vanish (basis is a GB)."""
    f = dict(vec)
    quot: dict = {}
    heap = [(key(t), t) for t in f]
    heapq.heapify(heap)
    while heap:
        _, t = heapq.heappop(heap)
        c = f.pop(t, None)
        if c is None:
            continue
        comp, e = t
        red = None
        for idx in by_comp.get(comp, ()):
            if _divides(basis[idx].lead[1], e):
                red = idx
                break
        if red is None:
            raise ArithmeticError("S-vector did not reduce to zero; input is not a Gröbner basis")
        g = basis[red]
        m = tuple([a - b for a, b in zip(e, g.lead[1])])
        q = c / g.lc
        qt = (red, m)
        quot[qt] = quot.get(qt, 0) + q
        for (gc, ge), gv in g.tail:
            nt = (gc, tuple([a + b for a, b in zip(ge, m)]))
            old = f.get(nt)
            if old is None:
                f[nt] = -q * gv
                heapq.heappush(heap, (key(nt), nt))
            else:
                v = old - q * gv
                if v:
                    f[nt] = v
                else:
                    del f[nt]
    return {t: v for t, v in quot.items() if v}


def _schreyer_step(basis: list[_Vec], key, budget: Budget) -> list[dict]:
    """Schreyer syzygies (as vectors over ``basis`` indices), pruned to the
    pairs whose leading monomials are minimal for each first index."""
    by_comp: dict = {}
    for i, v in enumerate(basis):
        by_comp.setdefault(v.lead[0], []).append(i)
    out = []
    for comp, idxs in by_comp.items():
        for pos, a in enumerate(idxs):
            ea = basis[a].lead[1]
            cands = []
            for b in idxs[pos + 1 :]:
                l = _lcm(ea, basis[b].lead[1])
                cands.append((tuple([x - y for x, y in zip(l, ea)]), b, l))
            chosen = []
            for m, b, l in cands:
                if any(_divides(m2, m) for m2, _, _ in chosen):
                    continue
                chosen = [c for c in chosen if not _divides(m, c[0])]
                chosen.append((m, b, l))
            for m, b, l in chosen:
                if sum(l) > budget.max_degree:
                    raise BudgetExceeded(f"syzygy degree {sum(l)} exceeds budget {budget.max_degree}")
                va, vb = basis[a], basis[b]
                mb = tuple([x - y for x, y in zip(l, vb.lead[1])])
                ca, cb = 1 / va.lc, 1 / vb.lc
                s: dict = {}
                for (gc, ge), gv in va.tail:
                    s[(gc, tuple([x + y for x, y in zip(ge, m)]))] = ca * gv
                for (gc, ge), gv in vb.tail:
                    t = (gc, tuple([x + y for x, y in zip(ge, mb)]))
                    v = s.get(t, 0) - cb * gv
                    if v:
                        s[t] = v
                    else:
                        s.pop(t, None)
                syz = {(a, m): ca}
                t = (b, mb)
                syz[t] = syz.get(t, 0) - cb
                if s:
                    for qt, qv in _divide(s, basis, by_comp, key).items():
                        v = syz.get(qt, 0) - qv
                        if v:
                            syz[qt] = v
                        else:
                            syz.pop(qt, None)
                out.append(syz)
                if len(out) > budget.max_basis:
                    raise BudgetExceeded(f"syzygy module exceeded {budget.max_basis} generators")
    return out


def _lex_desc(e: tuple) -> tuple:
    return tuple(-a for a in e)


def schreyer_frame(I: Ideal, budget: Budget | None = None) -> FreeResolution:
    """Free (generally non-minimal) resolution of R/I by iterated Schreyer syzygies
    of the reduced grevlex Gröbner basis."""
    budget = budget or DEFAULT_BUDGET
    ring = I.ring
    n = ring.ngens
    zero_exp = (0,) * n
    if I.is_zero():
        return FreeResolution(ring, [[0]], [])
    gb = I.groebner(GRevLex(n), budget)
    if any(g.is_constant() for g in gb):
        return FreeResolution(ring, [[0], [0]], [[{0: ring.one()}]])
    if not all(g.is_homogeneous() for g in gb):
        raise ValueError("resolutions need a homogeneous ideal")

    level = _Level([zero_exp], [()], [0])
    vectors = [{(0, e): c for e, c in g.raw.items()} for g in gb]
    degrees = [[0]]
    maps = []
    while vectors:
        key = _module_key(level)
        basis = [_Vec(v, key) for v in vectors]
        # Schreyer/Eisenbud ordering: by lead component, then lex-descending
        # lead monomial, so each step drops one more variable from the leads
        basis.sort(key=lambda v: (v.lead[0], _lex_desc(v.lead[1])))
        total, chain, deg = [], [], []
        for i, v in enumerate(basis):
            c, e = v.lead
            total.append(tuple([a + b for a, b in zip(e, level.total[c])]))
            chain.append(level.chain[c] + (i,))
            deg.append(level.deg[c] + sum(e))
        degrees.append(deg)
        maps.append([_to_column(ring, v.terms) for v in basis])
        syz = _schreyer_step(basis, key, budget)
        level = _Level(total, chain, deg)
        vectors = syz
        if len(maps) > n + 1:
            raise ArithmeticError("Schreyer frame longer than the number of variables")
    return FreeResolution(ring, degrees, maps)


def _to_column(ring: Ring, terms: dict) -> dict:
    col: dict = {}
    for (c, e), v in terms.items():
        col.setdefault(c, {})[e] = v
    return {c: Polynomial._clean(ring, t) for c, t in sorted(col.items())}


def syzygies(G: Sequence[Polynomial], budget: Budget | None = None) -> list[list[Polynomial]]:
    """Schreyer generators of the syzygy module of a grevlex Gröbner basis ``G``.

    Each returned vector ``v`` (indexed like ``G``) satisfies sum v_i G_i = 0.
    """
    G = list(G)
    if not G:
        return []
    ring = G[0].ring
    n = ring.ngens
    level = _Level([(0,) * n], [()], [0])
    key = _module_key(level)
    basis = [_Vec({(0, e): c for e, c in g.raw.items()}, key) for g in G]
    out = []
    for syz in _schreyer_step(basis, key, budget or DEFAULT_BUDGET):
        comps: dict = {}
        for (i, e), v in syz.items():
            comps.setdefault(i, {})[e] = v
        out.append([Polynomial._clean(ring, comps.get(i, {})) for i in range(len(G))])
    return out


# ---------------------------------------------------------------------------
# minimalization

def _is_unit(p: dict) -> bool:
    return len(p) == 1 and not any(next(iter(p)))


def _padd(a: dict, b: dict, s: Fraction) -> dict:
    """a + s*b."""
    out = dict(a)
    for e, v in b.items():
        w = out.get(e, 0) + s * v
        if w:
            out[e] = w
        else:
            out.pop(e, None)
    return out


def minimize(res: FreeResolution) -> FreeResolution:
    """Cancel unit entries until every differential has entries in the
    irrelevant ideal; the result is a minimal free resolution."""
    ring = res.ring
    N = len(res.maps)
    if N == 0:
        return res
    # d[L]: {col: {row: rawpoly}} for L = 1..N; alive[L]: basis indices of F_L
    d = {L: {c: {r: dict(p.raw) for r, p in col.items()} for c, col in enumerate(res.maps[L - 1])}
         for L in range(1, N + 1)}
    alive = {L: set(range(len(res.degrees[L]))) for L in range(N + 1)}

    if N >= 1 and any(_is_unit(p) for col in d[1].values() for p in col.values()):
        # unit ideal: R/I = 0
        return FreeResolution(ring, [], [])

    for L in range(2, N + 1):
        while True:
            pivot = None
            for c in sorted(d[L]):
                for r, p in d[L][c].items():
                    if _is_unit(p):
                        pivot = (c, r)
                        break
                if pivot:
                    break
            if pivot is None:
                break
            c, r = pivot
            u = d[L][c][r][(0,) * ring.ngens]
            col_c = d[L][c]
            # clear row r in other columns of d_L; compensate in d_{L+1}
            for c2 in list(d[L]):
                if c2 == c or r not in d[L][c2]:
                    continue
                a = d[L][c2][r]
                # a is a polynomial; col_c2 -= (a/u) col_c
                factor = {e: v / u for e, v in a.items()}
                newcol = dict(d[L][c2])
                for rr, p in col_c.items():
                    prod = _pmul(factor, p)
                    merged = _padd(newcol.get(rr, {}), prod, Fraction(-1))
                    if merged:
                        newcol[rr] = merged
                    else:
                        newcol.pop(rr, None)
                d[L][c2] = newcol
                if L + 1 in d:
                    # row c of d_{L+1} += (a/u) * row c2
                    for cc, col in d[L + 1].items():
                        if c2 in col:
                            merged = _padd(col.get(c, {}), _pmul(factor, col[c2]), Fraction(1))
                            if merged:
                                col[c] = merged
                            else:
                                col.pop(c, None)
            # clear column c in other rows; compensate in d_{L-1}
            for r2 in [rr for rr in col_c if rr != r]:
                b = col_c[r2]
                factor = {e: v / u for e, v in b.items()}
                # row r2 of d_L -= (b/u) row r: only column c is nonzero in row r now
                del col_c[r2]
                if L - 1 >= 1:
                    # column r of d_{L-1} += (b/u) column r2
                    prev = d[L - 1]
                    target = dict(prev[r])
                    for rr, p in prev[r2].items():
                        merged = _padd(target.get(rr, {}), _pmul(factor, p), Fraction(1))
                        if merged:
                            target[rr] = merged
                        else:
                            target.pop(rr, None)
                    prev[r] = target
            # drop basis element c of F_L and r of F_{L-1}
            del d[L][c]
            alive[L].discard(c)
            alive[L - 1].discard(r)
            for col in d[L].values():
                if col.get(r):
                    raise ArithmeticError("row elimination left a nonzero entry")
                col.pop(r, None)
            if L - 1 >= 1:
                if any(d[L - 1][r].values()):
                    raise ArithmeticError("cancelled column of the previous map is nonzero")
                del d[L - 1][r]
            if L + 1 in d:
                for col in d[L + 1].values():
                    if col.get(c):
                        raise ArithmeticError("cancelled row of the next map is nonzero")
                    col.pop(c, None)

    # relabel
    relabel = {L: {old: new for new, old in enumerate(sorted(alive[L]))} for L in alive}
    degrees = [[res.degrees[L][i] for i in sorted(alive[L])] for L in range(N + 1)]
    maps = []
    for L in range(1, N + 1):
        cols = []
        for c in sorted(alive[L]):
            col = {relabel[L - 1][r]: Polynomial._clean(ring, p) for r, p in sorted(d[L][c].items()) if p}
            cols.append(col)
        maps.append(cols)
    while maps and not degrees[-1]:
        degrees.pop()
        maps.pop()
    return FreeResolution(ring, degrees, maps)


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple([x + y for x, y in zip(e1, e2)])
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def minimal_free_resolution(I: Ideal, budget: Budget | None = None) -> tuple[FreeResolution, BettiTable]:
    """Minimal graded free resolution of R/I and its Betti table."""
    res = minimize(schreyer_frame(I, budget))
    return res, res.betti()


def betti_via_tor(res: FreeResolution) -> BettiTable:
    """Betti numbers from any graded free resolution: dimensions of the homology
    of F (x) Q, i.e. rank F_L,j minus the ranks of the scalar parts of the maps."""
    if not res.degrees:
        return BettiTable({})
    ring = res.ring
    zero = (0,) * ring.ngens

    def scalar_rank(L: int, j: int) -> int:
        if L < 1 or L > len(res.maps):
            return 0
        cols = [c for c, dg in enumerate(res.degrees[L]) if dg == j]
        rows = [r for r, dg in enumerate(res.degrees[L - 1]) if dg == j]
        if not cols or not rows:
            return 0
        mat = [[res.maps[L - 1][c].get(r, ring.zero()).raw.get(zero, 0) for c in cols] for r in rows]
        return len(row_reduce(mat)[1])

    entries = {}
    for L, degs in enumerate(res.degrees):
        for j in set(degs):
            v = degs.count(j) - scalar_rank(L, j) - scalar_rank(L + 1, j)
            if v:
                entries[(L, j)] = v
    return BettiTable(entries)


def check_resolution(res: FreeResolution, I: Ideal, extra_degrees: int = 2) -> dict:
    """Certify a resolution of R/I: consecutive maps compose to zero, d_1
    generates I, and the graded Euler characteristic matches the Hilbert
    function of R/I through (max twist + extra_degrees)."""
    ring = res.ring
    k = ring.ngens
    report = {"composition_zero": res.composition_is_zero()}
    if res.maps:
        gens = [col.get(0, ring.zero()) for col in res.maps[0]]
        report["image_is_ideal"] = Ideal(ring, gens).equals(I)
    else:
        report["image_is_ideal"] = I.is_zero() or I.is_unit()
    top = max((d for degs in res.degrees for d in degs), default=0) + extra_degrees
    hf = hilbert_function(I, top)
    euler = []
    for dgr in range(top + 1):
        euler.append(
            sum((-1) ** L * count_monomials(k, dgr - tw) for L, degs in enumerate(res.degrees) for tw in degs)
        )
    report["euler_matches_hilbert"] = euler == hf
    report["checked_through_degree"] = top
    report["ok"] = all(v for key, v in report.items() if key != "checked_through_degree")
    return report
