"""Second-order Orlik-Terao algebra: its presentation ideal I(2,A) in the
t-variables, the classical ideal I(A) in the y-variables, the symmetric ideal
of I_{n-2}(A), and Sylvester forms.

Variable names are 1-based: ``t1_2, t1_3, ...`` and ``y1, ..., yn``.
Python-level indices are 0-based.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Sequence

from .arrangement import (
    Arrangement,
    Circuit3,
    NotEssentialError,
    NotReducedError,
    circuits3,
    p_of_arrangement,
    rank,
)
from .exactalg import LinearForm, Polynomial, Ring, row_reduce
from .groebner import (
    Budget,
    Ideal,
    colon_ideal,
    eliminate,
    krull_dimension,
    maximal_ideal,
    monomials_of_degree,
)

__all__ = [
    "FiberRing",
    "SymGenerators",
    "SylvesterResult",
    "standard_linear_gens",
    "standard_quadratic_gens",
    "standard_generators",
    "ot2_ideal",
    "ot_classical_ideal",
    "circuit_boundary",
    "embed_t_to_y",
    "pair_into_t",
    "pairing_generators",
    "sym_generator",
    "sym_ideal",
    "sylvester_form",
    "evaluate_t",
    "dimension_check",
    "properties_check",
]


@dataclass(frozen=True)
class FiberRing:
    """The rings T = Q[t_ij : i < j], S = Q[y_1..y_n] and R[t] for an
    arrangement on ``x_ring``."""

    n: int
    x_ring: Ring | None = None

    @cached_property
    def pairs(self) -> tuple:
        return tuple(itertools.combinations(range(self.n), 2))

    @cached_property
    def pair_index(self) -> dict:
        return {pr: i for i, pr in enumerate(self.pairs)}

    @cached_property
    def t_ring(self) -> Ring:
        return Ring(tuple(f"t{i + 1}_{j + 1}" for i, j in self.pairs))

    @cached_property
    def y_ring(self) -> Ring:
        return Ring.standard(self.n, "y")

    @cached_property
    def xt_ring(self) -> Ring:
        if self.x_ring is None:
            raise ValueError("no base ring attached")
        clash = set(self.x_ring.names) & set(self.t_ring.names)
        if clash:
            raise ValueError(f"variable names {sorted(clash)} clash with the t-variables")
        return self.x_ring.extend(self.t_ring.names)

    def index(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("t_ii does not exist")
        return self.pair_index[(min(i, j), max(i, j))]

    def t(self, i: int, j: int) -> Polynomial:
        return self.t_ring.gen(self.index(i, j))

    def xt_t(self, i: int, j: int) -> Polynomial:
        return self.xt_ring.gen(self.x_ring.ngens + self.index(i, j))

    def y(self, i: int) -> Polynomial:
        return self.y_ring.gen(i)

    def t_to_xt(self, F: Polynomial) -> Polynomial:
        k = self.x_ring.ngens
        return F.change_ring(self.xt_ring, [k + i for i in range(len(self.pairs))])

    def x_to_xt(self, p: Polynomial) -> Polynomial:
        return p.change_ring(self.xt_ring, range(self.x_ring.ngens))


def _fiber(A: Arrangement) -> FiberRing:
    return FiberRing(A.n, A.ring)


def _require_reduced(A: Arrangement):
    if not A.is_reduced():
        raise NotReducedError("arrangement has proportional forms; take reduced_support first")


def _f_pairs(A: Arrangement) -> dict:
    """f_ij = product of all forms except l_i, l_j."""
    polys = A.polynomials()
    out = {}
    for i, j in itertools.combinations(range(A.n), 2):
        g = A.ring.one()
        for u in range(A.n):
            if u != i and u != j:
                g = g * polys[u]
        out[(i, j)] = g
    return out


def evaluate_t(F: Polynomial, A: Arrangement, fr: FiberRing | None = None) -> Polynomial:
    """F(..., f_ij, ...) for F in T or in R[t]."""
    fr = fr or _fiber(A)
    fs = _f_pairs(A)
    if F.ring == fr.t_ring:
        images = {fr.index(*pr): fs[pr] for pr in fr.pairs}
        return F.subs(images, A.ring)
    if F.ring == fr.xt_ring:
        k = A.k
        images = {i: A.ring.gen(i) for i in range(k)}
        images.update({k + fr.index(*pr): fs[pr] for pr in fr.pairs})
        return F.subs(images, A.ring)
    raise ValueError("polynomial is not in T or R[t]")


# ---------------------------------------------------------------------------
# standard generators

def _linear_gen(c: Circuit3, fr: FiberRing) -> Polynomial:
    i1, i2, i3 = c.indices
    c1, c2, c3 = c.coeffs
    return fr.t(i2, i3) * c1 + fr.t(i1, i3) * c2 + fr.t(i1, i2) * c3


def standard_linear_gens(A: Arrangement, fr: FiberRing | None = None) -> list[Polynomial]:
    fr = fr or _fiber(A)
    return [_linear_gen(c, fr) for c in circuits3(A)]


def standard_quadratic_gens(n: int, fr: FiberRing | None = None) -> list[Polynomial]:
    """Q^1 and Q^2 for every u < v < w < z, interleaved."""
    fr = fr or FiberRing(n)
    out = []
    for u, v, w, z in itertools.combinations(range(n), 4):
        out.append(fr.t(u, v) * fr.t(w, z) - fr.t(u, w) * fr.t(v, z))
        out.append(fr.t(u, v) * fr.t(w, z) - fr.t(u, z) * fr.t(v, w))
    return out


def standard_generators(A: Arrangement, fr: FiberRing | None = None) -> list[Polynomial]:
    fr = fr or _fiber(A)
    return standard_linear_gens(A, fr) + standard_quadratic_gens(A.n, fr)


# ---------------------------------------------------------------------------
# presentation ideals by elimination

def ot2_ideal(A: Arrangement, budget: Budget | None = None) -> Ideal:
    """I(2,A): kernel of t_ij -> f_ij, computed by eliminating the x-variables."""
    _require_reduced(A)
    fr = _fiber(A)
    if A.n <= 2:
        # T has at most one variable and it maps to a nonzero constant times
        # a power of the grading variable: nothing in the kernel
        return Ideal.zero(fr.t_ring)
    big = fr.xt_ring
    fs = _f_pairs(A)
    gens = [fr.xt_t(*pr) - fr.x_to_xt(fs[pr]) for pr in fr.pairs]
    weights = (1,) * A.k + (A.n - 2,) * len(fr.pairs)
    return eliminate(Ideal(big, gens), range(A.k), weights, budget)


def ot_classical_ideal(A: Arrangement, budget: Budget | None = None) -> Ideal:
    """I(A): kernel of y_i -> f / l_i (the reciprocals 1/l_i, cleared of denominators)."""
    _require_reduced(A)
    fr = _fiber(A)
    if A.n <= 1:
        return Ideal.zero(fr.y_ring)
    big = A.ring.extend(fr.y_ring.names)
    polys = A.polynomials()
    k = A.k
    gens = []
    for i in range(A.n):
        g = A.ring.one()
        for u in range(A.n):
            if u != i:
                g = g * polys[u]
        gens.append(big.gen(k + i) - g.change_ring(big, range(k)))
    weights = (1,) * k + (A.n - 1,) * A.n
    return eliminate(Ideal(big, gens), range(k), weights, budget)


def circuit_boundary(indices: Sequence[int], coeffs: Sequence, fr: FiberRing) -> Polynomial:
    """sum_j c_j * prod_{l != j} y_{i_l}."""
    out = fr.y_ring.zero()
    for j, c in enumerate(coeffs):
        term = fr.y_ring.constant(c)
        for l, i in enumerate(indices):
            if l != j:
                term = term * fr.y(i)
        out = out + term
    return out


def embed_t_to_y(F: Polynomial, n: int | FiberRing) -> Polynomial:
    fr = n if isinstance(n, FiberRing) else FiberRing(n)
    images = {fr.index(i, j): fr.y(i) * fr.y(j) for i, j in fr.pairs}
    return F.subs(images, fr.y_ring)


def _pair_exponent(e: Sequence[int]) -> list[tuple[int, int]] | None:
    """Split y^e into products y_i y_j with i != j.

    Repeatedly take the variable with the largest remaining exponent (smallest
    index on ties) and pair it with the smallest-index other variable still
    present.  This succeeds exactly when no exponent exceeds half the degree.
    """
    e = list(e)
    total = sum(e)
    if total % 2 or any(2 * a > total for a in e):
        return None
    out = []
    while any(e):
        top = max(range(len(e)), key=lambda i: (e[i], -i))
        other = next(i for i in range(len(e)) if i != top and e[i])
        e[top] -= 1
        e[other] -= 1
        out.append((min(top, other), max(top, other)))
    return out


def pair_into_t(G: Polynomial, M: Polynomial | Sequence[int], fr: FiberRing) -> Polynomial | None:
    """A canonical preimage in T of M*G under t_ij -> y_i y_j, or None."""
    if not isinstance(M, Polynomial):
        M = fr.y_ring.monomial(tuple(M))
    P = M * G
    F = fr.t_ring.zero()
    for e, c in P.raw.items():
        pairing = _pair_exponent(e)
        if pairing is None:
            return None
        term = fr.t_ring.constant(c)
        for i, j in pairing:
            term = term * fr.t(i, j)
        F = F + term
    if embed_t_to_y(F, fr) != P:
        raise ArithmeticError("pairing does not reproduce M*G")
    return F


def pairing_generators(A: Arrangement, fr: FiberRing | None = None) -> list[Polynomial]:
    """Pairings of y_w^2 * G for each 3-circuit G and each w outside it."""
    fr = fr or _fiber(A)
    out = []
    for c in circuits3(A):
        G = circuit_boundary(c.indices, c.coeffs, fr)
        for w in range(A.n):
            if w in c.indices:
                continue
            F = pair_into_t(G, fr.y(w) ** 2, fr)
            if F is not None:
                out.append(F)
    return out


# ---------------------------------------------------------------------------
# symmetric ideal

def sym_generator(A: Arrangement, kind: str, a: int, b: int, c: int,
                  fr: FiberRing | None = None) -> Polynomial:
    """A_abc = l_a t_ab - l_c t_bc, B_abc = l_a t_ac - l_b t_bc,
    C_abc = l_b t_ab - l_c t_ac, as elements of R[t]."""
    fr = fr or _fiber(A)
    if not a < b < c:
        raise ValueError("need a < b < c")
    l = [fr.x_to_xt(p) for p in A.polynomials()]
    t = fr.xt_t
    if kind == "A":
        return l[a] * t(a, b) - l[c] * t(b, c)
    if kind == "B":
        return l[a] * t(a, c) - l[b] * t(b, c)
    if kind == "C":
        return l[b] * t(a, b) - l[c] * t(a, c)
    raise ValueError(f"unknown generator kind {kind!r}")


@dataclass
class SymGenerators:
    linear: list
    standard_syzygies: dict
    all_vanish: bool
    minimal_count: int
    expected_count: int
    strand_dims: dict = field(default_factory=dict)

    @property
    def generators(self) -> list[Polynomial]:
        return list(self.linear) + [g for v in self.standard_syzygies.values() for g in v]


def _span_dim(polys: Sequence[Polynomial]) -> int:
    cols: dict = {}
    rows = []
    for p in polys:
        rows.append({cols.setdefault(e, len(cols)): c for e, c in p.raw.items()})
    if not cols:
        return 0
    return len(row_reduce([[r.get(j, 0) for j in range(len(cols))] for r in rows])[1])


def _syzygy_dim(fs: Sequence[Polynomial], ring: Ring, d: int) -> int:
    """dim of {(h_i) in (R_d)^m : sum h_i f_i = 0}."""
    monos = monomials_of_degree(ring.ngens, d)
    images = [ring.monomial(e) * f for f in fs for e in monos]
    return len(images) - _span_dim(images)


def sym_ideal(A: Arrangement) -> SymGenerators:
    """Generators L (circuits) and A, B, C of sym(I_{n-2}(A)), with the size
    of a minimal generating set computed by bigraded linear algebra."""
    _require_reduced(A)
    n = A.n
    if n < 3:
        raise ValueError("need n >= 3")
    fr = _fiber(A)
    linear = [fr.t_to_xt(L) for L in standard_linear_gens(A, fr)]
    syz = {"A": [], "B": [], "C": []}
    for a, b, c in itertools.combinations(range(n), 3):
        for kind in "ABC":
            syz[kind].append(sym_generator(A, kind, a, b, c, fr))
    everything = linear + syz["A"] + syz["B"] + syz["C"]
    vanish = all(evaluate_t(g, A, fr).is_zero() for g in everything)

    xs = [fr.x_to_xt(x) for x in A.ring.gens()]
    x_times_l = [x * L for x in xs for L in linear]
    dim01 = _span_dim(linear)
    dim11_low = _span_dim(x_times_l)
    dim11 = _span_dim(x_times_l + syz["A"] + syz["B"] + syz["C"])
    minimal = dim01 + dim11 - dim11_low

    fs = list(_f_pairs(A).values())
    strands = {
        "(0,1)": dim01,
        "(1,1)": dim11,
        "kernel_(0,1)": _syzygy_dim(fs, A.ring, 0),
        "kernel_(1,1)": _syzygy_dim(fs, A.ring, 1),
    }
    return SymGenerators(linear, syz, vanish, minimal, n * (n - 2) - p_of_arrangement(A), strands)


# ---------------------------------------------------------------------------
# Sylvester forms

@dataclass
class SylvesterResult:
    content: list
    determinant: Polynomial
    monomial_factor: Polynomial
    cofactor: Polynomial
    in_ideal: bool | None = None
    cofactor_in_ideal: bool | None = None


def _det(mat: list[list[Polynomial]], ring: Ring) -> Polynomial:
    size = len(mat)
    out = ring.zero()
    for perm in itertools.permutations(range(size)):
        sign = 1
        for i in range(size):
            for j in range(i + 1, size):
                if perm[i] > perm[j]:
                    sign = -sign
        term = ring.constant(sign)
        for i, j in enumerate(perm):
            term = term * mat[i][j]
            if term.is_zero():
                break
        out = out + term
    return out


def _content_row(row: Polynomial, seq: list[list[Fraction]], fr: FiberRing) -> list[Polynomial]:
    """Coefficients h_i in T with row = sum h_i * seq_i."""
    k = fr.x_ring.ngens
    by_t: dict = {}
    for e, c in row.raw.items():
        xe, te = e[:k], e[k:]
        if sum(xe) != 1:
            raise ValueError("row is not linear in the x-variables")
        by_t.setdefault(te, [Fraction(0)] * k)[xe.index(1)] += c
    r = len(seq)
    out = [dict() for _ in range(r)]
    for te, vec in by_t.items():
        # solve sum a_i seq_i = vec
        aug = [[seq[i][col] for i in range(r)] + [vec[col]] for col in range(k)]
        red, piv = row_reduce(aug)
        if r in piv:
            raise ValueError("row is not expressible in the given forms")
        sol = [Fraction(0)] * r
        for rr, p in zip(red, piv):
            sol[p] = rr[r]
        for i, a in enumerate(sol):
            if a:
                out[i][te] = a
    return [Polynomial(fr.t_ring, h) for h in out]


def sylvester_form(rows: Sequence[Polynomial], seq: Sequence, A: Arrangement,
                   check_membership: bool = True, budget: Budget | None = None) -> SylvesterResult:
    """Determinant of the content matrix of ``rows`` (elements of R[t],
    linear in x) with respect to the independent linear forms ``seq``."""
    fr = _fiber(A)
    vecs = []
    for s in seq:
        if isinstance(s, int):
            s = A.forms[s]
        if isinstance(s, Polynomial):
            s = LinearForm.from_polynomial(s)
        vecs.append(list(s.coeffs))
    if len(row_reduce(vecs)[1]) != len(vecs):
        raise ValueError("the forms in seq are not linearly independent")
    if len(rows) != len(vecs):
        raise ValueError("need as many rows as forms")
    content = [_content_row(r, vecs, fr) for r in rows]
    det = _det(content, fr.t_ring)
    factor_exp = None
    for e in det.raw:
        factor_exp = e if factor_exp is None else tuple(min(a, b) for a, b in zip(factor_exp, e))
    if factor_exp is None:
        factor_exp = (0,) * len(fr.pairs)
    factor = fr.t_ring.monomial(factor_exp)
    cof = Polynomial(fr.t_ring, {tuple(a - b for a, b in zip(e, factor_exp)): c for e, c in det.raw.items()})
    res = SylvesterResult(content, det, factor, cof)
    if check_membership:
        I2 = ot2_ideal(A, budget)
        res.in_ideal = I2.contains(det, budget)
        res.cofactor_in_ideal = I2.contains(cof, budget)
    return res


# ---------------------------------------------------------------------------
# checks

def _jacobian_rank_at(fs: Sequence[Polynomial], point: Sequence[Fraction]) -> int:
    k = len(point)
    rows = []
    for f in fs:
        row = [Fraction(0)] * k
        for e, c in f.raw.items():
            for v in range(k):
                if not e[v]:
                    continue
                val = c * e[v]
                for u in range(k):
                    val *= point[u] ** (e[u] - (u == v))
                row[v] += val
        rows.append(row)
    return len(row_reduce(rows)[1])


def dimension_check(A: Arrangement, method: str = "groebner", budget: Budget | None = None,
                    tries: int = 20) -> dict:
    """Krull dimension of T / I(2,A) equals k for essential A with n >= 3.

    ``method="groebner"`` eliminates to get I(2,A) and reads the dimension off
    the leading-term ideal.  ``method="jacobian"`` uses that T / I(2,A) is the
    domain K[f_ij], whose dimension is the rank of the Jacobian of the f_ij:
    full rank at one rational point certifies dimension k, which is also an
    upper bound.
    """
    _require_reduced(A)
    r = rank(A)
    if r != A.k:
        raise NotEssentialError(f"rank {r} < {A.k}")
    if A.k < 2 or A.n < 3:
        raise ValueError("need k >= 2 and n >= 3")
    if method == "groebner":
        dim = krull_dimension(ot2_ideal(A, budget))
        return {"pass": dim == A.k, "krull_dimension": dim, "k": A.k, "method": method}
    if method != "jacobian":
        raise ValueError(f"unknown method {method!r}")
    fs = list(_f_pairs(A).values())
    rng = random.Random(A.n * 1009 + A.k)
    point = tuple(Fraction(v + 1) for v in range(A.k))
    best = 0
    for _ in range(tries):
        best = max(best, _jacobian_rank_at(fs, point))
        if best == A.k:
            break
        point = tuple(Fraction(rng.randint(-50, 50)) for _ in range(A.k))
    # a sampled rank below k is only a lower bound, so it certifies nothing
    return {"pass": best == A.k, "krull_dimension": best if best == A.k else None,
            "sampled_rank": best, "k": A.k, "method": method}


def properties_check(A: Arrangement, budget: Budget | None = None) -> dict:
    """J(A) : <y_1..y_n> == I(A), with J(A) the image of I(2,A) under t_ij -> y_i y_j,
    plus membership of the standard generators and of the circuit boundaries."""
    fr = _fiber(A)
    I2 = ot2_ideal(A, budget)
    IA = ot_classical_ideal(A, budget)
    J = Ideal(fr.y_ring, [embed_t_to_y(g, fr) for g in I2.groebner(budget=budget)])
    colon = colon_ideal(J, maximal_ideal(fr.y_ring), budget)
    std = standard_generators(A, fr)
    boundaries = [circuit_boundary(c.indices, c.coeffs, fr) for c in circuits3(A)]
    checks = {
        "colon_equals_classical": colon.equals(IA, budget),
        "image_inside_classical": J.is_subset(IA, budget),
        "standard_in_ot2": all(I2.contains(g, budget) for g in std),
        "boundaries_in_classical": all(IA.contains(g, budget) for g in boundaries),
    }
    return {"pass": all(checks.values()), "checks": checks}
