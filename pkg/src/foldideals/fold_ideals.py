"""Ideals generated by a-fold products of the forms of an arrangement."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .arrangement import Arrangement, min_distance, rank, reduced_support
from .exactalg import LinearForm, Polynomial
from .groebner import Budget, Ideal, colon, maximal_ideal

__all__ = [
    "FoldIdeal",
    "fold_ideal",
    "fold_generators",
    "check_power_identity",
    "colon_step_check",
    "split_identity_check",
    "top_factorization_check",
]


@dataclass(frozen=True)
class FoldIdeal:
    """I_a(S) with its C(n, a) product generators in subset-lex order.

    ``subsets[i]`` is the (0-based) index set whose product is generator i.
    For a = 0 the ideal is the unit ideal, for a > n the zero ideal.
    """

    source: Arrangement
    a: int
    ideal: Ideal
    subsets: tuple

    @property
    def generators(self) -> list[Polynomial]:
        return list(self.ideal.gens)


def fold_generators(S: Arrangement, a: int) -> tuple[list[tuple], list[Polynomial]]:
    if a < 0:
        raise ValueError("a must be nonnegative")
    polys = S.polynomials()
    subsets, gens = [], []
    for sub in itertools.combinations(range(S.n), a):
        g = S.ring.one()
        for i in sub:
            g = g * polys[i]
        subsets.append(sub)
        gens.append(g)
    return subsets, gens


def fold_ideal(S: Arrangement, a: int) -> FoldIdeal:
    subsets, gens = fold_generators(S, a)
    # Ideal keeps repeated generators; deduplication would lose multiset information
    return FoldIdeal(S, a, Ideal(S.ring, gens), tuple(subsets))


def check_power_identity(S: Arrangement, budget: Budget | None = None) -> dict:
    """Check I_a(S) = m^a for 1 <= a <= d, d the minimum distance."""
    d = min_distance(S)
    m = maximal_ideal(S.ring)
    checked = []
    first_failure = None
    for a in range(1, d + 1):
        ok = fold_ideal(S, a).ideal.equals(m ** a, budget)
        checked.append({"a": a, "holds": ok})
        if not ok and first_failure is None:
            first_failure = a
    return {"min_distance": d, "checked": checked, "first_failure": first_failure,
            "pass": first_failure is None}


def _locate(S: Arrangement, ell) -> int:
    if isinstance(ell, int):
        if not 0 <= ell < S.n:
            raise ValueError(f"index {ell} out of range")
        return ell
    form = ell if isinstance(ell, LinearForm) else LinearForm.from_polynomial(ell)
    for i, f in enumerate(S.forms):
        if f == form:
            return i
    return S.index_of(form)


def colon_step_check(S: Arrangement, ell, a: int, budget: Budget | None = None) -> bool:
    """I_a(S) : l == I_{a-1}(S minus one copy of l)?

    ``ell`` is a member index, a LinearForm, or a degree-1 Polynomial.
    """
    i = _locate(S, ell)
    lhs = colon(fold_ideal(S, a).ideal, S.polynomial(i), budget)
    rhs = fold_ideal(S.without(i), a - 1).ideal if a >= 1 else Ideal.unit(S.ring)
    return lhs.equals(rhs, budget)


def split_identity_check(S: Arrangement, i: int, a: int, budget: Budget | None = None) -> bool:
    """I_a(S) == l_i * I_{a-1}(S') + I_a(S') with S' = S minus l_i."""
    rest = S.without(i)
    ell = S.polynomial(i)
    lower = fold_ideal(rest, a - 1).ideal if a >= 1 else Ideal.zero(S.ring)
    rhs = Ideal(S.ring, [ell * g for g in lower.gens]) + fold_ideal(rest, a).ideal
    return fold_ideal(S, a).ideal.equals(rhs, budget)


def top_factorization_check(S: Arrangement, budget: Budget | None = None) -> bool:
    """I_{n-1}(S) == (prod l_i^{n_i - 1}) * I_{s-1}(support)."""
    supp, mult = reduced_support(S)
    c = S.ring.one()
    for j, e in enumerate(mult):
        c = c * supp.polynomial(j) ** (e - 1)
    rhs = Ideal(S.ring, [c * g for g in fold_ideal(supp, supp.n - 1).ideal.gens])
    return fold_ideal(S, S.n - 1).ideal.equals(rhs, budget)


def is_essential(S: Arrangement) -> bool:
    return rank(S) == S.k
