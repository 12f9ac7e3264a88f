"""Arrangements of linear forms: supports, rank, rank-2 flats, 3-circuits,
the pair-count invariant p(A), and minimum distance of the dual code."""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Sequence

from .exactalg import (
    LinearForm,
    ParseError,
    Polynomial,
    Ring,
    matrix_rank,
    nullspace,
    parse_linear_form,
    row_reduce,
)

__all__ = [
    "Arrangement",
    "Flat2",
    "Circuit3",
    "NotReducedError",
    "NotEssentialError",
    "ArrangementFileError",
    "reduced_support",
    "rank",
    "rank2_flats",
    "circuits3",
    "p_of_arrangement",
    "min_distance",
    "is_generic3",
    "essentialize",
    "parse_arrangement",
    "load_arrangement",
    "random_arrangement",
]


class NotReducedError(ValueError):
    """Raised when an operation needs pairwise nonproportional forms."""


class NotEssentialError(ValueError):
    """Raised when the forms do not span the space of linear forms."""


class ArrangementFileError(ParseError):
    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" + (f", column {column}" if column is not None else "")
        ValueError.__init__(self, f"{where}: {message}")
        self.message = message
        self.pos = None if column is None else column - 1
        self.text = None


@dataclass(frozen=True)
class Arrangement:
    """Ordered multiset of nonzero linear forms in ``ring``."""

    ring: Ring
    forms: tuple

    def __post_init__(self):
        forms = tuple(f if isinstance(f, LinearForm) else LinearForm(tuple(f)) for f in self.forms)
        for f in forms:
            if f.k != self.ring.ngens:
                raise ValueError(f"form {f.coeffs} does not live in {self.ring}")
            if f.is_zero():
                raise ValueError("arrangements cannot contain the zero form")
        object.__setattr__(self, "forms", forms)

    @classmethod
    def from_strings(cls, texts: Sequence[str], ring: Ring | int | None = None) -> "Arrangement":
        """Build from linear-form strings; ``ring`` may be a Ring, a variable
        count, or None to infer ``x1..xk`` from the texts."""
        if isinstance(ring, int):
            ring = Ring.standard(ring)
        if ring is None:
            ring = _infer_ring(texts)
        return cls(ring, tuple(parse_linear_form(t, ring) for t in texts))

    @property
    def n(self) -> int:
        return len(self.forms)

    @property
    def k(self) -> int:
        return self.ring.ngens

    def polynomials(self) -> list[Polynomial]:
        return [f.to_polynomial(self.ring) for f in self.forms]

    def polynomial(self, i: int) -> Polynomial:
        return self.forms[i].to_polynomial(self.ring)

    def without(self, i: int) -> "Arrangement":
        return Arrangement(self.ring, self.forms[:i] + self.forms[i + 1 :])

    def rows(self) -> list[list[Fraction]]:
        return [list(f.coeffs) for f in self.forms]

    def is_reduced(self) -> bool:
        return all(not _proportional(a, b) for a, b in itertools.combinations(self.forms, 2))

    def index_of(self, form: LinearForm) -> int:
        """Position of the first member proportional to ``form``."""
        for i, f in enumerate(self.forms):
            if _proportional(f, form):
                return i
        raise ValueError(f"{form} is not a member of the arrangement")

    def to_text(self) -> str:
        lines = ["vars: " + " ".join(self.ring.names)]
        lines += ["form: " + str(f.to_polynomial(self.ring)) for f in self.forms]
        return "\n".join(lines) + "\n"

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.polynomials()) + ")"


@dataclass(frozen=True)
class Flat2:
    """Maximal set of forms (0-based indices) spanning a 2-dimensional space."""

    members: tuple
    witness: tuple

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class Circuit3:
    """Dependent triple with c_1*l_i1 + c_2*l_i2 + c_3*l_i3 = 0 and c_1 = 1."""

    indices: tuple
    coeffs: tuple


def _proportional(a: LinearForm, b: LinearForm) -> bool:
    return matrix_rank([a.coeffs, b.coeffs]) < 2


def _require_reduced(A: Arrangement):
    if not A.is_reduced():
        raise NotReducedError("arrangement has proportional forms; take reduced_support first")


def _infer_ring(texts: Sequence[str]) -> Ring:
    names = set()
    width = None
    for t in texts:
        found = re.findall(r"[A-Za-z_][A-Za-z_0-9]*", t)
        if found:
            names.update(found)
        else:
            w = len(t.replace("+", " ").split())
            width = w if width is None else max(width, w)
    if names:
        idx = []
        for nm in names:
            m = re.fullmatch(r"x(\d+)", nm)
            if not m or int(m.group(1)) == 0:
                raise ValueError(f"cannot infer the ring from variable {nm!r}; declare the variables")
            idx.append(int(m.group(1)))
        k = max(idx)
        if width is not None and width != k:
            raise ValueError("coefficient vectors and expressions disagree on the number of variables")
        return Ring.standard(k)
    if width is None:
        raise ValueError("cannot infer the ring of an empty arrangement")
    return Ring.standard(width)


def reduced_support(S: Arrangement) -> tuple[Arrangement, tuple]:
    """Distinct forms up to scaling (first occurrence kept) and their multiplicities."""
    reps: list[LinearForm] = []
    mult: list[int] = []
    for f in S.forms:
        for i, g in enumerate(reps):
            if _proportional(f, g):
                mult[i] += 1
                break
        else:
            reps.append(f)
            mult.append(1)
    return Arrangement(S.ring, tuple(reps)), tuple(mult)


def rank(A: Arrangement) -> int:
    return matrix_rank(A.rows()) if A.n else 0


def rank2_flats(A: Arrangement) -> list[Flat2]:
    _require_reduced(A)
    seen: set = set()
    out = []
    for i, j in itertools.combinations(range(A.n), 2):
        if (i, j) in seen:
            continue
        a, b = A.forms[i].coeffs, A.forms[j].coeffs
        members = [l for l in range(A.n) if l in (i, j) or matrix_rank([a, b, A.forms[l].coeffs]) == 2]
        for pair in itertools.combinations(members, 2):
            seen.add(pair)
        out.append(Flat2(tuple(members), (A.forms[i], A.forms[j])))
    out.sort(key=lambda fl: fl.members)
    return out


def circuits3(A: Arrangement) -> list[Circuit3]:
    _require_reduced(A)
    out = []
    for fl in rank2_flats(A):
        if len(fl) < 3:
            continue
        for tri in itertools.combinations(fl.members, 3):
            cols = [A.forms[i].coeffs for i in tri]
            rows = [[cols[c][r] for c in range(3)] for r in range(A.k)]
            (v,) = nullspace(rows, 3)
            v = [x / v[0] for x in v]
            out.append(Circuit3(tri, tuple(v)))
    out.sort(key=lambda c: c.indices)
    return out


def p_of_arrangement(A: Arrangement) -> int:
    return sum(comb(len(fl) - 1, 2) for fl in rank2_flats(A))


def is_generic3(A: Arrangement) -> bool:
    return not circuits3(A)


def min_distance(S: Arrangement) -> int:
    """Minimum distance of the length-n code whose generator columns are the forms.

    Equals n minus the largest number of forms lying in a common hyperplane of
    the dual space; those hyperplanes are spanned by k-1 independent forms.
    """
    k = S.k
    if S.n == 0:
        raise ValueError("min_distance needs at least one form")
    if rank(S) < k:
        raise NotEssentialError(f"forms span rank {rank(S)} < {k}; essentialize first")
    if k == 1:
        return S.n
    best = 0
    rows = S.rows()
    for sub in itertools.combinations(range(S.n), k - 1):
        if matrix_rank([rows[i] for i in sub]) < k - 1:
            continue
        (normal,) = nullspace([rows[i] for i in sub], k)
        on = sum(1 for r in rows if sum(a * b for a, b in zip(r, normal)) == 0)
        best = max(best, on)
        if best == S.n - 1:
            break
    return S.n - best


def essentialize(S: Arrangement, prefix: str = "z") -> tuple[Arrangement, list[list[Fraction]]]:
    """Rewrite the forms in coordinates of a basis of their span.

    Returns the new arrangement in ``rank(S)`` variables and the basis matrix
    whose row j is the original form that the new variable j stands for.
    """
    basis, pivots = row_reduce(S.rows())
    r = len(pivots)
    ring = Ring.standard(r, prefix)
    forms = tuple(LinearForm(tuple(f.coeffs[p] for p in pivots)) for f in S.forms)
    return Arrangement(ring, forms), basis


# ---------------------------------------------------------------------------
# file format

def parse_arrangement(text: str, source: str = "<text>") -> Arrangement:
    """Read the ``vars:``/``form:`` text format (``#`` starts a comment)."""
    names = None
    raw: list[tuple[int, int, str]] = []
    for ln, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        m = re.match(r"\s*(vars|form)\s*:", body)
        if not m:
            raise ArrangementFileError("expected 'vars:' or 'form:'", ln, len(body) - len(body.lstrip()) + 1)
        payload = body[m.end():]
        col = m.end() + 1
        if m.group(1) == "vars":
            if names is not None:
                raise ArrangementFileError("duplicate 'vars:' line", ln, 1)
            if raw:
                raise ArrangementFileError("'vars:' must precede the forms", ln, 1)
            names = tuple(payload.replace(",", " ").split())
            if not names:
                raise ArrangementFileError("empty variable list", ln, col)
            for nm in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                    raise ArrangementFileError(f"bad variable name {nm!r}", ln, col + payload.find(nm))
            if len(set(names)) != len(names):
                raise ArrangementFileError("duplicate variable names", ln, col)
        else:
            raw.append((ln, col, payload))
    if not raw:
        raise ArrangementFileError("no 'form:' lines", max(1, len(text.splitlines())))
    try:
        ring = Ring(names) if names is not None else _infer_ring([p for _, _, p in raw])
    except ValueError as exc:
        raise ArrangementFileError(str(exc), raw[0][0]) from None
    forms = []
    for ln, col, payload in raw:
        try:
            forms.append(parse_linear_form(payload, ring))
        except ParseError as exc:
            c = None if exc.pos is None else col + exc.pos
            raise ArrangementFileError(exc.message, ln, c) from None
    return Arrangement(ring, tuple(forms))


def load_arrangement(path: str | Path) -> Arrangement:
    p = Path(path)
    return parse_arrangement(p.read_text(encoding="utf-8"), str(p))


def random_arrangement(n: int, k: int, seed: int, lo: int = -3, hi: int = 3,
                       reduced: bool = True, essential: bool = True,
                       max_tries: int = 1000) -> Arrangement:
    """Seeded random arrangement with integer coefficients in [lo, hi]."""
    rng = random.Random(seed)
    ring = Ring.standard(k)
    for _ in range(max_tries):
        forms: list[LinearForm] = []
        while len(forms) < n:
            v = tuple(rng.randint(lo, hi) for _ in range(k))
            if not any(v):
                continue
            f = LinearForm(v)
            if reduced and any(_proportional(f, g) for g in forms):
                continue
            forms.append(f)
        A = Arrangement(ring, tuple(forms))
        if not essential or rank(A) == k:
            return A
    raise ValueError(f"no essential arrangement with n={n}, k={k} found in {max_tries} tries")
