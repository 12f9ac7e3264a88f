"""Exact rational arithmetic, sparse multivariate polynomials and linear forms.

Coefficients are :class:`fractions.Fraction` throughout; no floating point is
ever produced.  Polynomials are immutable mappings from exponent tuples to
nonzero rationals, tied to a :class:`Ring` that names the variables.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "QQ",
    "MINUS_INFINITY",
    "Ring",
    "Polynomial",
    "LinearForm",
    "RingMismatchError",
    "ParseError",
    "parse_linear_form",
    "render_linear_form",
    "parse_polynomial",
    "grevlex_key",
    "row_reduce",
    "matrix_rank",
    "nullspace",
]


def QQ(value) -> Fraction:
    """Coerce ``value`` (int, Fraction or ``"p/q"`` string) to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(value)


@functools.total_ordering
class _MinusInfinity:
    """Degree of the zero polynomial; compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf-degree")

    def __repr__(self):
        return "MINUS_INFINITY"


MINUS_INFINITY = _MinusInfinity()


class RingMismatchError(ValueError):
    pass


class ParseError(ValueError):
    """Syntax error while reading a form or polynomial; ``pos`` is 0-based."""

    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.message = message
        self.pos = pos
        self.text = text
        where = f" at column {pos + 1}" if pos is not None else ""
        super().__init__(f"{message}{where}")


def grevlex_key(exp: tuple) -> tuple:
    # smaller key <=> larger monomial
    return (-sum(exp),) + exp[::-1]


@dataclass(frozen=True)
class Ring:
    """Polynomial ring Q[names...] with the natural standard grading."""

    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    @classmethod
    def standard(cls, k: int, prefix: str = "x") -> "Ring":
        return cls(tuple(f"{prefix}{i}" for i in range(1, k + 1)))

    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.ngens: QQ(c)})

    def gen(self, i: int) -> "Polynomial":
        exp = [0] * self.ngens
        exp[i] = 1
        return Polynomial._clean(self, {tuple(exp): Fraction(1)})

    def var(self, name: str) -> "Polynomial":
        return self.gen(self.index(name))

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.ngens)]

    def monomial(self, exp: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exp): QQ(coeff)})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def extend(self, extra: Iterable[str], front: bool = False) -> "Ring":
        extra = tuple(extra)
        return Ring(extra + self.names if front else self.names + extra)

    def __str__(self):
        return "QQ[" + ", ".join(self.names) + "]"


class Polynomial:
    """Immutable sparse polynomial with rational coefficients.

    ``terms`` maps exponent tuples (length ``ring.ngens``) to nonzero
    Fractions.  Iteration order of :meth:`terms` is descending graded reverse
    lexicographic.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple, object] | None = None):
        clean = {}
        n = ring.ngens
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {ring}")
            c = QQ(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.ring = ring
        self._terms = clean
        self._hash = None

    @classmethod
    def _clean(cls, ring: Ring, terms: dict) -> "Polynomial":
        # trusted constructor: terms already hold nonzero Fractions
        p = object.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # -- inspection -------------------------------------------------------
    @property
    def raw(self) -> dict:
        """The underlying exponent -> coefficient dict (do not mutate)."""
        return self._terms

    def terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]))

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_coefficient(self) -> Fraction:
        return self._terms.get((0,) * self.ring.ngens, Fraction(0))

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def degree(self, weights: Sequence[int] | None = None):
        if not self._terms:
            return MINUS_INFINITY
        if weights is None:
            return max(sum(e) for e in self._terms)
        return max(sum(w * a for w, a in zip(weights, e)) for e in self._terms)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        if weights is None:
            degs = {sum(e) for e in self._terms}
        else:
            degs = {sum(w * a for w, a in zip(weights, e)) for e in self._terms}
        return len(degs) <= 1

    def variables(self) -> set[int]:
        used = set()
        for e in self._terms:
            used.update(i for i, a in enumerate(e) if a)
        return used

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._clean(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._clean(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c0 = QQ(other)
            if not c0:
                return self.ring.zero()
            return Polynomial._clean(self.ring, {e: c * c0 for e, c in self._terms.items()})
        other = self._check(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._clean(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / QQ(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def monic(self, key=grevlex_key) -> "Polynomial":
        if not self._terms:
            return self
        lead = min(self._terms, key=key)
        return self * (1 / self._terms[lead])

    def subs(self, images: Mapping[int, "Polynomial"], target: Ring | None = None) -> "Polynomial":
        """Substitute variable ``i`` by ``images[i]``; unlisted variables map to themselves.

        When ``target`` differs from ``self.ring`` every variable must be listed.
        """
        target = target or self.ring
        if target != self.ring:
            missing = [i for i in range(self.ring.ngens) if i not in images]
            if missing:
                raise ValueError(f"no image for variables {missing}")
        powers: dict = {}

        def power(i, a):
            key = (i, a)
            if key not in powers:
                base = images[i] if i in images else target.gen(i)
                powers[key] = base ** a
            return powers[key]

        total = target.zero()
        for e, c in self._terms.items():
            term = target.constant(c)
            for i, a in enumerate(e):
                if a:
                    term = term * power(i, a)
            total = total + term
        return total

    def change_ring(self, target: Ring, positions: Sequence[int]) -> "Polynomial":
        """Re-embed into ``target``, variable ``i`` going to ``positions[i]``."""
        n = target.ngens
        out = {}
        for e, c in self._terms.items():
            ne = [0] * n
            for i, a in enumerate(e):
                if a:
                    ne[positions[i]] = a
            out[tuple(ne)] = c
        return Polynomial._clean(target, out)

    # -- display ----------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self.terms():
            mono = "*".join(
                name if a == 1 else f"{name}^{a}"
                for name, a in zip(self.ring.names, exp)
                if a
            )
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


@dataclass(frozen=True)
class LinearForm:
    """Coefficient vector of a linear form sum(c_i * x_i)."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(QQ(c) for c in self.coeffs))

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_polynomial(self, ring: Ring) -> Polynomial:
        if ring.ngens != self.k:
            raise RingMismatchError(f"form has {self.k} coefficients, ring has {ring.ngens} variables")
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                e = [0] * self.k
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial._clean(ring, terms)

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "LinearForm":
        coeffs = [Fraction(0)] * p.ring.ngens
        for e, c in p.raw.items():
            if sum(e) != 1:
                raise ValueError(f"{p} is not a linear form")
            coeffs[e.index(1)] = c
        return cls(tuple(coeffs))

    def scaled(self, c) -> "LinearForm":
        c = QQ(c)
        return LinearForm(tuple(a * c for a in self.coeffs))

    def normalized(self) -> "LinearForm":
        """Scale so the first nonzero coefficient is 1."""
        for a in self.coeffs:
            if a:
                return self.scaled(1 / a)
        return self

    def __str__(self):
        return render_linear_form(self, Ring.standard(self.k))


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    return tokens


def _rational(tok: str, pos: int, text: str) -> Fraction:
    if "/" in tok:
        num, den = tok.split("/")
        if int(den) == 0:
            raise ParseError("zero denominator", pos, text)
    return Fraction(tok)


def parse_linear_form(text: str, ring: Ring) -> LinearForm:
    """Read a linear form, either as a coefficient vector ``"1 1 0"`` or as an
    expression ``"x1 + 2/3*x2 - x3"`` in the variables of ``ring``."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty linear form", 0, text)
    k = ring.ngens
    if all(kind == "num" or val in "+-" for kind, val, _ in tokens):
        coeffs = _read_vector(tokens, text)
        if len(coeffs) != k:
            raise ParseError(f"expected {k} coefficients, got {len(coeffs)}", 0, text)
        form = LinearForm(tuple(coeffs))
    else:
        coeffs = [Fraction(0)] * k
        i = 0
        sign = 1
        expect_term = True
        while i < len(tokens):
            kind, val, pos = tokens[i]
            if expect_term:
                if kind == "op" and val in "+-":
                    if val == "-":
                        sign = -sign
                    i += 1
                    continue
                coef = Fraction(1)
                if kind == "num":
                    coef = _rational(val, pos, text)
                    i += 1
                    if i < len(tokens) and tokens[i][1] == "*":
                        i += 1
                    if i >= len(tokens) or tokens[i][0] != "name":
                        raise ParseError("constant term in a linear form", pos, text)
                    kind, val, pos = tokens[i]
                if kind != "name":
                    raise ParseError(f"unexpected {val!r}", pos, text)
                if val not in ring.names:
                    raise ParseError(f"unknown variable {val!r}", pos, text)
                i += 1
                if i < len(tokens) and tokens[i][1] in ("*", "^", "("):
                    raise ParseError("nonlinear term", tokens[i][2], text)
                coeffs[ring.index(val)] += sign * coef
                sign = 1
                expect_term = False
            else:
                if kind == "op" and val in "+-":
                    expect_term = True
                    continue
                if kind == "name" or kind == "num":
                    raise ParseError("missing operator", pos, text)
                raise ParseError(f"unexpected {val!r}", pos, text)
        if expect_term:
            raise ParseError("dangling operator", tokens[-1][2], text)
        form = LinearForm(tuple(coeffs))
    if form.is_zero():
        raise ParseError("zero form", 0, text)
    return form


def _read_vector(tokens, text) -> list[Fraction]:
    out = []
    sign = 1
    for kind, val, pos in tokens:
        if kind == "op":
            sign = -1 if val == "-" else 1
            continue
        out.append(sign * _rational(val, pos, text))
        sign = 1
    return out


def render_linear_form(form: LinearForm, ring: Ring) -> str:
    return str(form.to_polynomial(ring))


class _PolyParser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial", 0, self.text)
        p = self.expr()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()[1]!r}", self.peek()[2], self.text)
        return p

    def expr(self) -> Polynomial:
        sign = 1
        while self.peek() and self.peek()[1] in "+-" and self.peek()[0] == "op":
            if self.take()[1] == "-":
                sign = -sign
        total = self.term() * sign
        while self.peek() and self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek() and self.peek()[1] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        tok = self.take()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text), self.text)
        kind, val, pos = tok
        if kind == "num":
            base = self.ring.constant(_rational(val, pos, self.text))
        elif kind == "name":
            if val not in self.ring.names:
                raise ParseError(f"unknown variable {val!r}", pos, self.text)
            base = self.ring.var(val)
        elif val == "(":
            base = self.expr()
            close = self.take()
            if close is None or close[1] != ")":
                raise ParseError("missing ')'", pos, self.text)
        elif val == "-":
            return -self.factor()
        else:
            raise ParseError(f"unexpected {val!r}", pos, self.text)
        if self.peek() and self.peek()[1] == "^":
            self.take()
            exp = self.take()
            if exp is None or exp[0] != "num" or "/" in exp[1]:
                raise ParseError("exponent must be a nonnegative integer", pos, self.text)
            base = base ** int(exp[1])
        return base


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``+ - * ^ ( )`` expressions with rational constants."""
    return _PolyParser(text, ring).parse()


# ---------------------------------------------------------------------------
# exact linear algebra over QQ

def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[QQ(a) for a in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def matrix_rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : rows . v = 0}."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    red, pivots = row_reduce(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis
