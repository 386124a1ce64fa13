"""Sparse multivariate polynomials over the ambient field, plus the text grammar.

A :class:`MultiPoly` maps exponent tuples of fixed length ``n`` to nonzero
coefficient codes.  Variables are 0-based in the Python API and written
``x1..xn`` in text.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .gf import Field, FieldError

MAX_DEGREE = 64
MAX_VARS = 24

Monomial = tuple[int, ...]


class PolyError(ValueError):
    pass


class PolyCapError(PolyError):
    """Degree or variable-count cap exceeded."""


class MultiPoly:
    __slots__ = ("field", "n", "terms", "_deg")

    def __init__(self, field: Field, n: int, terms: dict[Monomial, int] | None = None, check: bool = True):
        if n > MAX_VARS:
            raise PolyCapError(f"{n} variables exceeds the cap of {MAX_VARS}")
        self.field = field
        self.n = n
        if terms is None:
            terms = {}
        elif check:
            terms = {tuple(m): c for m, c in terms.items() if c}
            for m in terms:
                if len(m) != n or min(m, default=0) < 0:
                    raise PolyError(f"monomial {m} does not fit {n} variables")
        self.terms = terms
        self._deg = None
        if check and self.degree() > MAX_DEGREE:
            raise PolyCapError(f"total degree {self.degree()} exceeds the cap of {MAX_DEGREE}")

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, field: Field, n: int) -> "MultiPoly":
        return cls(field, n, {}, check=False)

    @classmethod
    def constant(cls, field: Field, n: int, c: int) -> "MultiPoly":
        return cls(field, n, {(0,) * n: c} if c else {}, check=False)

    @classmethod
    def variable(cls, field: Field, n: int, i: int) -> "MultiPoly":
        if not 0 <= i < n:
            raise PolyError(f"variable index {i} out of range for n={n}")
        m = [0] * n
        m[i] = 1
        return cls(field, n, {tuple(m): 1}, check=False)

    @classmethod
    def monomial(cls, field: Field, n: int, mono: Sequence[int], c: int = 1) -> "MultiPoly":
        return cls(field, n, {tuple(mono): c})

    @classmethod
    def linear(cls, field: Field, coeffs: Sequence[int]) -> "MultiPoly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                m = [0] * n
                m[i] = 1
                terms[tuple(m)] = c
        return cls(field, n, terms, check=False)

    # -- basic queries ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if self._deg is None:
            self._deg = max((sum(m) for m in self.terms), default=0)
        return self._deg

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.n, 0)

    def support(self) -> list[Monomial]:
        """Non-constant monomials, in canonical (descending lex) order."""
        return sorted((m for m in self.terms if any(m)), reverse=True)

    def variables(self) -> set[int]:
        out = set()
        for m in self.terms:
            out.update(i for i, e in enumerate(m) if e)
        return out

    def is_defined_over(self, e: int) -> bool:
        return all(self.field.in_subfield(c, e) for c in self.terms.values())

    # -- arithmetic ------------------------------------------------------
    def _same(self, o: "MultiPoly") -> None:
        if o.n != self.n or o.field != self.field:
            raise PolyError("polynomials live in different rings")

    def _lift(self, o) -> "MultiPoly":
        if isinstance(o, MultiPoly):
            self._same(o)
            return o
        if isinstance(o, int):
            return MultiPoly.constant(self.field, self.n, self.field.scalar(o))
        raise TypeError(f"cannot combine MultiPoly with {type(o).__name__}")

    def __add__(self, o) -> "MultiPoly":
        o = self._lift(o)
        add = self.field.add
        t = dict(self.terms)
        for m, c in o.terms.items():
            v = add(t.get(m, 0), c)
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return MultiPoly(self.field, self.n, t, check=False)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        neg = self.field.neg
        return MultiPoly(self.field, self.n, {m: neg(c) for m, c in self.terms.items()}, check=False)

    def __sub__(self, o) -> "MultiPoly":
        return self + (-self._lift(o))

    def __rsub__(self, o) -> "MultiPoly":
        return self._lift(o) - self

    def scale(self, c: int) -> "MultiPoly":
        if c == 0:
            return MultiPoly.zero(self.field, self.n)
        mul = self.field.mul
        return MultiPoly(self.field, self.n, {m: mul(c, v) for m, v in self.terms.items()}, check=False)

    def mul_term(self, mono: Monomial, c: int) -> "MultiPoly":
        if c == 0:
            return MultiPoly.zero(self.field, self.n)
        mul = self.field.mul
        t = {tuple(a + b for a, b in zip(m, mono)): mul(c, v) for m, v in self.terms.items()}
        out = MultiPoly(self.field, self.n, t, check=False)
        if self.terms and self.degree() + sum(mono) > MAX_DEGREE:
            raise PolyCapError("total degree cap exceeded")
        return out

    def __mul__(self, o) -> "MultiPoly":
        if isinstance(o, int):
            return self.scale(self.field.scalar(o))
        o = self._lift(o)
        if not self.terms or not o.terms:
            return MultiPoly.zero(self.field, self.n)
        if self.degree() + o.degree() > MAX_DEGREE:
            raise PolyCapError("total degree cap exceeded")
        add, mul = self.field.add, self.field.mul
        t: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = add(t.get(m, 0), mul(c1, c2))
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return MultiPoly(self.field, self.n, t, check=False)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise PolyError("negative power")
        result = MultiPoly.constant(self.field, self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, o) -> bool:
        if isinstance(o, int):
            o = self._lift(o)
        if not isinstance(o, MultiPoly):
            return NotImplemented
        return self.n == o.n and self.field == o.field and self.terms == o.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    # -- calculus and evaluation ------------------------------------------
    def evaluate(self, a: Sequence[int]) -> int:
        if len(a) != self.n:
            raise PolyError(f"point has {len(a)} coordinates, expected {self.n}")
        F = self.field
        log, exp, n1 = F._log, F._exp, F.order - 1
        la = [log[x] if x else -1 for x in a]
        s = 0
        add = F.add
        for m, c in self.terms.items():
            acc = log[c]
            for li, e in zip(la, m):
                if e:
                    if li < 0:
                        acc = -1
                        break
                    acc += li * e
            if acc >= 0:
                s = add(s, exp[acc % n1])
        return s

    def partial(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.n:
            raise PolyError(f"variable index {i} out of range for n={self.n}")
        F = self.field
        t = {}
        for m, c in self.terms.items():
            e = m[i]
            if e % F.p:
                nm = list(m)
                nm[i] -= 1
                t[tuple(nm)] = F.mul(c, e % F.p)
        return MultiPoly(F, self.n, t, check=False)

    def gradient(self) -> list["MultiPoly"]:
        return [self.partial(i) for i in range(self.n)]

    def frobenius_substitute(self, p: int | None = None) -> "MultiPoly":
        """f(x_1^p, ..., x_n^p)."""
        p = self.field.p if p is None else p
        if self.degree() * p > MAX_DEGREE:
            raise PolyCapError("total degree cap exceeded")
        t = {tuple(e * p for e in m): c for m, c in self.terms.items()}
        return MultiPoly(self.field, self.n, t, check=False)

    def embed(self, n_new: int, mapping: Sequence[int]) -> "MultiPoly":
        """Move variable i to position mapping[i] in an n_new-variable ring."""
        t = {}
        for m, c in self.terms.items():
            nm = [0] * n_new
            for i, e in enumerate(m):
                if e:
                    nm[mapping[i]] += e
            t[tuple(nm)] = c
        return MultiPoly(self.field, n_new, t, check=False)

    def drop_variables(self, idx: Iterable[int]) -> "MultiPoly":
        """Delete variables that do not occur in self, re-indexing the rest."""
        idx = set(idx)
        keep = [i for i in range(self.n) if i not in idx]
        t = {}
        for m, c in self.terms.items():
            if any(m[i] for i in idx):
                raise PolyError("cannot drop a variable that occurs")
            t[tuple(m[i] for i in keep)] = c
        return MultiPoly(self.field, len(keep), t, check=False)

    def set_zero(self, idx: Iterable[int]) -> "MultiPoly":
        """Substitute x_i = 0 for i in idx."""
        idx = list(idx)
        t = {m: c for m, c in self.terms.items() if not any(m[i] for i in idx)}
        return MultiPoly(self.field, self.n, t, check=False)

    def substitute(self, values: dict[int, "MultiPoly"]) -> "MultiPoly":
        """Replace variables x_i by polynomials (same ring)."""
        F, n = self.field, self.n
        out = MultiPoly.zero(F, n)
        cache: dict[tuple[int, int], MultiPoly] = {}
        for m, c in self.terms.items():
            keep = [0] * n
            term = MultiPoly.constant(F, n, c)
            for i, e in enumerate(m):
                if not e:
                    continue
                if i in values:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = values[i] ** e
                    term = term * cache[key]
                else:
                    keep[i] = e
            out = out + term.mul_term(tuple(keep), 1)
        return out

    # -- text --------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e:
                    factors.append(f"x{i + 1}^{e}")
            if c != 1 or not factors:
                factors.insert(0, F.format(c))
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r}, n={self.n})"


class PolyMatrix:
    """A rectangular array of polynomials in a common ring."""

    def __init__(self, rows: Sequence[Sequence[MultiPoly]]):
        self.rows = [list(r) for r in rows]
        ns = {p.n for r in self.rows for p in r}
        if len(ns) > 1:
            raise PolyError("mixed variable counts in a PolyMatrix")
        if len({len(r) for r in self.rows}) > 1:
            raise PolyError("ragged PolyMatrix")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def evaluate(self, a: Sequence[int]) -> list[list[int]]:
        return [[p.evaluate(a) for p in r] for r in self.rows]

    def to_text(self) -> list[list[str]]:
        return [[p.to_text() for p in r] for r in self.rows]


def gradient(f: MultiPoly) -> list[MultiPoly]:
    return f.gradient()


def partial_derivative(f: MultiPoly, i: int) -> MultiPoly:
    return f.partial(i)


def evaluate(f: MultiPoly, a: Sequence[int]) -> int:
    return f.evaluate(a)


def frobenius_substitute(f: MultiPoly, p: int | None = None) -> MultiPoly:
    return f.frobenius_substitute(p)


def jacobian(F: Sequence[MultiPoly]) -> PolyMatrix:
    return PolyMatrix([f.gradient() for f in F])


def jacobian_at(F: Sequence[MultiPoly], a: Sequence[int]) -> list[list[int]]:
    ns = {f.n for f in F}
    if len(ns) > 1:
        raise PolyError("generators have different variable counts")
    n = ns.pop() if ns else len(a)
    if len(a) != n:
        raise PolyError(f"point has {len(a)} coordinates, expected {n}")
    return [[f.partial(j).evaluate(a) for j in range(n)] for f in F]


def univariate(field: Field, n: int, i: int, coeffs: Sequence[int], power: int = 1) -> MultiPoly:
    """sum_k coeffs[k] * x_i^(k*power)."""
    t = {}
    for k, c in enumerate(coeffs):
        if c:
            m = [0] * n
            m[i] = k * power
            t[tuple(m)] = c
    return MultiPoly(field, n, t)


# --- parser -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)(\d+)|(g)|(\[[^\]]*\])|([+\-*^]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    toks, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        if m.group(1) is not None:
            toks.append(("int", m.group(1)))
        elif m.group(2) is not None:
            toks.append(("var", m.group(3)))
        elif m.group(4) is not None:
            toks.append(("g", "g"))
        elif m.group(5) is not None:
            toks.append(("vec", m.group(5)))
        else:
            toks.append((m.group(6), m.group(6)))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, field: Field, text: str, n: int | None):
        self.F = field
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n
        self.terms: list[tuple[int, dict[int, int]]] = []

    def peek(self) -> str | None:
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind: str) -> str:
        if self.peek() != kind:
            got = self.toks[self.i][1] if self.i < len(self.toks) else "end of input"
            raise PolyError(f"expected {kind!r}, got {got!r}")
        v = self.toks[self.i][1]
        self.i += 1
        return v

    def parse(self) -> MultiPoly:
        sign = 1
        if self.peek() == "-":
            self.take("-")
            sign = -1
        self.term(sign)
        while self.peek() in ("+", "-"):
            sign = 1 if self.take(self.peek()) == "+" else -1
            self.term(sign)
        if self.peek() is not None:
            raise PolyError(f"trailing input at token {self.toks[self.i][1]!r}")
        n = self.n
        maxvar = max((v for _, mono in self.terms for v in mono), default=-1) + 1
        if n is None:
            n = max(maxvar, 1)
        elif maxvar > n:
            raise PolyError(f"variable x{maxvar} exceeds n={n}")
        F = self.F
        out: dict[Monomial, int] = {}
        for c, mono in self.terms:
            m = [0] * n
            for v, e in mono.items():
                m[v] += e
            m = tuple(m)
            val = F.add(out.get(m, 0), c)
            if val:
                out[m] = val
            else:
                out.pop(m, None)
        return MultiPoly(F, n, out)

    def coeff(self) -> int:
        k = self.peek()
        if k == "int":
            v = int(self.take("int"))
            if v >= self.F.p:
                raise PolyError(f"integer coefficient {v} outside 0..{self.F.p - 1}")
            return v
        if k == "vec":
            try:
                return self.F.parse(self.take("vec"))
            except FieldError as e:
                raise PolyError(str(e)) from e
        self.take("g")
        if self.peek() == "^":
            self.take("^")
            neg = False
            if self.peek() == "-":
                self.take("-")
                neg = True
            e = int(self.take("int"))
            return self.F.pow(self.F.generator, -e if neg else e)
        return self.F.generator

    def factor(self, mono: dict[int, int]) -> None:
        idx = int(self.take("var"))
        if idx < 1:
            raise PolyError("variables are numbered from x1")
        e = 1
        if self.peek() == "^":
            self.take("^")
            e = int(self.take("int"))
        mono[idx - 1] = mono.get(idx - 1, 0) + e

    def term(self, sign: int) -> None:
        c = 1
        mono: dict[int, int] = {}
        if self.peek() in ("int", "vec", "g"):
            c = self.coeff()
        else:
            self.factor(mono)
        while self.peek() == "*":
            self.take("*")
            self.factor(mono)
        if sign < 0:
            c = self.F.neg(c)
        self.terms.append((c, mono))


def parse_poly(field: Field, text: str, n: int | None = None) -> MultiPoly:
    """Parse the polynomial text grammar (variables x1..xn)."""
    return _Parser(field, text, n).parse()


def poly_det(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant of a square polynomial matrix by cofactor expansion."""
    k = len(rows)
    if k == 0:
        raise PolyError("empty matrix")
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    out = None
    for j in range(k):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * poly_det(minor)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    if out is None:
        return MultiPoly.zero(rows[0][0].field, rows[0][0].n)
    return out


def poly_adjugate(rows: Sequence[Sequence[MultiPoly]]) -> list[list[MultiPoly]]:
    """Adjugate matrix, so that A * adj(A) = det(A) * I."""
    k = len(rows)
    f0 = rows[0][0]
    if k == 1:
        return [[MultiPoly.constant(f0.field, f0.n, 1)]]
    adj = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            minor = [r[:j] + r[j + 1:] for t, r in enumerate(rows) if t != i]
            c = poly_det(minor)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj
