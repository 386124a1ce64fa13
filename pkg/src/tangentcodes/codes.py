"""Linear codes over subfields GF(p^m) of the ambient field.

A code is stored through its parity-check matrix in reduced row echelon
form, which makes row-space equality a literal comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import linalg as la
from .gf import Field, FieldError

ENUM_CAP = 1 << 20


class CodeError(ValueError):
    pass


class ZeroCodeError(CodeError):
    """The code has dimension 0."""


def weight(v: Sequence[int]) -> int:
    return sum(1 for x in v if x)


def _entries_degree(F: Field, rows: Iterable[Sequence[int]]) -> int:
    m = 1
    for r in rows:
        for x in r:
            d = F.degree_over(x, 1)
            m = m * d // np.gcd(m, d)
    return int(m)


class LinearCode:
    """Length-n code over GF(p^m) given by a parity-check matrix."""

    def __init__(self, field: Field, n: int, H: Sequence[Sequence[int]], m: int | None = None):
        H = [list(r) for r in H]
        if any(len(r) != n for r in H):
            raise CodeError("parity-check rows must have length n")
        if m is None:
            m = _entries_degree(field, H)
        field.check_subfield(m)
        for r in H:
            for x in r:
                if not field.in_subfield(x, m):
                    raise CodeError(f"entry {field.format(x)} not in GF({field.p}^{m})")
        self.field = field
        self.n = n
        self.m = m
        self.H = la.rref(field, H, n)[0] if H else []
        self.k = n - len(self.H)
        self._G = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_generator(cls, field: Field, G: Sequence[Sequence[int]], n: int, m: int | None = None) -> "LinearCode":
        G = [list(r) for r in G]
        if m is None:
            m = _entries_degree(field, G)
        Hd = la.nullspace(field, G, n) if G else [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(field, n, Hd, m)

    @classmethod
    def full(cls, field: Field, n: int, m: int = 1) -> "LinearCode":
        return cls(field, n, [], m)

    # -- basic data ------------------------------------------------------
    @property
    def q(self) -> int:
        return self.field.p ** self.m

    def generator_matrix(self) -> list[list[int]]:
        if self._G is None:
            self._G = la.nullspace(self.field, self.H, self.n)
        return [list(r) for r in self._G]

    def contains(self, v: Sequence[int]) -> bool:
        return all(x == 0 for x in la.matvec(self.field, self.H, v))

    def syndrome(self, v: Sequence[int]) -> list[int]:
        return la.matvec(self.field, self.H, v)

    def scalars(self) -> list[int]:
        return self.field.subfield_elements(self.m)

    def codewords(self, cap: int = ENUM_CAP) -> np.ndarray:
        """All codewords as a (q^k, n) integer array."""
        F = self.field
        total = self.q ** self.k
        if total > cap:
            raise CodeError(f"{total} codewords exceed the enumeration cap {cap}")
        words = np.zeros((1, self.n), dtype=np.int64)
        sc = self.scalars()
        for row in self.generator_matrix():
            r = np.array(row, dtype=np.int64)
            blocks = [F.vadd(words, np.broadcast_to(F.vscale(c, r), words.shape)) for c in sc]
            words = np.concatenate(blocks, axis=0)
        return words

    def words_of_weight(self, w: int) -> set[tuple[int, ...]]:
        W = self.codewords()
        sel = W[(W != 0).sum(axis=1) == w]
        return {tuple(int(x) for x in row) for row in sel}

    # -- minimum distance --------------------------------------------------
    def min_distance_by_columns(self) -> int:
        if self.k == 0:
            raise ZeroCodeError("minimum distance of the zero code")
        F = self.field
        for w in range(1, self.n - self.k + 2):
            for cols in itertools.combinations(range(self.n), w):
                if la.rank(F, la.submatrix_columns(self.H, cols)) < w:
                    return w
        raise CodeError("Singleton bound violated")  # unreachable

    def min_distance_by_enumeration(self) -> int:
        if self.k == 0:
            raise ZeroCodeError("minimum distance of the zero code")
        wts = (self.codewords() != 0).sum(axis=1)
        return int(wts[wts > 0].min())

    def min_distance(self, cross_check: bool = False) -> int:
        """Smallest number of linearly dependent parity-check columns."""
        if self.k == 0:
            raise ZeroCodeError("minimum distance of the zero code")
        small = self.q ** self.k <= ENUM_CAP
        if small and (cross_check or self.q ** self.k <= 1 << 12):
            d_enum = self.min_distance_by_enumeration()
            if not cross_check:
                return d_enum
            d_col = self.min_distance_by_columns()
            if d_col != d_enum:
                raise AssertionError(f"min distance mismatch: columns {d_col}, enumeration {d_enum}")
            return d_col
        return self.min_distance_by_columns()

    # -- operations ----------------------------------------------------------
    def dual(self) -> "LinearCode":
        return LinearCode(self.field, self.n, self.generator_matrix(), self.m)

    def puncture(self, gamma: Iterable[int]) -> "LinearCode":
        gamma = set(gamma)
        keep = [i for i in range(self.n) if i not in gamma]
        if not keep:
            raise CodeError("cannot puncture every coordinate")
        G = [[row[i] for i in keep] for row in self.generator_matrix()]
        return LinearCode.from_generator(self.field, G, len(keep), self.m)

    def shorten(self, gamma: Iterable[int]) -> "LinearCode":
        gamma = set(gamma)
        keep = [i for i in range(self.n) if i not in gamma]
        if not keep:
            raise CodeError("cannot shorten every coordinate")
        return LinearCode(self.field, len(keep), [[row[i] for i in keep] for row in self.H], self.m)

    def extend(self) -> "LinearCode":
        F = self.field
        G = []
        for row in self.generator_matrix():
            s = 0
            for x in row:
                s = F.add(s, x)
            G.append(row + [F.neg(s)])
        return LinearCode.from_generator(F, G, self.n + 1, self.m)

    def with_field(self, m: int) -> "LinearCode":
        """Scalar extension (or restriction, when the entries allow) to GF(p^m)."""
        return LinearCode(self.field, self.n, self.H, m)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self.m == other.m and self.H == other.H

    def __hash__(self) -> int:
        return hash((self.n, self.m, tuple(map(tuple, self.H))))

    def __repr__(self) -> str:
        return f"LinearCode(n={self.n}, k={self.k}, q={self.q})"


def direct_sum_code(C1: LinearCode, C2: LinearCode) -> LinearCode:
    F = C1.field
    n = C1.n + C2.n
    H = [r + [0] * C2.n for r in C1.H] + [[0] * C1.n + r for r in C2.H]
    m = int(np.lcm(C1.m, C2.m))
    return LinearCode(F, n, H, m)


def u_u_plus_v(C1: LinearCode, C2: LinearCode) -> LinearCode:
    if C1.n != C2.n:
        raise CodeError("(u|u+v) needs codes of equal length")
    G = [r + r for r in C1.generator_matrix()] + [[0] * C2.n + r for r in C2.generator_matrix()]
    return LinearCode.from_generator(C1.field, G, 2 * C1.n, int(np.lcm(C1.m, C2.m)))


def equal_up_to_extension(C1: LinearCode, C2: LinearCode) -> bool:
    """Row spaces coincide over GF(p^lcm(m1, m2))."""
    if C1.field != C2.field:
        raise CodeError("codes live in different ambient fields")
    return C1.n == C2.n and C1.H == C2.H


def left_shift(v: Sequence[int]) -> list[int]:
    return list(v[1:]) + [v[0]]


def is_cyclic(C: LinearCode) -> bool:
    return all(C.contains(left_shift(r)) for r in C.generator_matrix())


# --- near MDS --------------------------------------------------------------------

def is_near_mds(C: LinearCode) -> bool:
    """d(C) = n-k and d(C^perp) = k."""
    if not 1 <= C.k <= C.n - 1:
        raise CodeError("near-MDS test needs 1 <= k <= n-1")
    return C.min_distance() == C.n - C.k and C.dual().min_distance() == C.k


def near_mds_rank_criterion(C: LinearCode) -> bool:
    """d(C) = n-k and every (n-k+1)-column submatrix of H has rank n-k."""
    if not 1 <= C.k <= C.n - 1:
        raise CodeError("near-MDS test needs 1 <= k <= n-1")
    r = C.n - C.k
    if C.min_distance() != r:
        return False
    F = C.field
    return all(la.rank(F, la.submatrix_columns(C.H, cols)) == r
               for cols in itertools.combinations(range(C.n), r + 1))


# --- Hamming codes ---------------------------------------------------------------

def _exponent(F: Field, q: int) -> int:
    e, x = 0, 1
    while x < q:
        x *= F.p
        e += 1
    if x != q:
        raise FieldError(f"{q} is not a power of {F.p}")
    F.check_subfield(e)
    return e


def projective_points(F: Field, q: int, r: int) -> list[list[int]]:
    """Normalised representatives (first nonzero entry 1) of P^(r-1)(GF(q)), lex order."""
    elems = F.subfield_elements(_exponent(F, q))
    pts = []
    for v in itertools.product(elems, repeat=r):
        nz = next((x for x in v if x), None)
        if nz == 1:
            pts.append(list(v))
    return pts


def hamming_parity(F: Field, q: int, r: int) -> list[list[int]]:
    """Columns H_1..H_n of a Hamming parity matrix with H_1..H_r the unit
    vectors and H_{r+1} = H_{r-1} + H_r; remaining columns in lex order."""
    if r < 2:
        raise CodeError("Hamming construction needs r >= 2")
    pts = projective_points(F, q, r)
    units = [[1 if i == j else 0 for i in range(r)] for j in range(r)]
    extra = [0] * r
    extra[r - 2] = 1
    extra[r - 1] = 1
    front = units + [extra]
    rest = [v for v in pts if v not in front]
    cols = front + rest
    n = (q ** r - 1) // (q - 1)
    assert len(cols) == n
    H = la.transpose(cols)
    assert la.rank(F, la.submatrix_columns(H, range(r))) == r
    return H


def hamming_code(F: Field, q: int, r: int) -> LinearCode:
    return LinearCode(F, (q ** r - 1) // (q - 1), hamming_parity(F, q, r), _exponent(F, q))


# --- cyclic codes ----------------------------------------------------------------

@dataclass(frozen=True)
class CyclicSpec:
    p: int
    n: int
    g: tuple[int, ...]   # monic, coefficients low -> high
    sigma: int           # size of the splitting field

    @property
    def degree(self) -> int:
        return len(self.g) - 1


def _upoly_mul(F: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def splitting_degree(p: int, n: int) -> int:
    s = 1
    while (p ** s - 1) % n:
        s += 1
    return s


def divisors_of(F: Field, p: int, n: int) -> list[CyclicSpec]:
    """All 2^n monic divisors of t^n - 1 over its splitting field, by degree."""
    if np.gcd(p, n) != 1:
        raise CodeError("gcd(p, n) must be 1")
    if p != F.p:
        raise CodeError("characteristic mismatch")
    s = splitting_degree(p, n)
    if F.M % s:
        raise CodeError(f"splitting field GF({p}^{s}) is not inside the ambient field")
    roots = [x for x in range(1, F.order) if F.pow(x, n) == 1]
    assert len(roots) == n
    out = []
    for size in range(n + 1):
        for sub in itertools.combinations(roots, size):
            g = [1]
            for rho in sub:
                g = _upoly_mul(F, g, [F.neg(rho), 1])
            out.append(CyclicSpec(p, n, tuple(g), p ** s))
    return out


def divisor_counts(specs: Sequence[CyclicSpec]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for sp in specs:
        counts[sp.degree] = counts.get(sp.degree, 0) + 1
    return counts


def cyclic_code(F: Field, spec: CyclicSpec, s: int = 1) -> LinearCode:
    """The ideal <g> in GF(sigma^s)[t]/(t^n - 1) as a length-n code."""
    e = _exponent(F, spec.sigma)
    m = e * s
    F.check_subfield(m)
    n, dg = spec.n, spec.degree
    rows = []
    for i in range(n - dg):
        row = [0] * n
        for j, c in enumerate(spec.g):
            row[i + j] = c
        rows.append(row)
    if not rows:
        return LinearCode(F, n, la.identity(F, n), m)
    return LinearCode.from_generator(F, rows, n, m)


def random_code(F: Field, n: int, k: int, rng, m: int = 1) -> LinearCode:
    """A code with a random full-rank (n-k) x n parity matrix over GF(p^m)."""
    elems = F.subfield_elements(m)
    while True:
        H = [[elems[int(rng.integers(len(elems)))] for _ in range(n)] for _ in range(n - k)]
        if la.rank(F, H) == n - k:
            return LinearCode(F, n, H, m)


def comb_count(n: int, k: int) -> int:
    return comb(n, k)
