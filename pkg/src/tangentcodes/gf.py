"""Exact arithmetic in a fixed ambient field GF(p^M).

Elements are encoded as integers ``c0 + c1*p + ... + c_{M-1}*p^(M-1)``
where ``(c0, ..., c_{M-1})`` is the coefficient vector of the residue
modulo the field modulus.  All hot paths (polynomials, matrices) work on
these integer codes; :class:`FieldElement` is a thin value wrapper for
interactive use.

Subfields are never materialised as separate objects: membership in
GF(p^s) is decided by the Frobenius test ``x^(p^s) == x``.
"""

from __future__ import annotations

import re
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 1 << 20
_ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    """Bad field parameters or an element that does not belong."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# --- univariate helpers over GF(p), coefficient lists low -> high ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p) (coefficients low -> high)."""
    f = _trim([c % p for c in coeffs])
    M = len(f) - 1
    if M < 1 or f[-1] != 1:
        return False
    if M == 1:
        return True
    t = [0, 1]
    if _psub(_ppowmod(t, p ** M, f, p), t, p):
        return False
    for r in prime_factors(M):
        h = _psub(_ppowmod(t, p ** (M // r), f, p), t, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, M: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree M.

    Candidates are compared coefficient by coefficient from t^(M-1) down to
    the constant term, which is the order of their integer codes.
    """
    for code in range(p ** M):
        lower = [(code // p ** i) % p for i in range(M)]
        cand = lower + [1]
        if M == 1 or (lower[0] != 0 and is_irreducible(cand, p)):
            return tuple(cand)
    raise FieldError("no irreducible polynomial found")  # unreachable


class Field:
    """The ambient field GF(p^M) with a fixed modulus."""

    def __init__(self, p: int, M: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if M < 1:
            raise FieldError("extension degree must be >= 1")
        if p ** M > MAX_ORDER:
            raise FieldError(f"GF({p}^{M}) exceeds the supported size {MAX_ORDER}")
        if modulus is None:
            modulus = smallest_irreducible(p, M)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != M + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree M")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.M = M
        self.modulus = modulus
        self.order = p ** M
        self._build_tables()

    # -- construction ----------------------------------------------------
    def _digits(self, v: int) -> list[int]:
        return [(v // self.p ** i) % self.p for i in range(self.M)]

    def _undigits(self, c: Sequence[int]) -> int:
        v = 0
        for x in reversed(list(c)):
            v = v * self.p + x
        return v

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _pmul(_trim(self._digits(a)), _trim(self._digits(b)), self.p)
        r = _pmod(prod, list(self.modulus), self.p)
        return self._undigits(r + [0] * (self.M - len(r)))

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _build_tables(self) -> None:
        N, p, M = self.order, self.p, self.M
        n1 = N - 1
        factors = prime_factors(n1) if n1 > 1 else []
        prim = None
        for cand in range(1, N):
            if all(self._slow_pow(cand, n1 // r) != 1 for r in factors):
                prim = cand
                break
        self.primitive = prim
        exp = [0] * (2 * n1)
        log = [0] * N
        x = 1
        for i in range(n1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, prim)
        for i in range(n1, 2 * n1):
            exp[i] = exp[i - n1]
        self._exp = exp
        self._log = log
        self._np_exp = np.array(exp + exp[:1], dtype=np.int64)
        self._np_log = np.array(log, dtype=np.int64)
        # residue of t for extensions; a primitive root for prime fields
        self.generator = p if M > 1 else prim
        if p == 2 or M == 1:
            self._add = None
        else:
            digs = np.array([self._digits(v) for v in range(N)], dtype=np.int64)
            weights = p ** np.arange(M, dtype=np.int64)
            if N <= _ADD_TABLE_LIMIT:
                s = (digs[:, None, :] + digs[None, :, :]) % p
                self._np_add = (s * weights).sum(axis=2)
                self._add = self._np_add.ravel().tolist()
            else:
                self._add = None
            self._np_digits = digs
            self._np_weights = weights
        neg = [0] * N
        for v in range(N):
            neg[v] = self._undigits([(-c) % p for c in self._digits(v)])
        self._neg = neg
        self._np_neg = np.array(neg, dtype=np.int64)

    # -- scalar arithmetic -----------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.M == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a * self.order + b]
        p = self.p
        r, w = 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return r

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in " + repr(self))
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def frobenius(self, a: int, s: int = 1) -> int:
        """a^(p^s)."""
        return self.pow(a, self.p ** s)

    def scalar(self, c: int) -> int:
        """Image of the integer c in the prime field."""
        return c % self.p

    # -- subfields -------------------------------------------------------
    def check_subfield(self, e: int) -> None:
        if e < 1 or self.M % e:
            raise FieldError(f"GF({self.p}^{e}) is not a subfield of GF({self.p}^{self.M})")

    def in_subfield(self, a: int, e: int) -> bool:
        return self.frobenius(a, e) == a

    def degree_over(self, a: int, e: int = 1) -> int:
        """Smallest s >= 1 with a^(q^s) = a for q = p^e."""
        self.check_subfield(e)
        x = a
        for s in range(1, self.M // e + 1):
            x = self.frobenius(x, e)
            if x == a:
                return s
        raise FieldError("element degree does not divide M")  # unreachable

    def subfield_elements(self, e: int) -> list[int]:
        """All elements of GF(p^e) inside the ambient field, ascending by code."""
        self.check_subfield(e)
        return [v for v in range(self.order) if self.in_subfield(v, e)]

    def elements(self) -> range:
        return range(self.order)

    # -- vectorised arithmetic ---------------------------------------------
    def vadd(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(A, B)
        if self.M == 1:
            return (A + B) % self.p
        if self._add is not None:
            return self._np_add[A, B]
        dA, dB = self._np_digits[A], self._np_digits[B]
        return (((dA + dB) % self.p) * self._np_weights).sum(axis=-1)

    def vneg(self, A: np.ndarray) -> np.ndarray:
        return self._np_neg[A]

    def vscale(self, c: int, A: np.ndarray) -> np.ndarray:
        if c == 0:
            return np.zeros_like(A)
        out = self._np_exp[(self._np_log[A] + self._log[c]) % (self.order - 1)]
        return np.where(A == 0, 0, out)

    def vmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        out = self._np_exp[(self._np_log[A] + self._np_log[B]) % (self.order - 1)]
        return np.where((A == 0) | (B == 0), 0, out)

    # -- literals --------------------------------------------------------
    def coefficients(self, a: int) -> list[int]:
        return self._digits(a)

    def from_coefficients(self, c: Sequence[int]) -> int:
        if len(c) != self.M or any(not 0 <= int(x) < self.p for x in c):
            raise FieldError(f"coefficient vector {list(c)} invalid for GF({self.p}^{self.M})")
        return self._undigits([int(x) for x in c])

    def format(self, a: int) -> str:
        if self.M == 1:
            return str(a)
        return "[" + ",".join(str(c) for c in self._digits(a)) + "]"

    def to_json(self, a: int):
        return a if self.M == 1 else self.format(a)

    _LIT = re.compile(r"^\s*(?:(\d+)|g(?:\s*\^\s*(-?\d+))?|\[([\d\s,]*)\])\s*$")

    def parse(self, lit) -> int:
        """Parse an element literal: ``c``, ``g``, ``g^k`` or ``[c0,...,c_{M-1}]``."""
        if isinstance(lit, FieldElement):
            if lit.field is not self:
                raise FieldError("element from a different field")
            return lit.value
        if isinstance(lit, bool):
            raise FieldError(f"bad element literal {lit!r}")
        if isinstance(lit, (int, np.integer)):
            lit = int(lit)
            if not 0 <= lit < self.p:
                raise FieldError(f"integer literal {lit} outside 0..{self.p - 1}")
            return lit
        if isinstance(lit, (list, tuple)):
            return self.from_coefficients(lit)
        if not isinstance(lit, str):
            raise FieldError(f"bad element literal {lit!r}")
        m = self._LIT.match(lit)
        if not m:
            raise FieldError(f"bad element literal {lit!r}")
        if m.group(1) is not None:
            return self.parse(int(m.group(1)))
        if m.group(3) is not None:
            body = m.group(3).strip()
            parts = [int(x) for x in body.split(",")] if body else []
            return self.from_coefficients(parts)
        k = int(m.group(2)) if m.group(2) is not None else 1
        return self.pow(self.generator, k)

    def code(self, x) -> int:
        """Integer codes pass through unchanged; anything else is parsed as a literal."""
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            x = int(x)
            if not 0 <= x < self.order:
                raise FieldError(f"element code {x} outside 0..{self.order - 1}")
            return x
        return self.parse(x)

    def element(self, lit) -> "FieldElement":
        return FieldElement(self, self.parse(lit))

    # -- misc ------------------------------------------------------------
    def __repr__(self) -> str:
        return f"Field(p={self.p}, M={self.M}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.M, self.modulus) == (other.p, other.M, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.M, self.modulus))


class FieldElement:
    """Immutable element of an ambient field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        if not 0 <= value < field.order:
            raise FieldError("element code out of range")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", int(value))

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("operands live in different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(self.field, v)

    def __add__(self, o):
        b = self._coerce(o)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, o):
        b = self._coerce(o)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, o):
        b = self._coerce(o)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, o):
        b = self._coerce(o)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, o):
        b = self._coerce(o)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, o):
        b = self._coerce(o)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def frobenius(self, s: int = 1) -> "FieldElement":
        return self._wrap(self.field.frobenius(self.value, s))

    @property
    def coefficients(self) -> list[int]:
        return self.field.coefficients(self.value)

    def __eq__(self, o) -> bool:
        if isinstance(o, FieldElement):
            return self.field == o.field and self.value == o.value
        if isinstance(o, int):
            return self.value == o % self.field.p and self.value < self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return self.field.format(self.value)


# --- module-level operations ------------------------------------------------

def make_field(p: int, M: int, modulus: Sequence[int] | None = None) -> Field:
    return Field(p, M, modulus)


def field_arith(op: str, x: FieldElement, y) -> FieldElement:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "pow":
        return x ** int(y)
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown operation {op!r}")


def frobenius(x: FieldElement, s: int = 1) -> FieldElement:
    if s < 1:
        raise ValueError("Frobenius degree must be >= 1")
    return x.frobenius(s)


def definition_degree(field: Field, a: Iterable, q: int) -> int:
    """delta(a): the degree over GF(q) of the field generated by the coordinates of a."""
    e = _exponent_of(field, q)
    vals = [field.code(x) for x in a]
    return reduce(_lcm, (field.degree_over(v, e) for v in vals), 1)


def _exponent_of(field: Field, q: int) -> int:
    e, x = 0, 1
    while x < q:
        x *= field.p
        e += 1
    if x != q:
        raise FieldError(f"{q} is not a power of {field.p}")
    field.check_subfield(e)
    return e


def lagrange_basis(field: Field, q: int, beta) -> list[int]:
    """Coefficients (low -> high, degree q-1) of the indicator polynomial of beta on GF(q)."""
    e = _exponent_of(field, q)
    b = field.code(beta)
    if not field.in_subfield(b, e):
        raise FieldError(f"{field.format(b)} is not in GF({q})")
    minus_one = field.neg(1)
    coeffs = [0] * q
    if b == 0:
        coeffs[0] = 1
        coeffs[q - 1] = minus_one
        return coeffs
    coeffs[q - 1] = minus_one
    binv = field.inv(b)
    for s in range(1, q - 1):
        coeffs[s] = field.neg(field.pow(binv, s))
    return coeffs
