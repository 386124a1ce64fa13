"""Buchberger's algorithm with cofactor tracking, division and elimination.

Only lexicographic orders are supported.  An order is a permutation
``perm`` of the variable indices meaning ``x_perm[0] > x_perm[1] > ...``.
Internally every polynomial is re-keyed so that this order coincides with
Python tuple comparison, which keeps leading-term extraction cheap.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .gf import Field
from .poly import MAX_DEGREE, MultiPoly, PolyMatrix

Key = tuple[int, ...]
IPoly = dict  # Key -> coefficient code


class GroebnerBudgetError(RuntimeError):
    """Basis size or degree budget exhausted."""


@dataclass(frozen=True)
class LexOrder:
    perm: tuple[int, ...]

    def __init__(self, perm: Sequence[int]):
        perm = tuple(int(i) for i in perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{perm} is not a permutation")
        object.__setattr__(self, "perm", perm)

    @classmethod
    def default(cls, n: int) -> "LexOrder":
        return cls(range(n))

    @classmethod
    def eliminating(cls, n: int, first: Sequence[int]) -> "LexOrder":
        first = list(dict.fromkeys(first))
        return cls(first + [i for i in range(n) if i not in set(first)])

    @property
    def n(self) -> int:
        return len(self.perm)

    def key(self, mono: Sequence[int]) -> Key:
        return tuple(mono[i] for i in self.perm)

    def unkey(self, key: Key) -> tuple[int, ...]:
        m = [0] * len(self.perm)
        for pos, i in enumerate(self.perm):
            m[i] = key[pos]
        return tuple(m)

    def greater(self, m1: Sequence[int], m2: Sequence[int]) -> bool:
        return self.key(m1) > self.key(m2)

    def leading_monomial(self, f: MultiPoly) -> tuple[int, ...]:
        if f.is_zero():
            raise ValueError("zero polynomial has no leading monomial")
        return max(f.terms, key=self.key)

    def leading_term(self, f: MultiPoly) -> tuple[tuple[int, ...], int]:
        m = self.leading_monomial(f)
        return m, f.terms[m]


def _order_for(order, n: int) -> LexOrder:
    if order is None:
        return LexOrder.default(n)
    if isinstance(order, LexOrder):
        if order.n != n:
            raise ValueError("order has the wrong number of variables")
        return order
    return LexOrder(order)


# --- internal polynomial helpers ------------------------------------------------

def _to_internal(f: MultiPoly, order: LexOrder) -> IPoly:
    return {order.key(m): c for m, c in f.terms.items()}


def _from_internal(F: Field, d: IPoly, order: LexOrder) -> MultiPoly:
    return MultiPoly(F, order.n, {order.unkey(k): c for k, c in d.items()}, check=False)


def _divides(a: Key, b: Key) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _axpy(F: Field, acc: IPoly, c: int, mono: Key, g: IPoly) -> None:
    """acc += c * x^mono * g, in place."""
    add, mul = F.add, F.mul
    for k, v in g.items():
        nk = tuple(a + b for a, b in zip(k, mono))
        nv = add(acc.get(nk, 0), mul(c, v))
        if nv:
            acc[nk] = nv
        else:
            acc.pop(nk, None)


def _scale(F: Field, d: IPoly, c: int) -> IPoly:
    mul = F.mul
    return {k: mul(c, v) for k, v in d.items()}


def _reduce(F: Field, f: IPoly, G: Sequence[IPoly], lms: Sequence[Key], active: Sequence[int],
            want_quotients: bool, full: bool = True):
    """Multivariate division of f by the active elements of G.

    Returns (remainder, quotients) where quotients maps basis index to an
    internal polynomial; quotients is None when not requested.
    """
    p = dict(f)
    rem: IPoly = {}
    quots: dict[int, IPoly] | None = {} if want_quotients else None
    heap = [tuple(-x for x in k) for k in p]
    heapq.heapify(heap)
    neg, div = F.neg, F.div
    while heap:
        nk = heapq.heappop(heap)
        k = tuple(-x for x in nk)
        c = p.get(k)
        if not c:
            continue
        for idx in active:
            lm = lms[idx]
            if _divides(lm, k):
                g = G[idx]
                q = div(c, g[lm])
                qm = tuple(a - b for a, b in zip(k, lm))
                before = set(p)
                _axpy(F, p, neg(q), qm, g)
                for kk in p.keys() - before:
                    heapq.heappush(heap, tuple(-x for x in kk))
                if quots is not None:
                    qd = quots.setdefault(idx, {})
                    qd[qm] = F.add(qd.get(qm, 0), q)
                    if not qd[qm]:
                        del qd[qm]
                break
        else:
            rem[k] = c
            del p[k]
            if not full:
                rem.update(p)
                break
    return rem, quots


def _cof_combine(F: Field, base: list[IPoly], quots: dict[int, IPoly], C: Sequence[list[IPoly]]) -> list[IPoly]:
    """base - sum_k quots[k] * C[k] (cofactor rows)."""
    out = [dict(r) for r in base]
    neg = F.neg
    for idx, q in quots.items():
        row = C[idx]
        for qm, qc in q.items():
            for j, cj in enumerate(row):
                if cj:
                    _axpy(F, out[j], neg(qc), qm, cj)
    return out


def _cof_scale(F: Field, row: list[IPoly], c: int) -> list[IPoly]:
    return [_scale(F, r, c) for r in row]


def _lcm(a: Key, b: Key) -> Key:
    return tuple(max(x, y) for x, y in zip(a, b))


# --- public API -------------------------------------------------------------------

@dataclass
class CofactorBasis:
    """A reduced lex Groebner basis G of <F> with G = C * F^t."""

    G: list[MultiPoly]
    C: PolyMatrix | None
    order: LexOrder
    generators: list[MultiPoly] = dc_field(default_factory=list)
    stats: dict = dc_field(default_factory=dict)

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [self.order.leading_monomial(g) for g in self.G]

    def reduce(self, f: MultiPoly) -> MultiPoly:
        return divide(f, self.G, self.order)[1]

    def contains(self, f: MultiPoly) -> bool:
        return self.reduce(f).is_zero()


def divide(f: MultiPoly, divisors: Sequence[MultiPoly], order=None) -> tuple[list[MultiPoly], MultiPoly]:
    """Division algorithm: f = sum q_i * divisors[i] + r."""
    if not divisors:
        raise ValueError("need at least one divisor")
    if any(d.is_zero() for d in divisors):
        raise ValueError("zero divisor polynomial")
    order = _order_for(order, f.n)
    F = f.field
    G = [_to_internal(d, order) for d in divisors]
    lms = [max(g) for g in G]
    rem, quots = _reduce(F, _to_internal(f, order), G, lms, range(len(G)), True)
    qs = [_from_internal(F, quots.get(i, {}), order) for i in range(len(G))]
    return qs, _from_internal(F, rem, order)


def s_polynomial(h1: MultiPoly, h2: MultiPoly, order=None) -> MultiPoly:
    if h1.is_zero() or h2.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    order = _order_for(order, h1.n)
    F = h1.field
    a, b = _to_internal(h1, order), _to_internal(h2, order)
    la, lb = max(a), max(b)
    lc = _lcm(la, lb)
    out: IPoly = {}
    _axpy(F, out, F.inv(a[la]), tuple(x - y for x, y in zip(lc, la)), a)
    _axpy(F, out, F.neg(F.inv(b[lb])), tuple(x - y for x, y in zip(lc, lb)), b)
    return _from_internal(F, out, order)


def buchberger_cofactors(F_list: Sequence[MultiPoly], order=None, track: bool = True,
                         max_basis: int = 4096, max_degree: int = MAX_DEGREE) -> CofactorBasis:
    """Reduced lex Groebner basis of <F_list>, with cofactors when ``track``.

    Pairs are processed smallest-lcm first (total degree, then the order).
    Buchberger's coprime criterion and chain criterion skip useless pairs.
    """
    if not F_list:
        raise ValueError("need at least one generator")
    if any(f.is_zero() for f in F_list):
        raise ValueError("zero generator")
    n = F_list[0].n
    fld = F_list[0].field
    order = _order_for(order, n)
    m = len(F_list)

    G: list[IPoly] = []
    lms: list[Key] = []
    C: list[list[IPoly]] = []
    zero_row = [{} for _ in range(m)]
    zero_key = (0,) * n
    heap: list = []
    pending: set[tuple[int, int]] = set()
    stats = {"pairs": 0, "reductions_to_zero": 0, "skipped": 0}

    def add_element(h: IPoly, cof: list[IPoly] | None) -> None:
        lm = max(h)
        if sum(lm) > max_degree or max(sum(k) for k in h) > max_degree:
            raise GroebnerBudgetError(f"degree budget {max_degree} exceeded")
        inv = fld.inv(h[lm])
        h = _scale(fld, h, inv)
        idx = len(G)
        G.append(h)
        lms.append(lm)
        C.append(_cof_scale(fld, cof, inv) if cof is not None else None)
        if len(G) > max_basis:
            raise GroebnerBudgetError(f"basis size budget {max_basis} exceeded")
        for i in range(idx):
            lc = _lcm(lms[i], lm)
            heapq.heappush(heap, (sum(lc), lc, i, idx))
            pending.add((i, idx))

    for j, f in enumerate(F_list):
        row = None
        if track:
            row = [dict() for _ in range(m)]
            row[j] = {zero_key: 1}
        add_element(_to_internal(f, order), row)

    while heap:
        _, lc, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        stats["pairs"] += 1
        li, lj = lms[i], lms[j]
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            stats["skipped"] += 1
            continue
        chain = False
        for k in range(len(G)):
            if k == i or k == j or not _divides(lms[k], lc):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            stats["skipped"] += 1
            continue
        mi = tuple(x - y for x, y in zip(lc, li))
        mj = tuple(x - y for x, y in zip(lc, lj))
        s: IPoly = {}
        _axpy(fld, s, 1, mi, G[i])
        _axpy(fld, s, fld.neg(1), mj, G[j])
        rem, quots = _reduce(fld, s, G, lms, range(len(G)), track)
        if not rem:
            stats["reductions_to_zero"] += 1
            continue
        cof = None
        if track:
            base = [dict() for _ in range(m)]
            for col in range(m):
                if C[i][col]:
                    _axpy(fld, base[col], 1, mi, C[i][col])
                if C[j][col]:
                    _axpy(fld, base[col], fld.neg(1), mj, C[j][col])
            cof = _cof_combine(fld, base, quots, C)
        add_element(rem, cof)

    # minimise: drop elements whose leading monomial is divisible by another's
    keep: list[int] = []
    for idx in sorted(range(len(G)), key=lambda t: (lms[t], t)):
        if not any(_divides(lms[k], lms[idx]) for k in keep):
            keep.append(idx)
    # inter-reduce tails against the rest of the minimal basis
    final: list[tuple[Key, IPoly, list[IPoly] | None]] = []
    for idx in keep:
        others = [k for k in keep if k != idx]
        rem, quots = _reduce(fld, G[idx], G, lms, others, track)
        cof = _cof_combine(fld, C[idx], quots, C) if track else None
        lm = max(rem)
        inv = fld.inv(rem[lm])
        if inv != 1:
            rem = _scale(fld, rem, inv)
            if track:
                cof = _cof_scale(fld, cof, inv)
        final.append((lm, rem, cof))
    # later reductions used the unreduced originals of the other elements, so
    # the tails may still contain reducible terms; iterate to a fixpoint
    changed = True
    while changed:
        changed = False
        fG = [f[1] for f in final]
        flm = [f[0] for f in final]
        for t in range(len(final)):
            lm, h, cof = final[t]
            rem, quots = _reduce(fld, h, fG, flm, [k for k in range(len(final)) if k != t], track)
            if rem != h:
                changed = True
                if track:
                    cof = _cof_combine(fld, cof, quots, [f[2] for f in final])
                final[t] = (lm, rem, cof)
                fG[t] = rem
    final.sort(key=lambda t: t[0], reverse=True)
    Gout = [_from_internal(fld, h, order) for _, h, _ in final]
    Cout = None
    if track:
        Cout = PolyMatrix([[_from_internal(fld, c, order) for c in cof] for _, _, cof in final])
    stats["basis_size"] = len(Gout)
    return CofactorBasis(Gout, Cout, order, list(F_list), stats)


def is_groebner_basis(G: Sequence[MultiPoly], order=None) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if not g.is_zero()]
    if not G:
        return True
    order = _order_for(order, G[0].n)
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if not divide(s_polynomial(G[a], G[b], order), G, order)[1].is_zero():
                return False
    return True


@dataclass
class EliminationResult:
    eliminated: tuple[int, ...]
    polys: list[MultiPoly]
    cofactors: PolyMatrix | None
    basis: CofactorBasis


def elimination_basis(F_list: Sequence[MultiPoly], idx: Sequence[int], track: bool = True,
                      max_basis: int = 4096, max_degree: int = MAX_DEGREE) -> EliminationResult:
    """Basis elements free of the variables in idx, under lex with x_idx first."""
    n = F_list[0].n
    idx = tuple(sorted(set(idx)))
    if any(not 0 <= i < n for i in idx):
        raise ValueError(f"index set {idx} out of range")
    order = LexOrder.eliminating(n, idx)
    B = buchberger_cofactors(F_list, order, track, max_basis, max_degree)
    rows = [r for r, g in enumerate(B.G) if not (g.variables() & set(idx))]
    polys = [B.G[r] for r in rows]
    cof = PolyMatrix([B.C.rows[r] for r in rows]) if track and B.C is not None else None
    return EliminationResult(idx, polys, cof, B)


def _pure_power_elements(B: CofactorBasis, i: int) -> list[MultiPoly]:
    out = []
    for g, lm in zip(B.G, B.leading_monomials()):
        if lm[i] > 0 and all(e == 0 for k, e in enumerate(lm) if k != i):
            out.append(g)
    return out


def puncturing_is_finite(F_list: Sequence[MultiPoly], gamma: Sequence[int], **budget) -> bool:
    """Leading-term test: each x_i, i in gamma, has a pure-power leading monomial."""
    n = F_list[0].n
    B = buchberger_cofactors(F_list, LexOrder.eliminating(n, sorted(set(gamma))), track=False, **budget)
    return all(_pure_power_elements(B, i) for i in gamma)


def puncturing_separable_heuristic(F_list: Sequence[MultiPoly], gamma: Sequence[int], **budget) -> bool:
    """Heuristic only: for each i in gamma, the minimal-degree pure-power element
    g has a derivative in x_i outside the ideal.  Not a decision procedure."""
    n = F_list[0].n
    B = buchberger_cofactors(F_list, LexOrder.eliminating(n, sorted(set(gamma))), track=False, **budget)
    for i in gamma:
        cands = _pure_power_elements(B, i)
        if not cands:
            return False
        g = min(cands, key=lambda h: B.order.leading_monomial(h)[i])
        if B.contains(g.partial(i)):
            return False
    return True
