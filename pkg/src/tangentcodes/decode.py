"""Simultaneous decoding of the tangent codes of a variety.

One set of tables, computed once from the generators, decodes words at
every point of X: eliminants locate the error support, and adjugate
products recover the error values on it.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from . import linalg as la
from .codes import ZeroCodeError, weight
from .groebner import GroebnerBudgetError, elimination_basis
from .poly import MAX_DEGREE, MultiPoly, PolyMatrix, jacobian, poly_adjugate, poly_det
from .variety import AffineVariety, NotOnVarietyError


class DecodeError(ValueError):
    """The word has no error of weight <= t, or a precondition failed."""


@dataclass
class TupleTable:
    i: tuple[int, ...]
    eliminants: list[MultiPoly]
    jacobian: PolyMatrix | None
    cofactors: PolyMatrix | None = None
    error: str | None = None


@dataclass
class DecoderTables:
    X: AffineVariety
    t: int
    tuples: dict[tuple[int, ...], TupleTable]
    row_tuples: list[tuple[int, ...]]
    delta: dict[tuple[tuple[int, ...], tuple[int, ...]], MultiPoly]
    P: dict[tuple[tuple[int, ...], tuple[int, ...]], list[list[MultiPoly]]]
    meta: dict = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.X.n

    def failed(self) -> dict[tuple[int, ...], str]:
        return {i: tt.error for i, tt in self.tuples.items() if tt.error}


def _tuple_table(F_list: Sequence[MultiPoly], i: tuple[int, ...], track: bool, max_basis: int,
                 max_degree: int) -> TupleTable:
    try:
        E = elimination_basis(F_list, i, track=track, max_basis=max_basis, max_degree=max_degree)
    except GroebnerBudgetError as exc:
        return TupleTable(i, [], None, None, str(exc))
    polys = E.polys
    if not polys:
        polys = [MultiPoly.zero(F_list[0].field, F_list[0].n)]
    return TupleTable(i, polys, jacobian(polys), E.cofactors)


def _tuple_worker(args):
    return _tuple_table(*args)


def precompute(X: AffineVariety, t: int, jobs: int = 1, track: bool = True, max_basis: int = 4096,
               max_degree: int = MAX_DEGREE, max_tuples: int = 4096) -> DecoderTables:
    """Eliminants for every t-subset of coordinates and the (Delta_ji, P_ji) pairs."""
    n, m = X.n, X.m
    if t < 1:
        raise ValueError("t must be >= 1")
    if t > n:
        raise ValueError("t exceeds the length")
    idx = list(itertools.combinations(range(n), t))
    if len(idx) > max_tuples:
        raise ValueError(f"C({n},{t}) = {len(idx)} index tuples exceed the budget {max_tuples}")
    jobs_args = [(X.F, i, track, max_basis, max_degree) for i in idx]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_tuple_worker, jobs_args))
    else:
        results = [_tuple_table(*a) for a in jobs_args]
    tuples = {tt.i: tt for tt in results}

    J = X.jacobian().rows
    rows = list(itertools.combinations(range(m), t))
    delta, P = {}, {}
    for j in rows:
        Jj = [J[r] for r in j]
        for i in idx:
            sq = [[row[c] for c in i] for row in Jj]
            D = poly_det(sq)
            if D.is_zero():
                continue
            adj = poly_adjugate(sq)
            prod = []
            for ar in adj:
                out_row = []
                for col in range(n):
                    acc = MultiPoly.zero(X.field, n)
                    for s in range(t):
                        if not ar[s].is_zero() and not Jj[s][col].is_zero():
                            acc = acc + ar[s] * Jj[s][col]
                    out_row.append(acc)
                prod.append(out_row)
            delta[(j, i)] = D
            P[(j, i)] = prod
    return DecoderTables(X, t, tuples, rows, delta, P)


def check_tables(tables: DecoderTables, points: Sequence[Sequence[int]]) -> bool:
    """(df_j/dx_i) P_ji = Delta_ji (df_j/dx) at the given points, and eliminants avoid x_i."""
    F = tables.X.field
    for i, tt in tables.tuples.items():
        if any(g.variables() & set(i) for g in tt.eliminants):
            return False
    for (j, i), D in tables.delta.items():
        for a in points:
            Ja = tables.X.jacobian_at(a)
            Jj = [Ja[r] for r in j]
            sq = [[row[c] for c in i] for row in Jj]
            Pa = [[g.evaluate(a) for g in row] for row in tables.P[(j, i)]]
            d = D.evaluate(a)
            if la.matmul(F, sq, Pa) != [[F.mul(d, x) for x in row] for row in Jj]:
                return False
    return True


def _word(tables: DecoderTables, a: tuple[int, ...], w: Sequence[int]) -> list[int]:
    X = tables.X
    F = X.field
    if len(w) != X.n:
        raise DecodeError(f"word has length {len(w)}, expected {X.n}")
    w = [F.code(x) for x in w]
    deg = X.code_degree(a)
    if not all(F.in_subfield(x, deg) for x in w):
        raise DecodeError(f"word is not defined over GF({F.p}^{deg})")
    return w


def _point(tables: DecoderTables, a: Sequence[int]) -> tuple[int, ...]:
    try:
        return tables.X._require([tables.X.field.code(x) for x in a])
    except NotOnVarietyError as exc:
        raise DecodeError(str(exc)) from exc


def error_support_test(tables: DecoderTables, a: Sequence[int], w: Sequence[int], i: Sequence[int]) -> bool:
    """Is w tangent at a to the cylinder over the closure of the puncturing at i?"""
    a = _point(tables, a)
    w = _word(tables, a, w)
    tt = tables.tuples[tuple(sorted(i))]
    if tt.error:
        raise DecodeError(f"no tables for {list(tt.i)}: {tt.error}")
    M = tt.jacobian.evaluate(a)
    return not any(la.matvec(tables.X.field, M, w))


def _candidates(tables: DecoderTables, a: tuple[int, ...], w: list[int], notes: list[str]) -> Iterator[tuple[list[int], list[int], tuple[int, ...]]]:
    X = tables.X
    F = X.field
    J = X.jacobian_at(a)
    for i, tt in tables.tuples.items():
        if tt.error:
            notes.append(f"tuple {[c + 1 for c in i]} skipped: {tt.error}")
            continue
        if any(la.matvec(F, tt.jacobian.evaluate(a), w)):
            continue
        found_j = False
        for j in tables.row_tuples:
            D = tables.delta.get((j, i))
            if D is None:
                continue
            d = D.evaluate(a)
            if not d:
                continue
            found_j = True
            Pa = [[g.evaluate(a) for g in row] for row in tables.P[(j, i)]]
            dinv = F.inv(d)
            ei = [F.mul(dinv, x) for x in la.matvec(F, Pa, w)]
            e = [0] * X.n
            for c, x in zip(i, ei):
                e[c] = x
            v = [F.sub(x, y) for x, y in zip(w, e)]
            if any(la.matvec(F, J, v)) or weight(e) > tables.t:
                # the eliminant test can pass spuriously where the image is singular
                notes.append(f"tuple {[c + 1 for c in i]} rejected: recovered error is not valid")
                break
            yield v, e, i
            break
        if not found_j:
            notes.append(f"tuple {[c + 1 for c in i]}: no j with Delta_ji(a) != 0")


def _distance(tables: DecoderTables, a: tuple[int, ...]) -> int | None:
    try:
        return tables.X.tangent_code(a).code.min_distance()
    except ZeroCodeError:
        return None


def decode(tables: DecoderTables, a: Sequence[int], w: Sequence[int],
           d_bound: int | None = None) -> tuple[list[int], list[int], tuple[int, ...]]:
    """Return (v, e, i) with v in T_a(X), w = v + e and supp(e) inside i."""
    a = _point(tables, a)
    w = _word(tables, a, w)
    t = tables.t
    d = d_bound if d_bound is not None else _distance(tables, a)
    if d is not None and d < 2 * t + 1:
        raise DecodeError(f"d(T_a) = {d} < 2t+1 = {2 * t + 1}")
    notes: list[str] = []
    for v, e, i in _candidates(tables, a, w, notes):
        return v, e, i
    msg = f"word has no tangent-code error of weight <= {t}"
    if notes:
        msg += " (" + "; ".join(notes) + ")"
    raise DecodeError(msg)


def coset_leader(tables: DecoderTables, a: Sequence[int], w: Sequence[int]) -> list[int] | None:
    """The unique representative of w + T_a of weight <= (d-1)//2, or None."""
    a = _point(tables, a)
    w = _word(tables, a, w)
    d = _distance(tables, a)
    radius = tables.t if d is None else min(tables.t, (d - 1) // 2)
    if weight(w) <= radius and d is None:
        return w
    for _, e, _ in _candidates(tables, a, w, []):
        if weight(e) <= radius:
            return e
    return None
