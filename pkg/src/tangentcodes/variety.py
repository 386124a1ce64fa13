"""Affine varieties given by generators, and their tangent and gradient codes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

import numpy as np

from . import linalg as la
from .codes import CodeError, LinearCode, ZeroCodeError, is_near_mds, near_mds_rank_criterion
from .gf import Field, FieldError, definition_degree
from .groebner import elimination_basis
from .poly import MultiPoly, PolyMatrix, jacobian, poly_det

ENUM_BUDGET = 1 << 24


class VarietyError(ValueError):
    pass


class NotOnVarietyError(VarietyError):
    pass


class EnumerationBudgetError(VarietyError):
    pass


@dataclass
class GraphSection:
    """Coordinates ``dependent[i]`` as polynomials in the ``free`` coordinates."""

    free: tuple[int, ...]
    dependent: dict[int, MultiPoly]

    def point(self, values: Sequence[int]) -> list[int]:
        n = len(self.free) + len(self.dependent)
        a = [0] * n
        for i, v in zip(self.free, values):
            a[i] = v
        for i, g in self.dependent.items():
            a[i] = g.evaluate(a)
        return a


@dataclass
class TangentCode:
    point: tuple[int, ...]
    delta: int
    code: LinearCode


@dataclass
class GradientCode:
    point: tuple[int, ...]
    code: LinearCode


class AffineVariety:
    """V(f_1, ..., f_m) with generators defined over GF(q), q = p^e."""

    def __init__(self, field: Field, e: int, generators: Sequence[MultiPoly], dim_hint: int | None = None,
                 section: GraphSection | None = None, meta: dict | None = None):
        if not generators:
            raise VarietyError("need at least one generator")
        field.check_subfield(e)
        ns = {g.n for g in generators}
        if len(ns) != 1:
            raise VarietyError("generators have different variable counts")
        for g in generators:
            if g.field != field:
                raise VarietyError("generator over a different field")
            if not g.is_defined_over(e):
                raise VarietyError(f"generator {g} is not defined over GF({field.p}^{e})")
        self.field = field
        self.e = e
        self.F = list(generators)
        self.n = ns.pop()
        self.dim_hint = dim_hint
        self.section = section
        self.meta = dict(meta or {})
        self._jac: PolyMatrix | None = None

    @property
    def q(self) -> int:
        return self.field.p ** self.e

    @property
    def m(self) -> int:
        return len(self.F)

    def jacobian(self) -> PolyMatrix:
        if self._jac is None:
            self._jac = jacobian(self.F)
        return self._jac

    def contains(self, a: Sequence[int]) -> bool:
        return len(a) == self.n and all(f.evaluate(a) == 0 for f in self.F)

    def _require(self, a: Sequence[int]) -> tuple[int, ...]:
        a = tuple(int(x) for x in a)
        if not self.contains(a):
            raise NotOnVarietyError(f"point {[self.field.format(x) for x in a]} is not on the variety")
        return a

    def jacobian_at(self, a: Sequence[int]) -> list[list[int]]:
        return self.jacobian().evaluate(a)

    def delta(self, a: Sequence[int]) -> int:
        return definition_degree(self.field, a, self.q)

    def code_degree(self, a: Sequence[int]) -> int:
        """Degree over GF(p) of the field GF(q^delta(a))."""
        return self.e * self.delta(a)

    # -- codes ---------------------------------------------------------------
    def tangent_code(self, a: Sequence[int]) -> TangentCode:
        a = self._require(a)
        d = self.delta(a)
        return TangentCode(a, d, LinearCode(self.field, self.n, self.jacobian_at(a), self.e * d))

    def gradient_code(self, a: Sequence[int]) -> GradientCode:
        a = self._require(a)
        J = self.jacobian_at(a)
        return GradientCode(a, LinearCode.from_generator(self.field, J, self.n, self.e * self.delta(a)))

    # -- points ----------------------------------------------------------------
    def rational_points(self, s: int = 1, budget: int = ENUM_BUDGET) -> list[tuple[int, ...]]:
        return list(self.iter_rational_points(s, budget))

    def iter_rational_points(self, s: int = 1, budget: int = ENUM_BUDGET) -> Iterator[tuple[int, ...]]:
        elems = self.field.subfield_elements(self.e * s)
        if self.section is not None:
            free = self.section.free
            if len(elems) ** len(free) > budget:
                raise EnumerationBudgetError("section enumeration exceeds the budget")
            for vals in itertools.product(elems, repeat=len(free)):
                a = tuple(self.section.point(vals))
                if self.contains(a):
                    yield a
            return
        if len(elems) ** self.n > budget:
            raise EnumerationBudgetError(f"{len(elems)}^{self.n} points exceed the budget {budget}")
        for a in itertools.product(elems, repeat=self.n):
            if self.contains(a):
                yield a

    def sample_points(self, s: int, count: int, rng: np.random.Generator, max_tries: int = 100000) -> list[tuple[int, ...]]:
        """Random points of X(GF(q^s)); uses the section map when present."""
        elems = self.field.subfield_elements(self.e * s)
        out = []
        tries = 0
        while len(out) < count and tries < max_tries:
            tries += 1
            if self.section is not None:
                vals = [elems[int(rng.integers(len(elems)))] for _ in self.section.free]
                a = tuple(self.section.point(vals))
            else:
                a = tuple(elems[int(rng.integers(len(elems)))] for _ in range(self.n))
            if self.contains(a):
                out.append(a)
        return out

    # -- dimension, smoothness --------------------------------------------------
    def dimension(self, points: Sequence[Sequence[int]] | None = None) -> tuple[int, str]:
        if self.dim_hint is not None:
            return self.dim_hint, "hint"
        if points is None:
            points = self.rational_points(1)
        if not points:
            raise VarietyError("unknown dimension: no hint and no points to sample")
        r = max(la.rank(self.field, self.jacobian_at(a)) for a in points)
        return self.n - r, "sampled-dimension"

    def is_smooth(self, a: Sequence[int], k: int | None = None) -> bool:
        a = self._require(a)
        if k is None:
            k = self.dimension()[0]
        return la.rank(self.field, self.jacobian_at(a)) == self.n - k

    def puncturing_etale_at(self, gamma: Sequence[int], a: Sequence[int]) -> bool:
        """No nonzero tangent word is supported inside gamma."""
        a = self._require(a)
        cols = sorted(set(gamma))
        J = self.jacobian_at(a)
        return la.rank(self.field, la.submatrix_columns(J, cols)) == len(cols)

    # -- determinantal loci ---------------------------------------------------------
    def min_distance_minors(self, d: int) -> dict[tuple[int, ...], list[MultiPoly]]:
        """For every column tuple i of size d, the d x d Jacobian minors det(df_gamma/dx_i)."""
        key = ("mdm", d)
        cache = self.meta.setdefault("_cache", {})
        if key in cache:
            return cache[key]
        J = self.jacobian().rows
        out = {}
        for cols in itertools.combinations(range(self.n), d):
            minors = []
            for rows in itertools.combinations(range(self.m), d):
                det = poly_det([[J[r][c] for c in cols] for r in rows])
                if not det.is_zero():
                    minors.append(det)
            out[cols] = minors
        cache[key] = out
        return out

    def locus_membership(self, kind: str, a: Sequence[int], **params) -> bool:
        a = self._require(a)
        F = self.field
        if kind == "min_dist_leq":
            d = int(params["d"])
            if d < 1:
                raise VarietyError("d must be >= 1")
            if d > self.n:
                raise VarietyError(f"d = {d} exceeds the length n = {self.n}")
            if d > self.m:
                # too few rows for a d x d minor: every d-subset is dependent
                return True
            # a lies in V(prod_i S_i) iff some S_i vanishes entirely at a
            for minors in self.min_distance_minors(d).values():
                if all(g.evaluate(a) == 0 for g in minors):
                    return True
            return False
        if kind == "rank_leq":
            r = int(params["r"])
            J = self.jacobian_at(a)
            for rows in itertools.combinations(range(self.m), r + 1):
                for cols in itertools.combinations(range(self.n), r + 1):
                    if la.det(F, [[J[i][j] for j in cols] for i in rows]):
                        return False
            return True
        if kind == "constant_code":
            C: LinearCode = params["code"]
            H = C.H
            r = len(H)
            J = self.jacobian_at(a)
            if r > 0 and self.locus_membership("rank_leq", a, r=r - 1):
                return False
            for row in J:
                stacked = [row] + H
                for cols in itertools.combinations(range(self.n), r + 1):
                    if la.det(F, [[x[j] for j in cols] for x in stacked]):
                        return False
            return True
        if kind == "nmds":
            code = self.tangent_code(a).code
            if not 1 <= code.k <= code.n - 1:
                return False
            return near_mds_rank_criterion(code)
        raise VarietyError(f"unknown locus kind {kind!r}")

    def locus_by_definition(self, kind: str, a: Sequence[int], **params) -> bool:
        """Direct (brute force) evaluation of the same loci, for cross-checks."""
        a = self._require(a)
        if kind == "min_dist_leq":
            code = self.tangent_code(a).code
            try:
                return code.min_distance_by_columns() <= int(params["d"])
            except ZeroCodeError:
                return False
        if kind == "rank_leq":
            return la.rank(self.field, self.jacobian_at(a)) <= int(params["r"])
        if kind == "constant_code":
            T = self.tangent_code(a).code
            return T.H == params["code"].H
        if kind == "nmds":
            code = self.tangent_code(a).code
            if not 1 <= code.k <= code.n - 1:
                return False
            return is_near_mds(code)
        raise VarietyError(f"unknown locus kind {kind!r}")

    # -- misc ------------------------------------------------------------------
    def __repr__(self) -> str:
        return f"AffineVariety(n={self.n}, q={self.q}, m={self.m}, dim_hint={self.dim_hint})"


# --- variety operations -----------------------------------------------------------------

def puncture_variety(X: AffineVariety, gamma: Sequence[int], **budget) -> AffineVariety:
    """Closure of the coordinate projection deleting gamma, via elimination."""
    gamma = sorted(set(gamma))
    E = elimination_basis(X.F, gamma, track=False, **budget)
    keep_n = X.n - len(gamma)
    polys = [g.drop_variables(gamma) for g in E.polys]
    if not polys:
        polys = [MultiPoly.zero(X.field, keep_n)]
    return AffineVariety(X.field, X.e, polys, None, meta={"operation": "puncture", "gamma": gamma})


def shorten_variety(X: AffineVariety, gamma: Sequence[int]) -> AffineVariety:
    gamma = sorted(set(gamma))
    polys = [f.set_zero(gamma).drop_variables(gamma) for f in X.F]
    polys = [p for p in polys if not p.is_zero()] or [MultiPoly.zero(X.field, X.n - len(gamma))]
    return AffineVariety(X.field, X.e, polys, None, meta={"operation": "shorten", "gamma": gamma})


def extend_variety(X: AffineVariety) -> AffineVariety:
    n1 = X.n + 1
    polys = [f.embed(n1, range(X.n)) for f in X.F]
    polys.append(MultiPoly.linear(X.field, [1] * n1))
    return AffineVariety(X.field, X.e, polys, X.dim_hint, meta={"operation": "extend"})


def product_variety(X: AffineVariety, Y: AffineVariety) -> AffineVariety:
    if X.field != Y.field or X.e != Y.e:
        raise VarietyError("factors must share the field and q")
    n = X.n + Y.n
    polys = [f.embed(n, range(X.n)) for f in X.F] + [g.embed(n, range(X.n, n)) for g in Y.F]
    dim = X.dim_hint + Y.dim_hint if X.dim_hint is not None and Y.dim_hint is not None else None
    return AffineVariety(X.field, X.e, polys, dim, meta={"operation": "product"})


def fibered_product_variety(X: AffineVariety, g: Sequence[MultiPoly]) -> AffineVariety:
    """{(x, y) : x in X, g(y) = g(x)} in 2n variables."""
    n = X.n
    polys = [f.embed(2 * n, range(n)) for f in X.F]
    for gi in g:
        polys.append(gi.embed(2 * n, range(n, 2 * n)) - gi.embed(2 * n, range(n)))
    dim = X.dim_hint + n - len(g) if X.dim_hint is not None else None
    return AffineVariety(X.field, X.e, polys, dim, meta={"operation": "fibered_product"})


def variety_operation(kind: str, X: AffineVariety, *args, **kw) -> AffineVariety:
    if kind == "puncture":
        return puncture_variety(X, *args, **kw)
    if kind == "shorten":
        return shorten_variety(X, *args)
    if kind == "extend":
        return extend_variety(X)
    if kind == "product":
        return product_variety(X, *args)
    if kind == "fibered_product":
        return fibered_product_variety(X, *args)
    raise VarietyError(f"unknown operation {kind!r}")


# --- deformations -----------------------------------------------------------------------------

@dataclass
class DeformationStats:
    seed: int
    count: int
    ext_degree: int
    on_variety: int = 0
    full_rank: int = 0
    distance_ok: int = 0
    all_ok: int = 0
    details: list = dc_field(default_factory=list)

    def as_dict(self) -> dict:
        return {"seed": self.seed, "count": self.count, "ext_degree": self.ext_degree,
                "on_variety": self.on_variety, "full_rank": self.full_rank,
                "distance_ok": self.distance_ok, "all_ok": self.all_ok}


def deformation_family(X: AffineVariety, a: Sequence[int], gammas: Sequence[Sequence[int]]) -> list[MultiPoly]:
    """F_j(gamma, x) = sum over the non-constant support nu of f_j of gamma_{j,nu} (x^nu - a^nu)."""
    F = X.field
    out = []
    for f, gam in zip(X.F, gammas):
        supp = f.support()
        if len(gam) != len(supp):
            raise VarietyError("parameter tuple does not match the support")
        acc = MultiPoly.zero(F, X.n)
        for nu, c in zip(supp, gam):
            mono = MultiPoly.monomial(F, X.n, nu, 1)
            acc = acc + (mono - mono.evaluate(a)).scale(c)
        out.append(acc)
    return out


def original_parameters(X: AffineVariety) -> list[list[int]]:
    return [[f.terms[nu] for nu in f.support()] for f in X.F]


def deformation_sample(X: AffineVariety, a: Sequence[int], seed: int, count: int, ext_degree: int,
                       d: int | None = None, k: int | None = None) -> DeformationStats:
    """Sample parameter tuples over GF(p^ext_degree) and report how often a stays
    on X_gamma with a full-rank Jacobian and tangent distance >= d."""
    a = X._require(a)
    if k is None:
        k = X.dimension()[0]
    if d is None:
        d = X.tangent_code(a).code.min_distance()
    Fd = X.field
    Fd.check_subfield(ext_degree)
    elems = Fd.subfield_elements(ext_degree)
    rng = np.random.default_rng(seed)
    st = DeformationStats(seed, count, ext_degree)
    for _ in range(count):
        gam = [[elems[int(rng.integers(len(elems)))] for _ in f.support()] for f in X.F]
        G = deformation_family(X, a, gam)
        on = all(g.evaluate(a) == 0 for g in G)
        J = [[g.partial(j).evaluate(a) for j in range(X.n)] for g in G]
        rk = la.rank(Fd, J)
        full = rk == X.n - k
        dist_ok = False
        if on:
            T = LinearCode(Fd, X.n, J)
            try:
                dist_ok = T.min_distance() >= d
            except ZeroCodeError:
                dist_ok = False
        st.on_variety += on
        st.full_rank += full
        st.distance_ok += dist_ok
        st.all_ok += on and full and dist_ok
    return st
