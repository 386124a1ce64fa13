"""Explicit varieties and morphisms built from code-theoretic data."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

import numpy as np

from . import linalg as la
from .codes import (CodeError, CyclicSpec, LinearCode, cyclic_code, divisors_of, hamming_parity,
                    is_cyclic, splitting_degree, _exponent)
from .gf import Field, lagrange_basis
from .poly import MAX_DEGREE, MultiPoly, PolyCapError, jacobian_at, univariate
from .variety import AffineVariety, GraphSection


class ConstructionError(ValueError):
    pass


# --- variety with a prescribed minimum-weight support ----------------------------------

def _find_alpha(F: Field, H: list[list[int]], sigma: set[int]) -> tuple[int, ...]:
    r, n = len(H), len(H[0])
    for alpha in itertools.combinations(range(n), r):
        if sigma <= set(alpha):
            continue
        if la.det(F, la.submatrix_columns(H, alpha)):
            return alpha
    raise ConstructionError("every invertible column set contains sigma")


def variety_from_code(C: LinearCode, sigma: Sequence[int], higher_terms: dict | None = None) -> AffineVariety:
    """A variety through 0 with T_0 = C whose tangent codes all contain a word
    supported in sigma.

    ``higher_terms`` maps ``(i, s)`` (row i, non-pivot column s) to
    ``{r: coefficient}`` for r >= 2.  By default the single term
    ``H'_{is} x_s^2`` is used.  On the columns of sigma outside the pivot set
    only terms with vanishing derivative (p | r) are admitted, since
    otherwise the dependent-column relation breaks away from x = 0.
    """
    F = C.field
    n, k = C.n, C.k
    sigma = sorted(set(sigma))
    if k == 0 or not C.H:
        raise ConstructionError("need a code with 0 < k < n")
    Hs = la.submatrix_columns(C.H, sigma)
    ns = la.nullspace(F, Hs, len(sigma))
    word = None
    for v in ns:
        if all(v):
            word = v
            break
    if len(ns) != 1 or word is None:
        raise ConstructionError(f"no minimum-weight codeword has support {[s + 1 for s in sigma]}")
    d = C.min_distance()
    if len(sigma) != d:
        raise ConstructionError(f"|sigma| = {len(sigma)} differs from d = {d}")
    if d > n - k:
        raise ConstructionError("construction needs d <= n - k")
    alpha = _find_alpha(F, C.H, set(sigma))
    Hp = la.matmul(F, la.inverse(F, la.submatrix_columns(C.H, alpha)), C.H)
    sig_nu = next(s for s in sigma if s not in alpha)
    c = dict(zip(sigma, word))
    lam = {s: F.neg(F.div(c[s], c[sig_nu])) for s in sigma if s != sig_nu}
    non_alpha = [s for s in range(n) if s not in alpha]
    restricted = set(sigma) - set(alpha) - {sig_nu}

    terms: dict[tuple[int, int], dict[int, int]] = {}
    for i in range(n - k):
        for s in non_alpha:
            if s == sig_nu:
                continue
            if higher_terms is None:
                extra = {2: Hp[i][s]} if Hp[i][s] else {}
                if s in restricted:
                    extra = {r: v for r, v in extra.items() if r % F.p == 0}
            else:
                extra = {int(r): v for r, v in higher_terms.get((i, s), {}).items() if v}
                if any(r < 2 for r in extra):
                    raise ConstructionError("higher terms need exponent >= 2")
                if s in restricted and any(r % F.p for r in extra):
                    raise ConstructionError(
                        f"column {s + 1} lies in sigma: only exponents divisible by p are allowed there")
            terms[(i, s)] = extra

    def fis(i: int, s: int, var: int) -> MultiPoly:
        """f_{i,s} evaluated at the variable x_var."""
        if s in alpha:
            return MultiPoly.variable(F, n, var).scale(Hp[i][s])
        coeffs = {1: Hp[i][s]}
        coeffs.update(terms[(i, s)])
        top = max(coeffs)
        return univariate(F, n, var, [coeffs.get(r, 0) for r in range(top + 1)])

    gens = []
    for i in range(n - k):
        f = MultiPoly.variable(F, n, alpha[i])
        for s in non_alpha:
            if s == sig_nu:
                g = MultiPoly.zero(F, n)
                for t, lt in lam.items():
                    g = g + fis(i, t, sig_nu).scale(lt)
                f = f + g
            else:
                f = f + fis(i, s, s)
        gens.append(f)
    dependent = {alpha[i]: -(gens[i] - MultiPoly.variable(F, n, alpha[i])) for i in range(n - k)}
    section = GraphSection(tuple(non_alpha), dependent)
    v = [0] * n
    for s, l in lam.items():
        v[s] = l
    v[sig_nu] = F.neg(1)
    X = AffineVariety(F, C.m, gens, k, section,
                      meta={"construction": "from-code", "alpha": list(alpha), "sigma": sigma,
                            "sigma_nu": sig_nu, "lambda": {s: l for s, l in lam.items()}, "word": v,
                            "normalized_parity": Hp})
    if jacobian_at(gens, [0] * n) != Hp:
        raise AssertionError("Jacobian at the origin differs from the normalised parity matrix")
    return X


# --- interpolation -------------------------------------------------------------------------

@dataclass
class CodeFamily:
    """Points of GF(q)^n labelled by full-rank parity matrices of one shape."""

    field: Field
    q: int
    points: list[tuple[int, ...]]
    matrices: list[list[list[int]]]

    def __post_init__(self):
        F = self.field
        e = _exponent(F, self.q)
        if len(self.points) != len(self.matrices) or not self.points:
            raise ConstructionError("need one matrix per point")
        if len(set(map(tuple, self.points))) != len(self.points):
            raise ConstructionError("repeated point in the family")
        n = len(self.points[0])
        shapes = {(len(H), len(H[0]) if H else 0) for H in self.matrices}
        if len(shapes) != 1 or shapes.pop()[1] != n:
            raise ConstructionError("matrices must share the shape (n-k) x n")
        for a, H in zip(self.points, self.matrices):
            if len(a) != n or not all(F.in_subfield(x, e) for x in a):
                raise ConstructionError("points must lie in GF(q)^n")
            if not all(F.in_subfield(x, e) for r in H for x in r):
                raise ConstructionError("matrix entries must lie in GF(q)")
            if la.rank(F, H) != len(H):
                raise ConstructionError("rank-deficient parity matrix in the family")
        self.points = [tuple(a) for a in self.points]

    @property
    def n(self) -> int:
        return len(self.points[0])


def _interpolate_rows(F: Field, q: int, points: Sequence[Sequence[int]], mats: Sequence[Sequence[Sequence[int]]]) -> list[MultiPoly]:
    n = len(points[0])
    p = F.p
    rows = len(mats[0])
    if n * p * (q - 1) + q > MAX_DEGREE:
        raise PolyCapError(f"interpolating polynomials would have degree {n * p * (q - 1) + q} > {MAX_DEGREE}")
    lag_cache: dict[tuple[int, int], MultiPoly] = {}

    def lag(l: int, beta: int) -> MultiPoly:
        key = (l, beta)
        if key not in lag_cache:
            lag_cache[key] = univariate(F, n, l, lagrange_basis(F, q, beta), power=p)
        return lag_cache[key]

    diffs = [MultiPoly.variable(F, n, j) - MultiPoly.monomial(F, n, [q if t == j else 0 for t in range(n)])
             for j in range(n)]
    out = [MultiPoly.zero(F, n) for _ in range(rows)]
    for a, H in zip(points, mats):
        b = [F.frobenius(x, 1) for x in a]
        indicator = MultiPoly.constant(F, n, 1)
        for l in range(n):
            indicator = indicator * lag(l, b[l])
        for i in range(rows):
            lin = MultiPoly.zero(F, n)
            for j in range(n):
                if H[i][j]:
                    lin = lin + diffs[j].scale(H[i][j])
            out[i] = out[i] + lin * indicator
    return out


def interpolate_code_family(fam: CodeFamily, verify: bool = True) -> list[MultiPoly]:
    """Generators whose Jacobian at every a in S is H(a), vanishing on GF(q)^n."""
    F = fam.field
    gens = _interpolate_rows(F, fam.q, fam.points, fam.matrices)
    if verify:
        for a, H in zip(fam.points, fam.matrices):
            if jacobian_at(gens, a) != [list(r) for r in H]:
                raise AssertionError("interpolated Jacobian differs from the family")
    return gens


def interpolated_variety(fam: CodeFamily) -> AffineVariety:
    gens = interpolate_code_family(fam)
    e = _exponent(fam.field, fam.q)
    k = fam.n - len(fam.matrices[0])
    return AffineVariety(fam.field, e, gens, k, meta={"construction": "interpolate"})


# --- constant tangent codes ------------------------------------------------------------------

def random_frobenius_quadratics(F: Field, e: int, n: int, count: int, variables: Sequence[int],
                                rng: np.random.Generator, terms: int = 2) -> list[MultiPoly]:
    """Sparse random polynomials of degree <= 2 in the given variables, composed with x^p."""
    elems = [x for x in F.subfield_elements(e) if x]
    monos = []
    for a in variables:
        m = [0] * n
        m[a] = 2
        monos.append(tuple(m))
        m = [0] * n
        m[a] = 1
        monos.append(tuple(m))
        for b in variables:
            if b > a:
                m = [0] * n
                m[a] = m[b] = 1
                monos.append(tuple(m))
    monos.sort()
    out = []
    for _ in range(count):
        g = MultiPoly.zero(F, n)
        picks = rng.choice(len(monos), size=min(terms, len(monos)), replace=False)
        for idx in sorted(int(t) for t in picks):
            c = elems[int(rng.integers(len(elems)))]
            g = g + MultiPoly.monomial(F, n, monos[idx], c)
        out.append(g.frobenius_substitute())
    return out


def constant_tangent_variety(C: LinearCode, g: Sequence[MultiPoly] | None = None, seed: int = 0,
                             terms: int = 2) -> AffineVariety:
    """f_i = sum_j H_ij x_j + g_i(x^p): the Jacobian is H at every point.

    H is taken in reduced echelon form.  Without explicit ``g`` the default
    draws sparse quadratics in the non-pivot variables (then composed with
    x^p), which keeps an explicit section over the non-pivot coordinates.
    """
    F = C.field
    n = C.n
    H = C.H
    r = len(H)
    pivots = [next(j for j, x in enumerate(row) if x) for row in H]
    free = [j for j in range(n) if j not in pivots]
    meta = {"construction": "constant", "seed": seed}
    if g is None:
        rng = np.random.default_rng(seed)
        g = random_frobenius_quadratics(F, C.m, n, r, free, rng, terms)
        explicit = True
    else:
        g = list(g)
        if len(g) != r:
            raise ConstructionError("need one g_i per parity row")
        explicit = all(not (gi.variables() & set(pivots)) for gi in g)
        g = [gi.frobenius_substitute() for gi in g]
        meta["seed"] = None
    gens = [MultiPoly.linear(F, row) + gi for row, gi in zip(H, g)]
    if not gens:
        gens = [MultiPoly.zero(F, n)]
    section = None
    if explicit and r:
        dep = {pivots[i]: -(gens[i] - MultiPoly.variable(F, n, pivots[i])) for i in range(r)}
        section = GraphSection(tuple(free), dep)
    elif r == 0:
        section = GraphSection(tuple(range(n)), {})
    X = AffineVariety(F, C.m, gens, C.k, section, meta=meta)
    return X


# --- Hamming variety ------------------------------------------------------------------------

def hamming_variety(F: Field, q: int, r: int) -> AffineVariety:
    """f_i = sum_j H_ij x_j + sum_{j >= r+2} H_ij x_j^2 with H = hamming_parity(q, r)."""
    H = hamming_parity(F, q, r)
    n = len(H[0])
    e = _exponent(F, q)
    gens = []
    for i in range(r):
        f = MultiPoly.linear(F, H[i])
        for j in range(r + 1, n):
            if H[i][j]:
                f = f + MultiPoly.monomial(F, n, [2 if t == j else 0 for t in range(n)], H[i][j])
        gens.append(f)
    # H_1..H_r is the identity, so x_i = -(f_i - x_i)
    dep = {i: -(gens[i] - MultiPoly.variable(F, n, i)) for i in range(r)}
    section = GraphSection(tuple(range(r, n)), dep)
    word = [0] * n
    word[r - 2] = 1
    word[r - 1] = 1
    word[r] = F.neg(1)
    return AffineVariety(F, e, gens, n - r, section,
                         meta={"construction": "hamming", "q": q, "r": r, "universal_word": word, "parity": H})


def is_hamming_matrix(F: Field, J: Sequence[Sequence[int]], r: int) -> bool:
    """Columns nonzero, pairwise non-proportional, rank r."""
    cols = la.transpose(J)
    if any(not any(c) for c in cols):
        return False
    if la.rank(F, J) != r:
        return False
    for a, b in itertools.combinations(cols, 2):
        if la.rank(F, [a, b]) < 2:
            return False
    return True


# --- cyclic constructions ------------------------------------------------------------------

def cyclic_assembly(F: Field, p: int, n: int, seed: int = 0) -> list[tuple[CyclicSpec, AffineVariety]]:
    """One constant-tangent variety per monic divisor g of t^n - 1."""
    out = []
    for idx, spec in enumerate(divisors_of(F, p, n)):
        C = cyclic_code(F, spec)
        X = constant_tangent_variety(C, seed=seed + idx)
        X.meta["divisor"] = list(spec.g)
        out.append((spec, X))
    return out


def cyclic_plus_noncyclic(F: Field, p: int, n: int, k: int, M: int, seed: int = 0) -> tuple[CodeFamily, list[MultiPoly]]:
    """Interpolate a family holding every cyclic [n, k] code and >= M non-cyclic ones."""
    if not 0 < k < n:
        raise ConstructionError("need 0 < k < n")
    s0 = splitting_degree(p, n)
    need = comb(n, k)
    s = s0
    while p ** s - need < M:
        s += s0
    if F.M % s:
        raise ConstructionError(f"GF({p}^{s}) is not inside the ambient field")
    q = p ** s
    if n * p * (q - 1) + q > MAX_DEGREE:
        raise ConstructionError(f"M = {M} is infeasible: interpolation degree exceeds {MAX_DEGREE}")
    specs = [sp for sp in divisors_of(F, p, n) if sp.degree == n - k]
    codes = [cyclic_code(F, sp).with_field(s) for sp in specs]
    rng = np.random.default_rng(seed)
    elems = F.subfield_elements(s)
    while len(codes) < need + M:
        H = [[elems[int(rng.integers(len(elems)))] for _ in range(n)] for _ in range(n - k)]
        if la.rank(F, H) < n - k:
            continue
        C = LinearCode(F, n, H, s)
        if not is_cyclic(C) and all(C.H != D.H for D in codes):
            codes.append(C)
    points = [tuple([elems[t]] + [0] * (n - 1)) for t in range(len(codes))]
    fam = CodeFamily(F, q, points, [C.H for C in codes])
    return fam, interpolate_code_family(fam)


# --- morphisms ------------------------------------------------------------------------------------

@dataclass
class Morphism:
    components: list[MultiPoly]
    excluded: MultiPoly | None = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.components[0].n

    def __call__(self, a: Sequence[int]) -> list[int]:
        return [f.evaluate(a) for f in self.components]

    def differential(self, a: Sequence[int]) -> list[list[int]]:
        return jacobian_at(self.components, a)

    def defined_at(self, a: Sequence[int]) -> bool:
        return self.excluded is None or self.excluded.evaluate(a) != 0


def isometry_morphism(psis: Sequence[MultiPoly], sigma: Sequence[int] | None = None) -> Morphism:
    """Components x_{sigma(i)} * psi_{sigma(i)}(x^p); excluded set V(prod psi_i(x^p))."""
    n = len(psis)
    if sigma is None:
        sigma = list(range(n))
    if sorted(sigma) != list(range(n)):
        raise ConstructionError("sigma must be a permutation")
    F = psis[0].field
    frob = [ps.frobenius_substitute() for ps in psis]
    comps = [MultiPoly.variable(F, n, sigma[i]) * frob[sigma[i]] for i in range(n)]
    psi_o = MultiPoly.constant(F, n, 1)
    for fp in frob:
        psi_o = psi_o * fp
    return Morphism(comps, psi_o, {"construction": "isometry", "sigma": list(sigma)})


def is_monomial_matrix(F: Field, A: Sequence[Sequence[int]]) -> bool:
    n = len(A)
    rows_ok = all(sum(1 for x in r if x) == 1 for r in A)
    cols_ok = all(sum(1 for r in A if r[j]) == 1 for j in range(n))
    return rows_ok and cols_ok


def interpolate_isometries(F: Field, q: int, points: Sequence[Sequence[int]], matrices: Sequence[Sequence[Sequence[int]]],
                           verify: bool = True) -> Morphism:
    """A morphism whose differential at each a in S is the given matrix."""
    e = _exponent(F, q)
    if len(points) != len(matrices) or not points:
        raise ConstructionError("need one matrix per point")
    for A in matrices:
        if la.det(F, A) == 0:
            raise ConstructionError("singular matrix in the isometry family")
        if not all(F.in_subfield(x, e) for r in A for x in r):
            raise ConstructionError("matrix entries must lie in GF(q)")
    comps = _interpolate_rows(F, q, points, matrices)
    mor = Morphism(comps, None, {"construction": "interpolate-isometries"})
    if verify:
        for a, A in zip(points, matrices):
            if mor.differential(a) != [list(r) for r in A]:
                raise AssertionError("interpolated differential differs from the family")
    return mor


def random_monomial_matrix(F: Field, n: int, e: int, rng: np.random.Generator) -> list[list[int]]:
    elems = [x for x in F.subfield_elements(e) if x]
    perm = rng.permutation(n)
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][int(perm[i])] = elems[int(rng.integers(len(elems)))]
    return A
